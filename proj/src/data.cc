//
// Copyright 2026 The pate-learn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "pate/data.h"

#include <algorithm>

namespace pate {
namespace {

std::size_t RequiredDimension(const Example& x) {
  return x.features.empty() ? 0 : x.features.back().index + std::size_t{1};
}

}  // namespace

Example ScalarExample(double value, Label label) {
  return Example{{Feature{0, value}}, label};
}

double ScalarValue(const Example& x) {
  if (x.features.empty() || x.features.front().index != 0) return 0.0;
  return x.features.front().value;
}

Dataset::Dataset(std::vector<Example> examples, std::size_t dimension)
    : examples_(std::move(examples)), dimension_(dimension) {
  for (const Example& x : examples_) {
    dimension_ = std::max(dimension_, RequiredDimension(x));
  }
}

void Dataset::Add(Example x) {
  dimension_ = std::max(dimension_, RequiredDimension(x));
  examples_.push_back(std::move(x));
}

bool Dataset::AllLabeled() const {
  return std::all_of(examples_.begin(), examples_.end(),
                     [](const Example& x) { return x.label.has_value(); });
}

Dataset Dataset::Select(std::span<const std::size_t> indices) const {
  Dataset out(dimension_);
  out.examples_.reserve(indices.size());
  for (std::size_t i : indices) out.examples_.push_back(examples_.at(i));
  return out;
}

Dataset Dataset::WithoutLabels() const {
  Dataset out = *this;
  for (Example& x : out.examples_) x.label.reset();
  return out;
}

}  // namespace pate
