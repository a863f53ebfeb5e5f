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

#ifndef PATE_DATA_H_
#define PATE_DATA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pate {

// One (index, value) entry of a sparse feature vector. Indices are 0-based.
struct Feature {
  std::uint32_t index = 0;
  double value = 0.0;

  friend bool operator==(const Feature&, const Feature&) = default;
};

// Binary label. Unlabeled examples carry std::nullopt.
using Label = std::optional<int>;

struct Example {
  // Sorted by strictly increasing index.
  std::vector<Feature> features;
  Label label;

  friend bool operator==(const Example&, const Example&) = default;
};

// Example with a single feature 0 = `value`; used for 1-D problems and for
// finite domains, where `value` is the point id.
Example ScalarExample(double value, Label label = std::nullopt);

// Feature 0 of `x`, or 0 when absent.
double ScalarValue(const Example& x);

// A bag of examples with a known feature dimension (max index + 1).
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::size_t dimension) : dimension_(dimension) {}
  Dataset(std::vector<Example> examples, std::size_t dimension);

  std::size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }
  std::size_t dimension() const { return dimension_; }

  const Example& operator[](std::size_t i) const { return examples_[i]; }
  Example& operator[](std::size_t i) { return examples_[i]; }
  std::span<const Example> examples() const { return examples_; }
  auto begin() const { return examples_.begin(); }
  auto end() const { return examples_.end(); }

  // Grows the dimension if `x` uses a larger index.
  void Add(Example x);

  bool AllLabeled() const;

  // Subset by position, preserving order of `indices`.
  Dataset Select(std::span<const std::size_t> indices) const;

  // Copy with every label removed.
  Dataset WithoutLabels() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Example> examples_;
  std::size_t dimension_ = 0;
};

}  // namespace pate

#endif  // PATE_DATA_H_
