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

#include "pate/finite_class.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "pate/errors.h"

namespace pate {

FiniteHypothesisClass::FiniteHypothesisClass(
    std::vector<std::vector<int>> tables, double vc_dimension, double theta)
    : tables_(std::move(tables)), vc_dimension_(vc_dimension), theta_(theta) {
  if (tables_.empty()) throw ParameterError("hypothesis class is empty");
  const std::size_t n = tables_.front().size();
  if (n == 0) throw ParameterError("hypothesis class has an empty domain");
  for (const auto& t : tables_) {
    if (t.size() != n) throw ParameterError("label tables differ in length");
    for (int v : t) {
      if (v != 0 && v != 1) throw ParameterError("labels must be 0 or 1");
    }
  }
}

int FiniteHypothesisClass::Predict(std::size_t member,
                                   const Example& x) const {
  const double id = ScalarValue(x);
  if (id < 0.0 || id >= static_cast<double>(domain_size())) {
    throw ParameterError("point id outside the finite domain");
  }
  return tables_[member][static_cast<std::size_t>(id)];
}

ThresholdGrid::ThresholdGrid(std::size_t grid_size, double lo, double hi) {
  if (grid_size == 0 || !(hi > lo)) {
    throw ParameterError("ThresholdGrid needs grid_size >= 1 and hi > lo");
  }
  thresholds_.resize(grid_size + 1);
  for (std::size_t k = 0; k <= grid_size; ++k) {
    thresholds_[k] = lo + (hi - lo) * static_cast<double>(k) /
                              static_cast<double>(grid_size);
  }
}

int ThresholdGrid::Predict(std::size_t member, const Example& x) const {
  return ScalarValue(x) > thresholds_[member] ? 1 : 0;
}

std::vector<std::int64_t> MistakeCounts(const FiniteClass& h_class,
                                        const Dataset& sample) {
  if (!sample.AllLabeled()) {
    throw ParameterError("MistakeCounts: sample has unlabeled examples");
  }
  std::vector<std::int64_t> mistakes(h_class.size(), 0);
  for (std::size_t k = 0; k < h_class.size(); ++k) {
    for (const Example& x : sample) {
      mistakes[k] += h_class.Predict(k, x) != *x.label;
    }
  }
  return mistakes;
}

std::size_t ArgminWithTieBreak(const std::vector<std::int64_t>& mistakes,
                               TieBreak tie_break, Rng& rng) {
  if (mistakes.empty()) throw ParameterError("ERM over an empty class");
  const std::int64_t best = *std::min_element(mistakes.begin(), mistakes.end());
  std::vector<std::size_t> argmin;
  for (std::size_t k = 0; k < mistakes.size(); ++k) {
    if (mistakes[k] == best) argmin.push_back(k);
  }
  if (tie_break == TieBreak::kLowestIndex || argmin.size() == 1) {
    return argmin.front();
  }
  return argmin[rng.UniformInt(argmin.size())];
}

std::size_t ExhaustiveErm(const FiniteClass& h_class, const Dataset& sample,
                          TieBreak tie_break, Rng& rng) {
  return ArgminWithTieBreak(MistakeCounts(h_class, sample), tie_break, rng);
}

double FitThreshold(const Dataset& data, double lo, double hi) {
  if (data.empty()) throw ParameterError("FitThreshold: empty data");
  if (!data.AllLabeled()) throw ParameterError("FitThreshold: unlabeled data");
  std::vector<std::pair<double, int>> points;
  points.reserve(data.size());
  for (const Example& x : data) points.emplace_back(ScalarValue(x), *x.label);
  std::sort(points.begin(), points.end());

  // Threshold in gap g (between points g-1 and g) labels points [0, g) as 0
  // and [g, n) as 1. Start with every point labeled 1.
  std::int64_t errors = 0;
  for (const auto& p : points) errors += p.second == 0;
  std::int64_t best_errors = errors;
  std::size_t best_gap = 0;
  for (std::size_t g = 1; g <= points.size(); ++g) {
    errors += points[g - 1].second == 1 ? 1 : -1;
    // Thresholds cannot separate equal values.
    if (g < points.size() && points[g].first == points[g - 1].first) continue;
    if (errors < best_errors) {
      best_errors = errors;
      best_gap = g;
    }
  }
  const double left = best_gap == 0 ? lo : points[best_gap - 1].first;
  const double right = best_gap == points.size() ? hi : points[best_gap].first;
  return 0.5 * (left + right);
}

}  // namespace pate
