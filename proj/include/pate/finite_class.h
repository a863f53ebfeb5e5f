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

#ifndef PATE_FINITE_CLASS_H_
#define PATE_FINITE_CLASS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pate/data.h"
#include "pate/rng.h"

namespace pate {

// A hypothesis class with finitely many members, each evaluable at any
// example. Exact ERM and exact version spaces are computed by enumeration.
class FiniteClass {
 public:
  virtual ~FiniteClass() = default;

  virtual std::size_t size() const = 0;
  virtual int Predict(std::size_t member, const Example& x) const = 0;

  // Class descriptors consumed by the active learner's elimination bound.
  virtual double vc_dimension() const = 0;
  virtual double disagreement_coefficient() const = 0;
};

// Members given as label tables over a finite domain {0, ..., n-1}. Points
// are encoded as ScalarExample(id).
class FiniteHypothesisClass final : public FiniteClass {
 public:
  FiniteHypothesisClass(std::vector<std::vector<int>> tables,
                        double vc_dimension = 1.0, double theta = 1.0);

  std::size_t size() const override { return tables_.size(); }
  std::size_t domain_size() const { return tables_.front().size(); }
  int Predict(std::size_t member, const Example& x) const override;
  int PredictId(std::size_t member, std::size_t point) const {
    return tables_[member][point];
  }
  const std::vector<int>& table(std::size_t member) const {
    return tables_[member];
  }
  double vc_dimension() const override { return vc_dimension_; }
  double disagreement_coefficient() const override { return theta_; }

 private:
  std::vector<std::vector<int>> tables_;
  double vc_dimension_;
  double theta_;
};

// 1-D thresholds h_k(x) = 1(x > t_k) on an evenly spaced grid of
// `grid_size + 1` thresholds covering [lo, hi]. VC dimension 1, disagreement
// coefficient 2 under any continuous marginal.
class ThresholdGrid final : public FiniteClass {
 public:
  ThresholdGrid(std::size_t grid_size, double lo = 0.0, double hi = 1.0);

  std::size_t size() const override { return thresholds_.size(); }
  int Predict(std::size_t member, const Example& x) const override;
  double threshold(std::size_t member) const { return thresholds_[member]; }
  double vc_dimension() const override { return 1.0; }
  double disagreement_coefficient() const override { return 2.0; }

 private:
  std::vector<double> thresholds_;
};

enum class TieBreak {
  kLowestIndex,
  // Uniform over the argmin set, drawn from the caller's generator.
  kRandomOrder,
};

// Mistakes of every member on labeled `sample`.
std::vector<std::int64_t> MistakeCounts(const FiniteClass& h_class,
                                        const Dataset& sample);

// Exact 0-1 empirical risk minimizer by enumeration.
std::size_t ExhaustiveErm(const FiniteClass& h_class, const Dataset& sample,
                          TieBreak tie_break, Rng& rng);

// Same, from precomputed mistake counts.
std::size_t ArgminWithTieBreak(const std::vector<std::int64_t>& mistakes,
                               TieBreak tie_break, Rng& rng);

// Exact 0-1 ERM over the continuous class {1(x > t)} on 1-D data with
// values in [lo, hi]. Returns the midpoint of the first minimizing gap.
double FitThreshold(const Dataset& data, double lo = 0.0, double hi = 1.0);

}  // namespace pate

#endif  // PATE_FINITE_CLASS_H_
