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

#ifndef PATE_ACTIVE_H_
#define PATE_ACTIVE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "pate/aggregation.h"
#include "pate/data.h"
#include "pate/finite_class.h"
#include "pate/learners.h"

namespace pate {

// gamma / (log2(2j))^2.
double GammaSchedule(double gamma, std::int64_t j);

bool IsPowerOfTwo(std::int64_t j);

// U(j, gamma_j). `noise_rate` is Err(h*), zero in the realizable case; the
// disagreement coefficient is treated as a constant of the class.
struct EliminationBound {
  double c_prime = 1.0;
  double vc_dimension = 1.0;
  double theta = 1.0;
  double noise_rate = 0.0;

  double operator()(std::int64_t j, double gamma_j) const;
};

// Returns a label for stream point x, or a Bot when the labeling service
// declines to answer.
using LabelOracle = std::function<PseudoLabel(const Example&)>;

struct ActiveConfig {
  // Query budget ell. The stream stops once this many labels are requested.
  std::int64_t query_budget = std::numeric_limits<std::int64_t>::max();
  double gamma = 0.05;
  double c_prime = 1.0;
  double noise_rate = 0.0;
};

struct ActiveRun {
  std::int64_t queries = 0;
  // Stream points consumed (the position j at which the run stopped).
  std::int64_t consumed = 0;
  Dataset labeled;
};

// Exact disagreement-based active learning over a finite class.
class VersionSpaceLearner {
 public:
  VersionSpaceLearner(const FiniteClass& h_class, const ActiveConfig& config);

  // True iff two surviving members disagree at x.
  bool InDisagreement(const Example& x) const;
  // Elimination step for stream position j; a no-op unless j is a power
  // of two.
  void Update(std::int64_t j);
  // Adds a labeled point to Q without touching the version space.
  void AddLabeled(const Example& x);
  // Keeps members whose mistakes on Q exceed the best survivor's by at most
  // `allowed_excess` and recomputes the current output.
  void Eliminate(double allowed_excess);

  // Streams `pool` through the learner.
  ActiveRun Run(const Dataset& pool, const LabelOracle& oracle);

  std::size_t alive_count() const { return alive_count_; }
  bool alive(std::size_t member) const { return alive_[member] != 0; }
  // Index of the current output: the middle surviving member.
  std::size_t current() const { return current_; }
  const Dataset& labeled() const { return labeled_; }

 private:
  const FiniteClass& h_class_;
  ActiveConfig config_;
  EliminationBound bound_;
  std::vector<std::uint8_t> alive_;
  std::size_t alive_count_;
  std::size_t current_;
  Dataset labeled_;
  // Mistakes of every member on labeled_, maintained incrementally.
  std::vector<std::int64_t> mistakes_;
};

// Active learning over linear classifiers. No explicit version space: x is
// in the disagreement region iff a fit forced to label x as 0 and a fit
// forced to label it 1 are both within `slack` of the best empirical error
// on the labeled set.
class LinearActiveLearner {
 public:
  // slack < 0 selects the default 1/|Q|; infinity always queries.
  LinearActiveLearner(const TrainerConfig& trainer, const ActiveConfig& config,
                      double slack = -1.0);

  bool InDisagreement(const Example& x) const;
  // Retrains the current hypothesis on the labeled set when j is a power
  // of two.
  void Update(std::int64_t j);

  // Streams `pool`; ends with one refresh so the output uses every label.
  ActiveRun Run(const Dataset& pool, const LabelOracle& oracle);

  const LinearHypothesis& current() const { return current_; }
  const Dataset& labeled() const { return labeled_; }

 private:
  void Refresh();
  double Slack() const;

  TrainerConfig trainer_;
  ActiveConfig config_;
  double slack_;
  Dataset labeled_;
  LinearHypothesis current_;
};

}  // namespace pate

#endif  // PATE_ACTIVE_H_
