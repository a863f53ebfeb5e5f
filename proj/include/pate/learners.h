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

#ifndef PATE_LEARNERS_H_
#define PATE_LEARNERS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pate/aggregation.h"
#include "pate/data.h"
#include "pate/rng.h"

namespace pate {

// h(x) = 1(w . x + b >= 0).
struct LinearHypothesis {
  std::vector<double> weights;
  double bias = 0.0;

  // Score w . x + b. Features beyond the weight vector contribute nothing.
  double Score(const Example& x) const;

  friend bool operator==(const LinearHypothesis&,
                         const LinearHypothesis&) = default;
};

int Predict(const LinearHypothesis& h, const Example& x);

// Full-batch gradient descent on the (weighted) mean logistic loss.
struct TrainerConfig {
  int max_iterations = 500;
  // Ridge penalty (l2 / 2) ||w||^2 on the weights; the bias is unpenalized.
  double l2 = 0.0;
  // Stop early once the gradient's squared norm drops below this.
  double gradient_tolerance = 1e-12;
};

struct TrainingTrace {
  LinearHypothesis hypothesis;
  // Objective before the first step and after every step taken.
  std::vector<double> loss;
};

// Logistic-loss surrogate for 0-1 ERM over linear classifiers. Starts at
// zero and steps with 1/L, L the data-dependent smoothness bound, so the
// objective never increases. Deterministic.
LinearHypothesis TrainErm(const Dataset& data, const TrainerConfig& config);

// Same, with per-example weights (constrained fits) and the loss history.
TrainingTrace TrainErmTraced(const Dataset& data, std::span<const double> weights,
                             const TrainerConfig& config);

// Mean 0-1 loss on labeled `data`.
double EmpiricalError(const LinearHypothesis& h, const Dataset& data);

// Fraction of `data` where the two hypotheses disagree. Labels unused.
double EmpiricalDisagreement(const LinearHypothesis& h1,
                             const LinearHypothesis& h2, const Dataset& data);

// Random balanced partition into k parts whose sizes differ by at most 1.
std::vector<Dataset> SplitDisjoint(const Dataset& data, std::size_t k,
                                   Rng& rng);

// Position-level variant: part p receives the indices listed in result[p].
std::vector<std::vector<std::size_t>> SplitIndices(std::size_t n,
                                                   std::size_t k, Rng& rng);

class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(std::vector<LinearHypothesis> members);

  std::size_t size() const { return members_.size(); }
  const std::vector<LinearHypothesis>& members() const { return members_; }

  VoteCount Votes(const Example& x) const;
  // Majority with ties going to 1.
  int MajorityLabel(const Example& x) const { return Votes(x).MajorityLabel(); }

 private:
  std::vector<LinearHypothesis> members_;
};

// Split-and-vote student: k logistic ERMs on disjoint parts of the
// pseudo-labeled data, combined by majority.
Ensemble TrainVotingStudent(const Dataset& pseudo_labeled, std::size_t k,
                            const TrainerConfig& config, Rng& rng);

// Mean 0-1 loss of an ensemble's majority vote.
double EnsembleError(const Ensemble& ensemble, const Dataset& data);

}  // namespace pate

#endif  // PATE_LEARNERS_H_
