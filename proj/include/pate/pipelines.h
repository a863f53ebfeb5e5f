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

#ifndef PATE_PIPELINES_H_
#define PATE_PIPELINES_H_

#include <cstdint>

#include "pate/active.h"
#include "pate/aggregation.h"
#include "pate/data.h"
#include "pate/dp_core.h"
#include "pate/learners.h"
#include "pate/rng.h"

namespace pate {

enum class Mechanism { kGaussian, kSvt, kNone };

// What a withheld (Bot) answer becomes in the student's training set.
enum class BotPolicy { kZero, kCoinFlip };

struct PsqConfig {
  std::int64_t k = 1;
  Mechanism mechanism = Mechanism::kGaussian;
  // Unstable-query cutoff T; SVT only.
  std::int64_t cutoff = 0;
  PrivacyBudget budget{1.0, 1e-5};
  BotPolicy bot_policy = BotPolicy::kZero;
  TrainerConfig trainer;
};

struct AsqConfig {
  std::int64_t k = 1;
  std::int64_t query_budget = 1;
  PrivacyBudget budget{1.0, 1e-5};
  double gamma = 0.05;
  // false labels queries with the noiseless majority.
  bool private_labels = true;
  // Disagreement slack; negative selects 1/|Q|.
  double slack = -1.0;
  double c_prime = 1.0;
  TrainerConfig trainer;
};

struct PipelineReport {
  std::int64_t queries = 0;
  std::int64_t bots = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double eps_ex_post = 0.0;
  double accuracy = 0.0;
  // SVT only: the session hit its cutoff before the pool ran out.
  bool halted_early = false;
};

struct PipelineResult {
  LinearHypothesis student;
  PipelineReport report;
};

// Passive student: every pool point is sent to the labeling session in
// order, then one logistic ERM is fit to the pseudo-labels.
PipelineResult PatePsq(const Dataset& teacher_data, const Dataset& student_pool,
                       const Dataset& test_data, const PsqConfig& config,
                       Rng& rng);

// Active student: the pool is streamed through LinearActiveLearner with a
// Gaussian labeling session calibrated for `query_budget` queries.
PipelineResult PateAsq(const Dataset& teacher_data, const Dataset& student_pool,
                       const Dataset& test_data, const AsqConfig& config,
                       Rng& rng);

// ceil(6 sqrt(log 2n) (sqrt(m log(1/delta)) + sqrt(m log(1/delta) + eps m)) / eps).
std::int64_t ComputeKForGaussian(std::int64_t m, const PrivacyBudget& budget,
                                 std::int64_t n);

struct SvtParameters {
  std::int64_t cutoff;
  std::int64_t k;
};

// T = ceil(3 (err m + sqrt(m log(m / beta) / 2))) and
// K = ceil(136 log(4 m T / min(delta, beta / 2)) sqrt(T log(2 / delta)) / eps).
SvtParameters ComputeSvtParams(std::int64_t m, double expected_teacher_error,
                               double beta, const PrivacyBudget& budget);

// K for a given cutoff T, with the same constant.
std::int64_t SvtTeacherCount(std::int64_t m, std::int64_t cutoff, double beta,
                             const PrivacyBudget& budget);

// (T, K) for a problem with measured (nu, xi) high-margin condition.
SvtParameters ComputeHighMarginSvtParams(std::int64_t m, double nu, double xi,
                                         double gamma,
                                         const PrivacyBudget& budget);

// Mean holdout error of one teacher trained on |teacher_data| / k points.
// The last `holdout_fraction` of a shuffled copy is held out.
double EstimateTeacherError(const Dataset& teacher_data, std::int64_t k,
                            const TrainerConfig& trainer, Rng& rng,
                            double holdout_fraction = 0.1);

}  // namespace pate

#endif  // PATE_PIPELINES_H_
