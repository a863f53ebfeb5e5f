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

#include "pate/pipelines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "pate/errors.h"
#include "pate/kernels.h"

namespace pate {
namespace {

void CheckPools(const Dataset& teacher_data, const Dataset& student_pool,
                const Dataset& test_data, std::int64_t k) {
  if (teacher_data.empty() || student_pool.empty() || test_data.empty()) {
    throw ParameterError("teacher, student and test pools must be nonempty");
  }
  if (!teacher_data.AllLabeled() || !test_data.AllLabeled()) {
    throw ParameterError("teacher and test data must be labeled");
  }
  if (k < 1 || static_cast<std::size_t>(k) > teacher_data.size()) {
    throw ParameterError("need 1 <= K <= |teacher data|");
  }
}

Ensemble TrainEnsemble(const Dataset& teacher_data, std::int64_t k,
                       const TrainerConfig& trainer, Rng rng) {
  const auto parts =
      SplitIndices(teacher_data.size(), static_cast<std::size_t>(k), rng);
  return Ensemble(kernels::parallel::TrainTeachers(teacher_data, parts, trainer));
}

double Accuracy(const LinearHypothesis& h, const Dataset& test) {
  return 1.0 - EmpiricalError(h, test);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PipelineResult PatePsq(const Dataset& teacher_data, const Dataset& student_pool,
                       const Dataset& test_data, const PsqConfig& config,
                       Rng& rng) {
  CheckPools(teacher_data, student_pool, test_data, config.k);
  if (config.mechanism == Mechanism::kSvt && config.cutoff < 1) {
    throw ParameterError("SVT needs a cutoff T >= 1");
  }
  const Ensemble ensemble =
      TrainEnsemble(teacher_data, config.k, config.trainer, rng.Split(0));
  const std::vector<VoteCount> votes =
      kernels::parallel::CountVotes(ensemble, student_pool);
  const auto m = static_cast<std::int64_t>(student_pool.size());

  std::unique_ptr<LabelingSession> session;
  SvtSession* svt = nullptr;
  switch (config.mechanism) {
    case Mechanism::kGaussian:
      session = std::make_unique<GaussianSession>(
          GaussianSession::Calibrated(m, config.budget, rng.Split(1)));
      break;
    case Mechanism::kSvt: {
      auto s = std::make_unique<SvtSession>(SvtSession::Calibrated(
          m, config.cutoff, config.budget, rng.Split(1)));
      svt = s.get();
      session = std::move(s);
      break;
    }
    case Mechanism::kNone:
      session = std::make_unique<NoiselessSession>();
      break;
  }

  Rng coin = rng.Split(2);
  PipelineReport report;
  Dataset pseudo(student_pool.dimension());
  for (std::size_t i = 0; i < student_pool.size(); ++i) {
    PseudoLabel y = PseudoLabel::Bot();
    if (svt != nullptr && svt->halted()) {
      report.halted_early = true;
    } else {
      y = session->Answer(votes[i]);
    }
    Example x = student_pool[i];
    if (y.is_bot()) {
      ++report.bots;
      x.label = config.bot_policy == BotPolicy::kZero
                    ? 0
                    : static_cast<int>(coin.Bernoulli(0.5));
    } else {
      x.label = y.label();
    }
    pseudo.Add(std::move(x));
  }

  PipelineResult result;
  result.student = TrainErm(pseudo, config.trainer);
  report.queries = session->answered();
  const PrivacyReport privacy = session->Report();
  if (config.mechanism == Mechanism::kNone) {
    report.epsilon = kInf;
    report.delta = 0.0;
  } else {
    report.epsilon = config.budget.epsilon();
    report.delta = config.budget.delta();
  }
  report.eps_ex_post = privacy.epsilon;
  report.accuracy = Accuracy(result.student, test_data);
  result.report = report;
  return result;
}

PipelineResult PateAsq(const Dataset& teacher_data, const Dataset& student_pool,
                       const Dataset& test_data, const AsqConfig& config,
                       Rng& rng) {
  CheckPools(teacher_data, student_pool, test_data, config.k);
  if (config.query_budget < 1) throw ParameterError("query budget must be >= 1");
  const Ensemble ensemble =
      TrainEnsemble(teacher_data, config.k, config.trainer, rng.Split(0));

  std::unique_ptr<LabelingSession> session;
  if (config.private_labels) {
    session = std::make_unique<GaussianSession>(GaussianSession::Calibrated(
        config.query_budget, config.budget, rng.Split(1)));
  } else {
    session = std::make_unique<NoiselessSession>();
  }

  ActiveConfig active;
  active.query_budget = config.query_budget;
  active.gamma = config.gamma;
  active.c_prime = config.c_prime;
  LinearActiveLearner learner(config.trainer, active, config.slack);
  const ActiveRun run = learner.Run(student_pool, [&](const Example& x) {
    return session->Answer(ensemble.Votes(x));
  });

  PipelineResult result;
  result.student = learner.current();
  PipelineReport& report = result.report;
  report.queries = run.queries;
  report.bots = run.queries - static_cast<std::int64_t>(run.labeled.size());
  if (config.private_labels) {
    report.epsilon = config.budget.epsilon();
    report.delta = config.budget.delta();
  } else {
    report.epsilon = kInf;
    report.delta = 0.0;
  }
  report.eps_ex_post = session->Report().epsilon;
  report.accuracy = Accuracy(result.student, test_data);
  return result;
}

std::int64_t ComputeKForGaussian(std::int64_t m, const PrivacyBudget& budget,
                                 std::int64_t n) {
  if (m < 1 || n < 1) throw ParameterError("m and n must be positive");
  const double eps = budget.epsilon();
  const double md = static_cast<double>(m);
  const double log_inv_delta = std::log(1.0 / budget.delta());
  const double k = 6.0 * std::sqrt(std::log(2.0 * static_cast<double>(n))) *
                   (std::sqrt(md * log_inv_delta) +
                    std::sqrt(md * log_inv_delta + eps * md)) /
                   eps;
  return static_cast<std::int64_t>(std::ceil(k));
}

SvtParameters ComputeSvtParams(std::int64_t m, double expected_teacher_error,
                               double beta, const PrivacyBudget& budget) {
  if (m < 1) throw ParameterError("m must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
  if (!(expected_teacher_error >= 0.0 && expected_teacher_error <= 1.0)) {
    throw ParameterError("teacher error must lie in [0, 1]");
  }
  const double md = static_cast<double>(m);
  const double t = 3.0 * (expected_teacher_error * md +
                          std::sqrt(md * std::log(md / beta) / 2.0));
  const auto cutoff = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t)));
  return {cutoff, SvtTeacherCount(m, cutoff, beta, budget)};
}

std::int64_t SvtTeacherCount(std::int64_t m, std::int64_t cutoff, double beta,
                             const PrivacyBudget& budget) {
  if (m < 1 || cutoff < 1) throw ParameterError("m and T must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
  const double md = static_cast<double>(m);
  const double td = static_cast<double>(cutoff);
  const double delta = budget.delta();
  const double k = 136.0 * std::log(4.0 * md * td / std::min(delta, beta / 2.0)) *
                   std::sqrt(td * std::log(2.0 / delta)) / budget.epsilon();
  return static_cast<std::int64_t>(std::ceil(k));
}

SvtParameters ComputeHighMarginSvtParams(std::int64_t m, double nu, double xi,
                                         double gamma,
                                         const PrivacyBudget& budget) {
  if (m < 1) throw ParameterError("m must be positive");
  if (!(nu >= 0.0 && nu <= 1.0)) throw ParameterError("nu must lie in [0, 1]");
  if (!(xi > 0.0 && xi <= 0.5)) throw ParameterError("xi must lie in (0, 1/2]");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError("gamma must lie in (0, 1)");
  const double md = static_cast<double>(m);
  const double l3 = std::log(3.0 / gamma);
  const double t = nu * md + std::sqrt(2.0 * nu * md * l3) + 2.0 / 3.0 * l3;
  const auto cutoff = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t)));
  const double lambda = CalibrateSvtLambda(cutoff, budget);
  const double l3m = std::log(3.0 * md / gamma);
  const double k = std::max(
      2.0 * l3m / (xi * xi),
      3.0 * lambda * (std::log(4.0 * md / budget.delta()) + l3m) / xi);
  return {cutoff, static_cast<std::int64_t>(std::ceil(k))};
}

double EstimateTeacherError(const Dataset& teacher_data, std::int64_t k,
                            const TrainerConfig& trainer, Rng& rng,
                            double holdout_fraction) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw ParameterError("holdout fraction must lie in (0, 1)");
  }
  const std::size_t n = teacher_data.size();
  const auto holdout = static_cast<std::size_t>(
      std::ceil(holdout_fraction * static_cast<double>(n)));
  if (k < 1 || holdout >= n) throw ParameterError("teacher data too small");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Shuffle(std::span<std::size_t>(order), rng);

  const std::size_t train = n - holdout;
  const std::size_t per_teacher =
      std::max<std::size_t>(1, n / static_cast<std::size_t>(k));
  const std::vector<std::size_t> held(order.begin() + static_cast<std::ptrdiff_t>(train),
                                      order.end());
  const Dataset test = teacher_data.Select(held);
  // Up to five disjoint teachers from the training portion.
  const std::size_t teachers = std::clamp<std::size_t>(train / per_teacher, 1, 5);
  double total = 0.0;
  for (std::size_t t = 0; t < teachers; ++t) {
    const std::size_t begin = t * per_teacher;
    const std::size_t end = std::min(train, begin + per_teacher);
    const std::vector<std::size_t> part(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                        order.begin() + static_cast<std::ptrdiff_t>(end));
    total += EmpiricalError(TrainErm(teacher_data.Select(part), trainer), test);
  }
  return total / static_cast<double>(teachers);
}

}  // namespace pate
