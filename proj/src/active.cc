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

#include "pate/active.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pate/errors.h"

namespace pate {

double GammaSchedule(double gamma, std::int64_t j) {
  if (j < 1) throw ParameterError("stream position starts at 1");
  const double l = std::log2(2.0 * static_cast<double>(j));
  return gamma / (l * l);
}

bool IsPowerOfTwo(std::int64_t j) {
  return j > 0 && std::has_single_bit(static_cast<std::uint64_t>(j));
}

double EliminationBound::operator()(std::int64_t j, double gamma_j) const {
  const double jd = static_cast<double>(j);
  const double complexity =
      vc_dimension * std::log(theta) + std::log(1.0 / gamma_j);
  return c_prime * complexity / jd +
         c_prime * std::sqrt(noise_rate * complexity / jd);
}

VersionSpaceLearner::VersionSpaceLearner(const FiniteClass& h_class,
                                         const ActiveConfig& config)
    : h_class_(h_class),
      config_(config),
      bound_{config.c_prime, h_class.vc_dimension(),
             h_class.disagreement_coefficient(), config.noise_rate},
      alive_(h_class.size(), 1),
      alive_count_(h_class.size()),
      current_(0),
      mistakes_(h_class.size(), 0) {
  if (h_class.size() == 0) throw ParameterError("empty hypothesis class");
  if (!(config.gamma > 0.0 && config.gamma < 1.0)) {
    throw ParameterError("gamma must lie in (0, 1)");
  }
  if (config.query_budget < 1) throw ParameterError("query budget must be >= 1");
  current_ = h_class.size() / 2;
}

bool VersionSpaceLearner::InDisagreement(const Example& x) const {
  int seen = -1;
  for (std::size_t h = 0; h < alive_.size(); ++h) {
    if (!alive_[h]) continue;
    const int y = h_class_.Predict(h, x);
    if (seen < 0) {
      seen = y;
    } else if (y != seen) {
      return true;
    }
  }
  return false;
}

void VersionSpaceLearner::AddLabeled(const Example& x) {
  if (!x.label) throw ParameterError("labeled point expected");
  for (std::size_t h = 0; h < alive_.size(); ++h) {
    mistakes_[h] += h_class_.Predict(h, x) != *x.label;
  }
  labeled_.Add(x);
}

void VersionSpaceLearner::Eliminate(double allowed_excess) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t h = 0; h < alive_.size(); ++h) {
    if (alive_[h]) best = std::min(best, mistakes_[h]);
  }
  std::vector<std::size_t> survivors;
  for (std::size_t h = 0; h < alive_.size(); ++h) {
    if (!alive_[h]) continue;
    if (static_cast<double>(mistakes_[h] - best) > allowed_excess) {
      alive_[h] = 0;
    } else {
      survivors.push_back(h);
    }
  }
  alive_count_ = survivors.size();
  current_ = survivors[survivors.size() / 2];
}

void VersionSpaceLearner::Update(std::int64_t j) {
  if (!IsPowerOfTwo(j)) return;
  const double u = bound_(j, GammaSchedule(config_.gamma, j));
  Eliminate(u * static_cast<double>(j));
}

ActiveRun VersionSpaceLearner::Run(const Dataset& pool,
                                   const LabelOracle& oracle) {
  ActiveRun run;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto j = static_cast<std::int64_t>(i + 1);
    run.consumed = j;
    if (InDisagreement(pool[i])) {
      const PseudoLabel y = oracle(pool[i]);
      ++run.queries;
      if (!y.is_bot()) {
        Example labeled = pool[i];
        labeled.label = y.label();
        AddLabeled(labeled);
      }
    }
    Update(j);
    if (run.queries >= config_.query_budget) break;
  }
  run.labeled = labeled_;
  return run;
}

LinearActiveLearner::LinearActiveLearner(const TrainerConfig& trainer,
                                         const ActiveConfig& config,
                                         double slack)
    : trainer_(trainer), config_(config), slack_(slack) {
  if (config.query_budget < 1) throw ParameterError("query budget must be >= 1");
}

double LinearActiveLearner::Slack() const {
  if (slack_ >= 0.0) return slack_;
  return 1.0 / static_cast<double>(labeled_.size());
}

bool LinearActiveLearner::InDisagreement(const Example& x) const {
  if (labeled_.empty() || std::isinf(slack_)) return true;
  const std::size_t n = labeled_.size();
  Dataset forced = labeled_;
  forced.Add(x);
  std::vector<double> weights(n + 1, 1.0);
  weights[n] = static_cast<double>(n);

  double forced_error[2];
  for (int y = 0; y < 2; ++y) {
    forced[n].label = y;
    const LinearHypothesis h =
        TrainErmTraced(forced, weights, trainer_).hypothesis;
    forced_error[y] = Predict(h, x) == y
                          ? EmpiricalError(h, labeled_)
                          : std::numeric_limits<double>::infinity();
  }
  const double best = std::min(
      {EmpiricalError(current_, labeled_), forced_error[0], forced_error[1]});
  const double limit = best + Slack() + 1e-12;
  return forced_error[0] <= limit && forced_error[1] <= limit;
}

void LinearActiveLearner::Refresh() {
  if (!labeled_.empty()) current_ = TrainErm(labeled_, trainer_);
}

void LinearActiveLearner::Update(std::int64_t j) {
  if (IsPowerOfTwo(j)) Refresh();
}

ActiveRun LinearActiveLearner::Run(const Dataset& pool,
                                   const LabelOracle& oracle) {
  ActiveRun run;
  labeled_ = Dataset(pool.dimension());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto j = static_cast<std::int64_t>(i + 1);
    run.consumed = j;
    if (InDisagreement(pool[i])) {
      const PseudoLabel y = oracle(pool[i]);
      ++run.queries;
      if (!y.is_bot()) {
        Example labeled = pool[i];
        labeled.label = y.label();
        labeled_.Add(std::move(labeled));
      }
    }
    Update(j);
    if (run.queries >= config_.query_budget) break;
  }
  Refresh();
  run.labeled = labeled_;
  return run;
}

}  // namespace pate
