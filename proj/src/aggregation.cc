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

#include "pate/aggregation.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "pate/errors.h"

namespace pate {

VoteCount::VoteCount(std::int64_t ones, std::int64_t total)
    : ones_(ones), total_(total) {
  if (total < 1 || ones < 0 || ones > total) {
    throw ParameterError("invalid vote count " + std::to_string(ones) + "/" +
                         std::to_string(total));
  }
}

std::int64_t Margin(const VoteCount& votes) {
  const std::int64_t diff = 2 * votes.ones() - votes.total();
  return diff < 0 ? -diff : diff;
}

std::int64_t DistanceToInstability(const VoteCount& votes) {
  const std::int64_t margin = Margin(votes);
  const std::int64_t half_up = (margin + 1) / 2;
  return half_up > 1 ? half_up - 1 : 0;
}

PseudoLabel PseudoLabel::Released(int label) {
  if (label != 0 && label != 1) {
    throw ParameterError("released label must be 0 or 1");
  }
  PseudoLabel out;
  out.label_ = label;
  return out;
}

GaussianSession::GaussianSession(double sigma, std::int64_t budget_ell,
                                 double delta, Rng rng)
    : sigma_(sigma), budget_ell_(budget_ell), delta_(delta), rng_(rng) {
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  if (budget_ell < 1) throw ParameterError("query budget must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("delta must lie in (0, 1)");
  }
}

GaussianSession GaussianSession::Calibrated(std::int64_t budget_ell,
                                            const PrivacyBudget& budget,
                                            Rng rng) {
  return GaussianSession(CalibrateGaussianSigma(budget_ell, budget),
                         budget_ell, budget.delta(), rng);
}

PseudoLabel GaussianSession::Answer(const VoteCount& votes) {
  if (exhausted()) {
    throw SessionError("Gaussian session budget of " +
                       std::to_string(budget_ell_) + " queries exhausted");
  }
  ++answered_;
  const double noisy =
      static_cast<double>(votes.ones()) + SampleGaussian(sigma_, rng_);
  return PseudoLabel::Released(
      noisy >= static_cast<double>(votes.total()) / 2.0 ? 1 : 0);
}

PrivacyReport GaussianSession::Report() const {
  return {ExPostEpsilon(answered_, sigma_, delta_), delta_};
}

SvtSession::SvtSession(const Params& params, Rng rng)
    : params_(params), noisy_threshold_(0.0), rng_(rng) {
  if (!(params.lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (params.cutoff < 1) throw ParameterError("T must be >= 1");
  if (params.budget_ell < 1) throw ParameterError("query budget must be >= 1");
  noisy_threshold_ = params_.w + SampleLaplace(params_.lambda, rng_);
}

SvtSession SvtSession::Calibrated(std::int64_t budget_ell, std::int64_t cutoff,
                                  const PrivacyBudget& budget, Rng rng) {
  const double lambda = CalibrateSvtLambda(cutoff, budget);
  const double w = SvtThresholdW(lambda, budget_ell, cutoff, budget.delta());
  return SvtSession(Params{lambda, w, cutoff, budget_ell, budget}, rng);
}

PseudoLabel SvtSession::Answer(const VoteCount& votes) {
  if (halted()) {
    throw SessionError("SVT session halted after " +
                       std::to_string(params_.cutoff) + " unstable queries");
  }
  if (answered_ >= params_.budget_ell) {
    throw SessionError("SVT session budget of " +
                       std::to_string(params_.budget_ell) +
                       " queries exhausted");
  }
  ++answered_;
  const double noisy_dist =
      static_cast<double>(DistanceToInstability(votes)) +
      SampleLaplace(2.0 * params_.lambda, rng_);
  if (noisy_dist > noisy_threshold_) {
    return PseudoLabel::Released(votes.MajorityLabel());
  }
  ++bots_;
  if (!halted()) {
    noisy_threshold_ = params_.w + SampleLaplace(params_.lambda, rng_);
  }
  return PseudoLabel::Bot();
}

PrivacyReport SvtSession::Report() const {
  const double delta = params_.budget.delta();
  const double rho = SvtCompositionRho(params_.cutoff, params_.lambda);
  return {ZcdpToDp(rho, delta / 2.0), delta};
}

PseudoLabel NoiselessSession::Answer(const VoteCount& votes) {
  ++answered_;
  return PseudoLabel::Released(votes.MajorityLabel());
}

PrivacyReport NoiselessSession::Report() const {
  return {answered_ == 0 ? 0.0 : std::numeric_limits<double>::infinity(),
          0.0};
}

std::vector<SvtOutcome> SparseVector(std::span<const double> queries,
                                     std::int64_t cutoff, double w,
                                     const PrivacyBudget& budget, Rng& rng) {
  if (cutoff < 1) throw ParameterError("T must be >= 1");
  const double lambda =
      std::sqrt(32.0 * static_cast<double>(cutoff) *
                std::log(1.0 / budget.delta())) /
      budget.epsilon();
  std::vector<SvtOutcome> out;
  if (queries.empty()) return out;
  double noisy_threshold = w + SampleLaplace(lambda, rng);
  std::int64_t below = 0;
  for (double q : queries) {
    if (q + SampleLaplace(2.0 * lambda, rng) > noisy_threshold) {
      out.push_back(SvtOutcome::kAbove);
      continue;
    }
    out.push_back(SvtOutcome::kBelow);
    if (++below >= cutoff) break;
    noisy_threshold = w + SampleLaplace(lambda, rng);
  }
  return out;
}

}  // namespace pate
