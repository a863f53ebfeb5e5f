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

#ifndef PATE_AGGREGATION_H_
#define PATE_AGGREGATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pate/dp_core.h"
#include "pate/rng.h"

namespace pate {

// Teacher votes on one query: `ones` of `total` teachers predict label 1.
class VoteCount {
 public:
  VoteCount(std::int64_t ones, std::int64_t total);

  std::int64_t ones() const { return ones_; }
  std::int64_t total() const { return total_; }

  // Noiseless majority with ties going to label 1.
  int MajorityLabel() const { return 2 * ones_ >= total_ ? 1 : 0; }

  friend bool operator==(const VoteCount&, const VoteCount&) = default;

 private:
  std::int64_t ones_;
  std::int64_t total_;
};

// Realized margin |2 ones - K|.
std::int64_t Margin(const VoteCount& votes);

// max{0, ceil(margin / 2) - 1}: the number of teachers that must change
// their vote before the majority can flip. Global sensitivity 1.
std::int64_t DistanceToInstability(const VoteCount& votes);

// A released label in {0, 1} or the withheld symbol.
class PseudoLabel {
 public:
  static PseudoLabel Released(int label);
  static PseudoLabel Bot() { return PseudoLabel(); }

  bool is_bot() const { return !label_.has_value(); }
  // Precondition: !is_bot().
  int label() const { return *label_; }

  friend bool operator==(const PseudoLabel&, const PseudoLabel&) = default;

 private:
  PseudoLabel() = default;
  std::optional<int> label_;
};

struct PrivacyReport {
  double epsilon;
  double delta;
};

// A labeling service answering an adaptive stream of vote counts. Sessions
// are single-owner state machines; the caller picks the next query after
// seeing each answer.
class LabelingSession {
 public:
  virtual ~LabelingSession() = default;

  virtual PseudoLabel Answer(const VoteCount& votes) = 0;

  // Queries answered so far (including withheld ones for SVT).
  virtual std::int64_t answered() const = 0;

  virtual PrivacyReport Report() const = 0;
};

// Gaussian noisy-vote aggregator with sigma calibrated for `budget_ell`
// releases.
class GaussianSession final : public LabelingSession {
 public:
  GaussianSession(double sigma, std::int64_t budget_ell, double delta,
                  Rng rng);

  static GaussianSession Calibrated(std::int64_t budget_ell,
                                    const PrivacyBudget& budget, Rng rng);

  // 1(ones + N(0, sigma^2) >= K/2). Throws SessionError once `budget_ell`
  // queries have been answered.
  PseudoLabel Answer(const VoteCount& votes) override;

  std::int64_t answered() const override { return answered_; }
  std::int64_t budget_ell() const { return budget_ell_; }
  double sigma() const { return sigma_; }
  bool exhausted() const { return answered_ >= budget_ell_; }

  // zcdp_to_dp(answered / (2 sigma^2), delta).
  PrivacyReport Report() const override;

 private:
  double sigma_;
  std::int64_t budget_ell_;
  double delta_;
  std::int64_t answered_ = 0;
  Rng rng_;
};

// Sparse-vector aggregator over distance to instability. Pays privacy only
// for withheld answers, up to the unstable cutoff T.
class SvtSession final : public LabelingSession {
 public:
  struct Params {
    double lambda;
    double w;
    std::int64_t cutoff;
    std::int64_t budget_ell;
    PrivacyBudget budget;
  };

  SvtSession(const Params& params, Rng rng);

  // lambda and w from the calibration formulas for `budget_ell` queries and
  // cutoff T.
  static SvtSession Calibrated(std::int64_t budget_ell, std::int64_t cutoff,
                               const PrivacyBudget& budget, Rng rng);

  // Released(majority) when dist + Lap(2 lambda) exceeds the noisy
  // threshold, otherwise Bot. Each Bot increments the unstable counter and,
  // unless the cutoff is reached, redraws the noisy threshold. Throws
  // SessionError when halted or past `budget_ell` queries.
  PseudoLabel Answer(const VoteCount& votes) override;

  std::int64_t answered() const override { return answered_; }
  std::int64_t bots() const { return bots_; }
  bool halted() const { return bots_ >= params_.cutoff; }
  double lambda() const { return params_.lambda; }
  double w() const { return params_.w; }
  double noisy_threshold() const { return noisy_threshold_; }
  std::int64_t cutoff() const { return params_.cutoff; }

  // Depends on T and lambda only: zcdp_to_dp(2T / lambda^2, delta / 2)
  // reported against the full delta.
  PrivacyReport Report() const override;

 private:
  Params params_;
  double noisy_threshold_;
  std::int64_t answered_ = 0;
  std::int64_t bots_ = 0;
  Rng rng_;
};

// Noise-free majority vote; the epsilon = infinity baseline.
class NoiselessSession final : public LabelingSession {
 public:
  PseudoLabel Answer(const VoteCount& votes) override;
  std::int64_t answered() const override { return answered_; }
  PrivacyReport Report() const override;

 private:
  std::int64_t answered_ = 0;
};

enum class SvtOutcome { kAbove, kBelow };

// Generic above-threshold sparse vector technique over sensitivity-1
// queries, lambda = sqrt(32 T log(1/delta)) / eps. Stops after T kBelow
// outputs.
std::vector<SvtOutcome> SparseVector(std::span<const double> queries,
                                     std::int64_t cutoff, double w,
                                     const PrivacyBudget& budget, Rng& rng);

// Distance-to-instability release: `value` iff dist + Lap(1/eps) > gamma.
template <typename T>
std::optional<T> StabilityRelease(const T& value, std::int64_t dist,
                                  double gamma, double epsilon, Rng& rng) {
  const double noisy = static_cast<double>(dist) + SampleLaplace(1.0 / epsilon, rng);
  if (noisy > gamma) return value;
  return std::nullopt;
}

}  // namespace pate

#endif  // PATE_AGGREGATION_H_
