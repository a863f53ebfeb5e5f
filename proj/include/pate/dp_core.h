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

#ifndef PATE_DP_CORE_H_
#define PATE_DP_CORE_H_

#include <cstdint>

#include "pate/rng.h"

namespace pate {

// (epsilon, delta) target. epsilon may be +infinity for non-private
// baselines; delta must lie in (0, 1).
class PrivacyBudget {
 public:
  PrivacyBudget(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  // The utility guarantees assume epsilon <= log(1/delta). Budgets beyond that
  // are accepted; callers surface a warning.
  bool BeyondAnalyzedRange() const;

  friend bool operator==(const PrivacyBudget&, const PrivacyBudget&) = default;

 private:
  double epsilon_;
  double delta_;
};

// Cumulative zero-concentrated DP parameter. Single writer.
class PrivacyAccount {
 public:
  double rho() const { return rho_; }

  // Adds one release's zCDP cost. Negative increments are rejected.
  void Add(double rho_increment);

  // (rho + 2 sqrt(rho log(1/delta)), delta)-DP conversion.
  double Epsilon(double delta) const;

 private:
  double rho_ = 0.0;
};

enum class NoiseKind { kLaplace, kGaussian };

struct NoiseScale {
  NoiseKind kind;
  // lambda for Laplace, sigma for Gaussian. Must be positive.
  double scale;

  double Sample(Rng& rng) const;
};

// Laplace(0, scale) by inverse CDF of one open-interval uniform.
double SampleLaplace(double scale, Rng& rng);

// N(0, sigma^2) by the Marsaglia polar method.
double SampleGaussian(double sigma, Rng& rng);

// sigma solving sqrt(2 ell log(1/delta) / sigma^2) + ell / (2 sigma^2) = eps,
// in closed form.
double CalibrateGaussianSigma(std::int64_t ell, const PrivacyBudget& budget);

// Laplace scale for the SVT aggregator with unstable cutoff T:
// (sqrt(2T(eps + log(2/delta))) + sqrt(2T log(2/delta))) / eps.
double CalibrateSvtLambda(std::int64_t cutoff, const PrivacyBudget& budget);

// Noiseless SVT threshold 3 lambda log(2(ell + T) / delta).
double SvtThresholdW(double lambda, std::int64_t ell, std::int64_t cutoff,
                     double delta);

double ZcdpToDp(double rho, double delta);
double DpToZcdp(double epsilon);

// ell/(2 sigma^2): ell sensitivity-1 Gaussian releases.
double GaussianCompositionRho(std::int64_t ell, double sigma);

// 2T/lambda^2: T rounds of the SVT mechanism at scale lambda.
double SvtCompositionRho(std::int64_t cutoff, double lambda);

// Realized privacy loss after `queries_answered` Gaussian releases.
double ExPostEpsilon(std::int64_t queries_answered, double sigma, double delta);

}  // namespace pate

#endif  // PATE_DP_CORE_H_
