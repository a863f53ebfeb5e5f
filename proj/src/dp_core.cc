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

#include "pate/dp_core.h"

#include <cmath>
#include <string>

#include "pate/errors.h"

namespace pate {
namespace {

void RequirePositive(double value, const char* what) {
  if (!(value > 0.0)) {
    throw ParameterError(std::string(what) + " must be positive, got " +
                         std::to_string(value));
  }
}

void RequireDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("delta must lie in (0, 1), got " +
                         std::to_string(delta));
  }
}

}  // namespace

PrivacyBudget::PrivacyBudget(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  if (std::isnan(epsilon) || !(epsilon > 0.0)) {
    throw ParameterError("epsilon must be positive, got " +
                         std::to_string(epsilon));
  }
  RequireDelta(delta);
}

bool PrivacyBudget::BeyondAnalyzedRange() const {
  return epsilon_ > std::log(1.0 / delta_);
}

void PrivacyAccount::Add(double rho_increment) {
  if (!(rho_increment >= 0.0)) {
    throw ParameterError("zCDP increment must be nonnegative");
  }
  rho_ += rho_increment;
}

double PrivacyAccount::Epsilon(double delta) const {
  return ZcdpToDp(rho_, delta);
}

double NoiseScale::Sample(Rng& rng) const {
  return kind == NoiseKind::kLaplace ? SampleLaplace(scale, rng)
                                     : SampleGaussian(scale, rng);
}

double SampleLaplace(double scale, Rng& rng) {
  RequirePositive(scale, "Laplace scale");
  const double u = rng.UniformOpen() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

double SampleGaussian(double sigma, Rng& rng) {
  RequirePositive(sigma, "Gaussian sigma");
  double u = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * rng.Uniform() - 1.0;
    const double v = 2.0 * rng.Uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return sigma * u * std::sqrt(-2.0 * std::log(s) / s);
}

double CalibrateGaussianSigma(std::int64_t ell, const PrivacyBudget& budget) {
  if (ell < 1) throw ParameterError("ell must be at least 1");
  const double eps = budget.epsilon();
  const double l = static_cast<double>(ell);
  const double a = 2.0 * l * std::log(1.0 / budget.delta());
  return (std::sqrt(a) + std::sqrt(a + 2.0 * eps * l)) / (2.0 * eps);
}

double CalibrateSvtLambda(std::int64_t cutoff, const PrivacyBudget& budget) {
  if (cutoff < 1) throw ParameterError("T must be at least 1");
  const double eps = budget.epsilon();
  const double two_t = 2.0 * static_cast<double>(cutoff);
  const double log_term = std::log(2.0 / budget.delta());
  return (std::sqrt(two_t * (eps + log_term)) + std::sqrt(two_t * log_term)) /
         eps;
}

double SvtThresholdW(double lambda, std::int64_t ell, std::int64_t cutoff,
                     double delta) {
  RequirePositive(lambda, "lambda");
  if (ell < 1 || cutoff < 1) throw ParameterError("ell and T must be >= 1");
  RequirePositive(delta, "delta");
  return 3.0 * lambda *
         std::log(2.0 * static_cast<double>(ell + cutoff) / delta);
}

double ZcdpToDp(double rho, double delta) {
  if (!(rho >= 0.0)) throw ParameterError("rho must be nonnegative");
  RequireDelta(delta);
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

double DpToZcdp(double epsilon) {
  RequirePositive(epsilon, "epsilon");
  return epsilon * epsilon / 2.0;
}

double GaussianCompositionRho(std::int64_t ell, double sigma) {
  if (ell < 0) throw ParameterError("ell must be nonnegative");
  RequirePositive(sigma, "sigma");
  return static_cast<double>(ell) / (2.0 * sigma * sigma);
}

double SvtCompositionRho(std::int64_t cutoff, double lambda) {
  if (cutoff < 0) throw ParameterError("T must be nonnegative");
  RequirePositive(lambda, "lambda");
  return 2.0 * static_cast<double>(cutoff) / (lambda * lambda);
}

double ExPostEpsilon(std::int64_t queries_answered, double sigma,
                     double delta) {
  return ZcdpToDp(GaussianCompositionRho(queries_answered, sigma), delta);
}

}  // namespace pate
