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

#include "pate/synthdata.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "pate/dp_core.h"
#include "pate/errors.h"

namespace pate {

LinearGenerator::LinearGenerator(std::size_t dimension, double flip,
                                 std::uint64_t w_star_seed)
    : flip_(flip) {
  if (dimension == 0) throw ParameterError("dimension must be >= 1");
  if (!(flip >= 0.0 && flip < 0.5)) {
    throw ParameterError("flip rate must lie in [0, 1/2)");
  }
  Rng rng(w_star_seed);
  w_star_.weights.resize(dimension);
  for (double& w : w_star_.weights) w = SampleGaussian(1.0, rng);
}

Dataset LinearGenerator::Sample(std::size_t n, Rng& rng) const {
  Dataset out(dimension());
  for (std::size_t i = 0; i < n; ++i) {
    Example x;
    x.features.resize(dimension());
    for (std::size_t j = 0; j < dimension(); ++j) {
      x.features[j] = Feature{static_cast<std::uint32_t>(j),
                              2.0 * rng.Uniform() - 1.0};
    }
    int y = BayesLabel(x);
    if (flip_ > 0.0 && rng.Bernoulli(flip_)) y = 1 - y;
    x.label = y;
    out.Add(std::move(x));
  }
  return out;
}

double LinearGenerator::Regression(const Example& x) const {
  return BayesLabel(x) == 1 ? 1.0 - flip_ : flip_;
}

int LinearGenerator::BayesLabel(const Example& x) const {
  return Predict(w_star_, x);
}

TncGenerator::TncGenerator(double tau, double c)
    : tau_(tau), c_(c), exponent_(0.0) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw ParameterError("TNC parameter tau must lie in (0, 1]");
  }
  if (!(c > 0.0)) throw ParameterError("TNC margin constant must be positive");
  exponent_ = (1.0 - tau) / tau;
}

double TncGenerator::MarginAt(double u) const {
  const double raw = exponent_ == 0.0 ? c_ : c_ * std::pow(u, exponent_);
  return std::min(0.5, raw);
}

double TncGenerator::MarginIntegral(double d) const {
  if (exponent_ == 0.0) return std::min(0.5, c_) * d;
  const double a1 = exponent_ + 1.0;
  // Below u0 the margin is unclamped.
  const double u0 = std::pow(0.5 / c_, 1.0 / exponent_);
  if (d <= u0) return c_ * std::pow(d, a1) / a1;
  return c_ * std::pow(u0, a1) / a1 + 0.5 * (d - u0);
}

Dataset TncGenerator::Sample(std::size_t n, Rng& rng) const {
  Dataset out(1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.Uniform();
    Example ex = ScalarExample(x);
    ex.label = rng.Bernoulli(Regression(ex)) ? 1 : 0;
    out.Add(std::move(ex));
  }
  return out;
}

double TncGenerator::Regression(const Example& x) const {
  const double v = ScalarValue(x);
  const double margin = MarginAt(std::fabs(v - 0.5));
  return v > 0.5 ? 0.5 + margin : 0.5 - margin;
}

int TncGenerator::BayesLabel(const Example& x) const {
  return ScalarValue(x) > 0.5 ? 1 : 0;
}

double TncGenerator::BayesError() const {
  return 0.5 - 2.0 * MarginIntegral(0.5);
}

double TncGenerator::ExcessRisk(double threshold) const {
  const double t = std::clamp(threshold, 0.0, 1.0);
  return 2.0 * MarginIntegral(std::fabs(t - 0.5));
}

FiniteDomainGenerator::FiniteDomainGenerator(std::vector<double> regression,
                                             std::vector<double> probabilities)
    : regression_(std::move(regression)),
      probabilities_(std::move(probabilities)) {
  if (regression_.empty()) throw ParameterError("finite domain is empty");
  if (probabilities_.empty()) {
    probabilities_.assign(regression_.size(),
                          1.0 / static_cast<double>(regression_.size()));
  }
  if (probabilities_.size() != regression_.size()) {
    throw ParameterError("probability and regression tables differ in size");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < regression_.size(); ++i) {
    if (!(regression_[i] >= 0.0 && regression_[i] <= 1.0) ||
        !(probabilities_[i] >= 0.0)) {
      throw ParameterError("invalid finite-domain table entry");
    }
    total += probabilities_[i];
    cumulative_.push_back(total);
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw ParameterError("finite-domain probabilities must sum to 1");
  }
}

Dataset FiniteDomainGenerator::Sample(std::size_t n, Rng& rng) const {
  Dataset out(1);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.Uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto id = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative_.begin()), domain_size() - 1);
    out.Add(ScalarExample(static_cast<double>(id),
                          rng.Bernoulli(regression_[id]) ? 1 : 0));
  }
  return out;
}

std::size_t FiniteDomainGenerator::PointId(const Example& x) const {
  const double v = ScalarValue(x);
  if (v < 0.0 || v >= static_cast<double>(domain_size())) {
    throw ParameterError("point id outside the finite domain");
  }
  return static_cast<std::size_t>(v);
}

double FiniteDomainGenerator::Regression(const Example& x) const {
  return regression_[PointId(x)];
}

int FiniteDomainGenerator::BayesLabel(const Example& x) const {
  return Regression(x) >= 0.5 ? 1 : 0;
}

double FiniteDomainGenerator::BayesError() const {
  double err = 0.0;
  for (std::size_t i = 0; i < domain_size(); ++i) {
    err += probabilities_[i] * std::min(regression_[i], 1.0 - regression_[i]);
  }
  return err;
}

VotingFailsFixture GenVotingFails() {
  return VotingFailsFixture{
      FiniteDomainGenerator({1.0, 1.0, 1.0, 1.0}),
      FiniteHypothesisClass({{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}}),
      {1, 1, 1, 1}};
}

std::vector<double> VotingWinsGenerator::RegressionFromLabels(
    const std::vector<int>& labels) {
  std::vector<double> r;
  r.reserve(labels.size());
  for (int y : labels) r.push_back(y == 1 ? 1.0 : 0.0);
  return r;
}

VotingWinsGenerator::VotingWinsGenerator(double xi, std::vector<int> labels)
    : FiniteDomainGenerator(RegressionFromLabels(labels)),
      xi_(xi),
      labels_(std::move(labels)) {
  if (!(xi > 0.0 && xi < 0.5)) throw ParameterError("xi must lie in (0, 1/2)");
}

int VotingWinsGenerator::SimulateTeacher(std::size_t id, Rng& rng) const {
  const bool correct = rng.Bernoulli(0.5 + xi_);
  return correct ? labels_[id] : 1 - labels_[id];
}

VotingWinsGenerator GenVotingWins(double xi, std::size_t domain_size,
                                  Rng& rng) {
  if (domain_size == 0) throw ParameterError("domain size must be >= 1");
  std::vector<int> labels(domain_size);
  for (int& y : labels) y = rng.Bernoulli(0.5) ? 1 : 0;
  return VotingWinsGenerator(xi, std::move(labels));
}

MonteCarloEstimate VotingWinsAggregateError(const VotingWinsGenerator& gen,
                                            std::int64_t k, std::size_t points,
                                            Rng& rng) {
  if (k < 1 || points == 0) throw ParameterError("need K >= 1 and points >= 1");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < points; ++i) {
    const auto id = static_cast<std::size_t>(rng.UniformInt(gen.domain_size()));
    std::int64_t ones = 0;
    for (std::int64_t t = 0; t < k; ++t) ones += gen.SimulateTeacher(id, rng);
    const int majority = 2 * ones >= k ? 1 : 0;
    errors += majority != gen.LabelAt(id);
  }
  const double p = static_cast<double>(errors) / static_cast<double>(points);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(points))};
}

LinearSample GenRealizable(std::size_t d, std::size_t n, Rng& rng) {
  return GenMassart(d, n, 0.0, rng);
}

LinearSample GenMassart(std::size_t d, std::size_t n, double flip, Rng& rng) {
  LinearGenerator gen(d, flip, rng.NextU64());
  return LinearSample{gen.Sample(n, rng), gen.w_star(), gen.BayesError()};
}

TncSample GenTnc(double tau, std::size_t n, Rng& rng, double c) {
  TncGenerator gen(tau, c);
  return TncSample{gen.Sample(n, rng), 0.5, gen.BayesError()};
}

GeneratorKind ParseGeneratorKind(const std::string& name) {
  if (name == "realizable") return GeneratorKind::kRealizable;
  if (name == "massart") return GeneratorKind::kMassart;
  if (name == "tnc") return GeneratorKind::kTnc;
  if (name == "voting-fails") return GeneratorKind::kVotingFails;
  if (name == "voting-wins") return GeneratorKind::kVotingWins;
  throw ParameterError("unknown generator '" + name + "'");
}

std::string GeneratorName(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kRealizable: return "realizable";
    case GeneratorKind::kMassart: return "massart";
    case GeneratorKind::kTnc: return "tnc";
    case GeneratorKind::kVotingFails: return "voting-fails";
    case GeneratorKind::kVotingWins: return "voting-wins";
  }
  return "unknown";
}

std::unique_ptr<DataGenerator> MakeGenerator(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::kRealizable:
      return std::make_unique<LinearGenerator>(spec.dimension, 0.0, spec.seed);
    case GeneratorKind::kMassart:
      return std::make_unique<LinearGenerator>(spec.dimension, spec.flip,
                                               spec.seed);
    case GeneratorKind::kTnc:
      return std::make_unique<TncGenerator>(spec.tau, spec.tnc_c);
    case GeneratorKind::kVotingFails:
      return std::make_unique<FiniteDomainGenerator>(GenVotingFails().generator);
    case GeneratorKind::kVotingWins: {
      Rng rng(spec.seed);
      return std::make_unique<VotingWinsGenerator>(
          GenVotingWins(spec.xi, spec.domain_size, rng));
    }
  }
  throw ParameterError("unknown generator kind");
}

}  // namespace pate
