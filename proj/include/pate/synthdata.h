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

#ifndef PATE_SYNTHDATA_H_
#define PATE_SYNTHDATA_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pate/data.h"
#include "pate/finite_class.h"
#include "pate/learners.h"
#include "pate/rng.h"

namespace pate {

enum class GeneratorKind { kRealizable, kMassart, kTnc, kVotingFails, kVotingWins };

// A labeled distribution with known ground truth. Sampling is deterministic
// given the generator state and `rng`.
class DataGenerator {
 public:
  virtual ~DataGenerator() = default;

  virtual GeneratorKind kind() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual Dataset Sample(std::size_t n, Rng& rng) const = 0;

  // P[y = 1 | x].
  virtual double Regression(const Example& x) const = 0;
  // h*(x): the Bayes classifier, which lies in the model class for every
  // generator here.
  virtual int BayesLabel(const Example& x) const = 0;
  virtual double BayesError() const = 0;
};

// x uniform on [-1, 1]^d, y = 1(w* . x >= 0), then flipped with probability
// `flip`. flip = 0 is the realizable case.
class LinearGenerator final : public DataGenerator {
 public:
  // w* ~ N(0, I_d) drawn from `w_star_seed`.
  LinearGenerator(std::size_t dimension, double flip, std::uint64_t w_star_seed);

  GeneratorKind kind() const override {
    return flip_ == 0.0 ? GeneratorKind::kRealizable : GeneratorKind::kMassart;
  }
  std::size_t dimension() const override { return w_star_.weights.size(); }
  Dataset Sample(std::size_t n, Rng& rng) const override;
  double Regression(const Example& x) const override;
  int BayesLabel(const Example& x) const override;
  double BayesError() const override { return flip_; }

  double flip() const { return flip_; }
  const LinearHypothesis& w_star() const { return w_star_; }

 private:
  double flip_;
  LinearHypothesis w_star_;
};

// One-dimensional Tsybakov family: x ~ U[0, 1], h*(x) = 1(x > 1/2) and
// |r(x) - 1/2| = min(1/2, c |x - 1/2|^((1 - tau) / tau)).
class TncGenerator final : public DataGenerator {
 public:
  explicit TncGenerator(double tau, double c = 0.5);

  GeneratorKind kind() const override { return GeneratorKind::kTnc; }
  std::size_t dimension() const override { return 1; }
  Dataset Sample(std::size_t n, Rng& rng) const override;
  double Regression(const Example& x) const override;
  int BayesLabel(const Example& x) const override;
  double BayesError() const override;

  double tau() const { return tau_; }
  double c() const { return c_; }
  // |r(x) - 1/2| at distance u = |x - 1/2| from the boundary.
  double MarginAt(double u) const;
  // Err(1(x > t)) - Err(h*), in closed form.
  double ExcessRisk(double threshold) const;

 private:
  // Integral of MarginAt over [0, d].
  double MarginIntegral(double d) const;

  double tau_;
  double c_;
  double exponent_;
};

// Uniform (or weighted) distribution on {0, ..., n-1} with a per-point
// regression value. Points are ScalarExample(id).
class FiniteDomainGenerator : public DataGenerator {
 public:
  FiniteDomainGenerator(std::vector<double> regression,
                        std::vector<double> probabilities = {});

  GeneratorKind kind() const override { return GeneratorKind::kVotingFails; }
  std::size_t dimension() const override { return 1; }
  std::size_t domain_size() const { return regression_.size(); }
  Dataset Sample(std::size_t n, Rng& rng) const override;
  double Regression(const Example& x) const override;
  int BayesLabel(const Example& x) const override;
  double BayesError() const override;

  double probability(std::size_t id) const { return probabilities_[id]; }
  double RegressionAt(std::size_t id) const { return regression_[id]; }

 protected:
  std::size_t PointId(const Example& x) const;

 private:
  std::vector<double> regression_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

// The four-point counterexample where majority voting of ERM teachers is
// worse than every member of the class.
struct VotingFailsFixture {
  FiniteDomainGenerator generator;
  FiniteHypothesisClass h_class;
  // Labels of the four points (all 1).
  std::vector<int> labels;
};

VotingFailsFixture GenVotingFails();

// Teachers are simulated predictors, independently correct at each point
// with probability 1/2 + xi. Point labels are fixed at construction.
class VotingWinsGenerator final : public FiniteDomainGenerator {
 public:
  VotingWinsGenerator(double xi, std::vector<int> labels);

  GeneratorKind kind() const override { return GeneratorKind::kVotingWins; }
  double xi() const { return xi_; }
  int LabelAt(std::size_t id) const { return labels_[id]; }

  // One simulated teacher's prediction at point `id`.
  int SimulateTeacher(std::size_t id, Rng& rng) const;

 private:
  static std::vector<double> RegressionFromLabels(const std::vector<int>& labels);

  double xi_;
  std::vector<int> labels_;
};

VotingWinsGenerator GenVotingWins(double xi, std::size_t domain_size, Rng& rng);

struct MonteCarloEstimate {
  double mean;
  double standard_error;
};

// Error of the K-teacher majority (ties to 1) at `points` random domain
// points, each with K fresh simulated teachers.
MonteCarloEstimate VotingWinsAggregateError(const VotingWinsGenerator& gen,
                                            std::int64_t k, std::size_t points,
                                            Rng& rng);

// Data plus ground truth from the linear family.
struct LinearSample {
  Dataset data;
  LinearHypothesis w_star;
  double bayes_error;
};

// w* is drawn from `rng` first, then the sample.
LinearSample GenRealizable(std::size_t d, std::size_t n, Rng& rng);
LinearSample GenMassart(std::size_t d, std::size_t n, double flip, Rng& rng);

struct TncSample {
  Dataset data;
  double threshold;  // h*(x) = 1(x > threshold)
  double bayes_error;
};

TncSample GenTnc(double tau, std::size_t n, Rng& rng, double c = 0.5);

// Named generator construction for the CLI.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRealizable;
  std::size_t dimension = 5;
  double flip = 0.0;
  double tau = 1.0;
  double tnc_c = 0.5;
  double xi = 0.1;
  std::size_t domain_size = 1000;
  std::uint64_t seed = 0;
};

GeneratorKind ParseGeneratorKind(const std::string& name);
std::string GeneratorName(GeneratorKind kind);
std::unique_ptr<DataGenerator> MakeGenerator(const GeneratorSpec& spec);

}  // namespace pate

#endif  // PATE_SYNTHDATA_H_
