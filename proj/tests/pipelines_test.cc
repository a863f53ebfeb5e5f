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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pate/aggregation.h"
#include "pate/dp_core.h"
#include "pate/errors.h"
#include "pate/estimators.h"
#include "pate/synthdata.h"

namespace pate {
namespace {

struct Pools {
  Dataset teacher, student, test;
};

Pools MakePools(const DataGenerator& gen, std::size_t teacher, std::size_t student,
                std::size_t test, std::uint64_t seed) {
  Rng rng(seed);
  return {gen.Sample(teacher, rng), gen.Sample(student, rng).WithoutLabels(),
          gen.Sample(test, rng)};
}

TEST(PatePsqTest, GenerousBudgetTracksNoiselessStudent) {
  const LinearGenerator gen(5, 0.0, 31);
  const Pools p = MakePools(gen, 12000, 400, 4000, 32);
  PsqConfig config;
  config.k = 200;
  config.budget = PrivacyBudget(10.0, 1e-5);
  Rng r1(33), r2(33);
  const auto priv = PatePsq(p.teacher, p.student, p.test, config, r1);
  config.mechanism = Mechanism::kNone;
  const auto np = PatePsq(p.teacher, p.student, p.test, config, r2);
  EXPECT_NEAR(priv.report.accuracy, np.report.accuracy, 0.05);
  EXPECT_EQ(priv.report.queries, 400);
  EXPECT_EQ(priv.report.bots, 0);
  EXPECT_LE(priv.report.eps_ex_post, 10.0 + 1e-9);
  EXPECT_TRUE(std::isinf(np.report.epsilon));
}

TEST(PatePsqTest, OnePointPerTeacherIsLegal) {
  const LinearGenerator gen(2, 0.0, 1);
  const Pools p = MakePools(gen, 60, 20, 50, 2);
  PsqConfig config;
  config.k = 60;
  Rng rng(3);
  const auto out = PatePsq(p.teacher, p.student, p.test, config, rng);
  EXPECT_EQ(out.student.weights.size(), 2u);
  EXPECT_GE(out.report.accuracy, 0.0);
  EXPECT_LE(out.report.accuracy, 1.0);
  config.k = 61;
  EXPECT_THROW(PatePsq(p.teacher, p.student, p.test, config, rng), ParameterError);
}

TEST(PatePsqTest, SvtHaltRecordedAndBotsFilled) {
  // Few teachers: every margin is tiny relative to w, so the session emits
  // bots until the cutoff.
  const LinearGenerator gen(2, 0.2, 4);
  const Pools p = MakePools(gen, 500, 50, 100, 5);
  PsqConfig config;
  config.k = 5;
  config.mechanism = Mechanism::kSvt;
  config.cutoff = 3;
  Rng rng(6);
  const auto out = PatePsq(p.teacher, p.student, p.test, config, rng);
  EXPECT_TRUE(out.report.halted_early);
  EXPECT_EQ(out.report.bots, 50);
  EXPECT_EQ(out.report.queries, 3);
  config.cutoff = 0;
  EXPECT_THROW(PatePsq(p.teacher, p.student, p.test, config, rng), ParameterError);
}

TEST(PatePsqTest, SameSeedSameReport) {
  const LinearGenerator gen(3, 0.1, 7);
  const Pools p = MakePools(gen, 2000, 100, 300, 8);
  PsqConfig config;
  config.k = 20;
  config.bot_policy = BotPolicy::kCoinFlip;
  Rng a(9), b(9);
  const auto x = PatePsq(p.teacher, p.student, p.test, config, a);
  const auto y = PatePsq(p.teacher, p.student, p.test, config, b);
  EXPECT_EQ(x.student.weights, y.student.weights);
  EXPECT_EQ(x.report.accuracy, y.report.accuracy);
}

TEST(PateAsqTest, QueriesWithinBudgetAndEpsilonWithinBudget) {
  const LinearGenerator gen(3, 0.05, 11);
  const Pools p = MakePools(gen, 4000, 200, 500, 12);
  for (std::int64_t ell : {1, 20, 60}) {
    AsqConfig config;
    config.k = 40;
    config.query_budget = ell;
    config.budget = PrivacyBudget(1.0, 1.0 / 4000);
    Rng rng(13);
    const auto out = PateAsq(p.teacher, p.student, p.test, config, rng);
    EXPECT_LE(out.report.queries, ell);
    EXPECT_GE(out.report.queries, 1);
    EXPECT_LE(out.report.eps_ex_post, 1.0 + 1e-12);
    EXPECT_GE(out.report.bots, 0);
    // A session calibrated for one query spends the whole budget on it.
    if (ell == 1) EXPECT_NEAR(out.report.eps_ex_post, 1.0, 1e-9);
  }
}

TEST(PateAsqTest, NoiselessReportsInfiniteEpsilon) {
  const LinearGenerator gen(2, 0.0, 14);
  const Pools p = MakePools(gen, 1000, 100, 200, 15);
  AsqConfig config;
  config.k = 10;
  config.query_budget = 30;
  config.private_labels = false;
  Rng rng(16);
  const auto out = PateAsq(p.teacher, p.student, p.test, config, rng);
  EXPECT_TRUE(std::isinf(out.report.epsilon));
  EXPECT_EQ(out.report.bots, 0);
  EXPECT_GE(out.report.accuracy, 0.8);
}

TEST(ComputeKTest, IdentityWithCalibratedSigma) {
  for (std::int64_t m : {1, 49, 1000}) {
    for (double eps : {0.1, 0.5, 1.0, 2.0}) {
      for (double delta : {1e-5, 1e-8}) {
        for (std::int64_t n : {100, 6499}) {
          const PrivacyBudget b(eps, delta);
          const double sigma = CalibrateGaussianSigma(m, b);
          const double k = 6.0 * sigma * std::sqrt(2.0 * std::log(2.0 * n));
          const std::int64_t got = ComputeKForGaussian(m, b, n);
          // Equal up to ceil of values that agree to 1e-9 relative.
          EXPECT_LE(std::fabs(got - std::ceil(k)), k * 1e-9 + (std::fabs(k - std::round(k)) < 1e-6 ? 1 : 0));
        }
      }
    }
  }
}

TEST(ComputeKTest, Scaling) {
  const PrivacyBudget b(1.0, 1e-5), half(0.5, 1e-5);
  const double k1 = ComputeKForGaussian(1000, b, 5000);
  const double k4 = ComputeKForGaussian(4000, b, 5000);
  EXPECT_NEAR(k4 / k1, 2.0, 0.02);
  // The eps*m term inside the root shrinks too, so halving eps
  // multiplies K by a factor in (1, 2).
  const double kh = ComputeKForGaussian(1000, half, 5000);
  EXPECT_GT(kh, 1.9 * k1);
  EXPECT_LE(kh, 2 * k1 + 1);
  EXPECT_THROW(ComputeKForGaussian(0, b, 10), ParameterError);
}

TEST(ComputeSvtParamsTest, FormulaValues) {
  const PrivacyBudget b(1.0, 1e-5);
  const std::int64_t m = 163;
  const double beta = 0.05;
  const auto zero = ComputeSvtParams(m, 0.0, beta, b);
  EXPECT_EQ(zero.cutoff,
            static_cast<std::int64_t>(std::ceil(3 * std::sqrt(m * std::log(m / beta) / 2))));
  const double t = static_cast<double>(zero.cutoff);
  const double k = 136 * std::log(4 * m * t / std::min(1e-5, beta / 2)) *
                   std::sqrt(t * std::log(2 / 1e-5));
  EXPECT_EQ(zero.k, static_cast<std::int64_t>(std::ceil(k)));

  // Linear term dominant: doubling m nearly doubles T; the root term grows
  // by less than 2.
  const auto a = ComputeSvtParams(10000, 0.3, 0.05, b);
  const auto c = ComputeSvtParams(20000, 0.3, 0.05, b);
  EXPECT_GT(c.cutoff, 1.9 * a.cutoff);
  EXPECT_LE(c.cutoff, 2 * a.cutoff);
  EXPECT_THROW(ComputeSvtParams(10, 0.1, 0.0, b), ParameterError);
}

// Constructed votes: every realized margin is at least K/3.
TEST(SvtFidelityTest, HighMarginStreamsReleaseTheMajority) {
  const PrivacyBudget b(1.0, 1e-5);
  const std::int64_t m = 100;
  const SvtParameters params = ComputeSvtParams(m, 0.0, 0.05, b);
  Rng rng(40);
  for (int trial = 0; trial < 100; ++trial) {
    SvtSession session = SvtSession::Calibrated(m, params.cutoff, b, rng.Split(trial));
    for (std::int64_t i = 0; i < m; ++i) {
      // ones in [0, K/3] or [2K/3, K].
      const std::int64_t third = params.k / 3;
      const std::int64_t ones = rng.Bernoulli(0.5)
                                    ? static_cast<std::int64_t>(rng.UniformInt(third + 1))
                                    : params.k - static_cast<std::int64_t>(rng.UniformInt(third + 1));
      const VoteCount v(ones, params.k);
      const PseudoLabel y = session.Answer(v);
      ASSERT_FALSE(y.is_bot()) << trial << " " << i;
      EXPECT_EQ(y.label(), v.MajorityLabel());
    }
  }
}

// Teachers with a known expected-margin profile: a fraction `low` of the
// points sit at margin 0.02, the rest at 0.3.
class ProfileTeachers final : public TeacherModel {
 public:
  ProfileTeachers(std::size_t m, double low, Rng& rng) : p_(m), label_(m) {
    for (std::size_t i = 0; i < m; ++i) {
      label_[i] = rng.Bernoulli(0.5) ? 1 : 0;
      const double margin = rng.Bernoulli(low) ? 0.02 : 0.3;
      p_[i] = label_[i] == 1 ? 0.5 + margin : 0.5 - margin;
    }
  }
  std::size_t probe_count() const override { return p_.size(); }
  void SampleTeacher(Rng& rng, std::span<std::uint8_t> out) const override {
    for (std::size_t i = 0; i < p_.size(); ++i) out[i] = rng.Bernoulli(p_[i]) ? 1 : 0;
  }
  int label(std::size_t i) const { return label_[i]; }

 private:
  std::vector<double> p_;
  std::vector<int> label_;
};

TEST(SvtFidelityTest, HighMarginParameterizationFinishes) {
  const PrivacyBudget b(5.0, 1e-5);
  const std::size_t m = 200;
  const double xi = 0.2, gamma = 0.1;
  Rng rng(50);
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ProfileTeachers model(m, 0.1, rng);
    const double nu = EstimateHighMarginNu(model, xi, 400, rng);
    const SvtParameters params = ComputeHighMarginSvtParams(
        static_cast<std::int64_t>(m), nu, xi, gamma, b);
    std::vector<std::int64_t> ones(m, 0);
    std::vector<std::uint8_t> buf(m);
    for (std::int64_t t = 0; t < params.k; ++t) {
      model.SampleTeacher(rng, buf);
      for (std::size_t i = 0; i < m; ++i) ones[i] += buf[i];
    }
    SvtSession session = SvtSession::Calibrated(static_cast<std::int64_t>(m),
                                                params.cutoff, b, rng.Split(trial));
    bool finished = true;
    std::int64_t disagree = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (session.halted()) {
        finished = false;
        break;
      }
      const PseudoLabel y = session.Answer(VoteCount(ones[i], params.k));
      disagree += y.is_bot() || y.label() != model.label(i);
    }
    good += finished && disagree <= params.cutoff;
  }
  EXPECT_GE(good, 90);
}

TEST(EstimateTeacherErrorTest, RealizableIsSmallNoisyNearFlip) {
  const LinearGenerator clean(3, 0.0, 60), noisy(3, 0.25, 60);
  Rng rng(61);
  const Dataset a = clean.Sample(5000, rng), b = noisy.Sample(5000, rng);
  EXPECT_LT(EstimateTeacherError(a, 10, TrainerConfig{}, rng), 0.05);
  EXPECT_NEAR(EstimateTeacherError(b, 10, TrainerConfig{}, rng), 0.25, 0.06);
}

}  // namespace
}  // namespace pate
