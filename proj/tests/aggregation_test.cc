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
#include <vector>

#include <gtest/gtest.h>

#include "oracles/stats.h"
#include "pate/errors.h"

namespace pate {
namespace {

TEST(VoteCountTest, Validation) {
  EXPECT_THROW(VoteCount(0, 0), ParameterError);
  EXPECT_THROW(VoteCount(-1, 3), ParameterError);
  EXPECT_THROW(VoteCount(4, 3), ParameterError);
  EXPECT_EQ(VoteCount(2, 4).MajorityLabel(), 1);
  EXPECT_EQ(VoteCount(1, 4).MajorityLabel(), 0);
}

TEST(MarginTest, Examples) {
  EXPECT_EQ(Margin(VoteCount(3, 5)), 1);
  EXPECT_EQ(Margin(VoteCount(0, 10)), 10);
}

TEST(MarginTest, ParityAndSensitivityExhaustive) {
  for (int k = 1; k <= 9; ++k) {
    for (int ones = 0; ones <= k; ++ones) {
      const VoteCount v(ones, k);
      EXPECT_EQ(Margin(v) % 2, k % 2);
      EXPECT_LE(Margin(v), k);
      // Every single-vote flip.
      for (int neighbor : {ones - 1, ones + 1}) {
        if (neighbor < 0 || neighbor > k) continue;
        const VoteCount u(neighbor, k);
        // The signed margin moves by exactly 2; its absolute value can stay
        // put when the flip crosses the balance point.
        EXPECT_EQ(std::abs((2 * neighbor - k) - (2 * ones - k)), 2);
        const auto change = std::abs(Margin(u) - Margin(v));
        EXPECT_TRUE(change == 2 || (change == 0 && Margin(v) == 1)) << k << " " << ones;
        EXPECT_LE(std::abs(DistanceToInstability(u) - DistanceToInstability(v)), 1);
      }
    }
  }
}

TEST(DistanceTest, Examples) {
  // Oracle: max{0, ceil(margin / 2) - 1} in floating point.
  auto oracle = [](int margin) {
    return std::max(0.0, std::ceil(margin / 2.0) - 1.0);
  };
  EXPECT_EQ(DistanceToInstability(VoteCount(2, 4)), 0);  // margin 0
  EXPECT_EQ(DistanceToInstability(VoteCount(3, 4)), 0);  // margin 2
  EXPECT_EQ(DistanceToInstability(VoteCount(4, 5)), 1);  // margin 3
  for (int k = 1; k <= 40; ++k) {
    for (int ones = 0; ones <= k; ++ones) {
      const VoteCount v(ones, k);
      EXPECT_EQ(static_cast<double>(DistanceToInstability(v)),
                oracle(static_cast<int>(Margin(v))));
    }
  }
}

TEST(PseudoLabelTest, Basics) {
  EXPECT_TRUE(PseudoLabel::Bot().is_bot());
  EXPECT_EQ(PseudoLabel::Released(1).label(), 1);
  EXPECT_THROW(PseudoLabel::Released(2), ParameterError);
}

TEST(GaussianSessionTest, UnanimousWithTinyNoise) {
  GaussianSession s(1e-6, 10000, 1e-5, Rng(1));
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += s.Answer(VoteCount(7, 7)).label();
  EXPECT_GT(ones, 9990);
}

TEST(GaussianSessionTest, TieIsFairCoin) {
  GaussianSession s(3.0, 10000, 1e-5, Rng(2));
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += s.Answer(VoteCount(5, 10)).label();
  // 0.5 +- 3 standard errors (0.005 each).
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.015);
}

TEST(GaussianSessionTest, BudgetContract) {
  GaussianSession s(1.0, 3, 1e-5, Rng(3));
  for (int i = 0; i < 3; ++i) s.Answer(VoteCount(1, 2));
  EXPECT_TRUE(s.exhausted());
  EXPECT_THROW(s.Answer(VoteCount(1, 2)), SessionError);
}

TEST(GaussianSessionTest, Report) {
  const PrivacyBudget budget(0.8, 1e-6);
  GaussianSession s = GaussianSession::Calibrated(25, budget, Rng(4));
  EXPECT_EQ(s.Report().epsilon, 0.0);
  EXPECT_EQ(s.Report().delta, 1e-6);
  for (int i = 0; i < 25; ++i) s.Answer(VoteCount(3, 5));
  EXPECT_NEAR(s.Report().epsilon, 0.8, 0.8e-9);
}

TEST(SvtSessionTest, UnanimousReleases) {
  const PrivacyBudget budget(1.0, 1e-5);
  SvtSession s = SvtSession::Calibrated(1000, 20, budget, Rng(5));
  // dist = K/2 - 1, far above w plus Laplace slack.
  const std::int64_t k = 20000;
  ASSERT_GT(static_cast<double>(k) / 2.0, s.w() + 40.0 * s.lambda());
  for (int i = 0; i < 1000; ++i) {
    const PseudoLabel y = s.Answer(VoteCount(k, k));
    ASSERT_FALSE(y.is_bot());
    EXPECT_EQ(y.label(), 1);
  }
  EXPECT_EQ(s.bots(), 0);
}

TEST(SvtSessionTest, TiesAlmostNeverRelease) {
  const PrivacyBudget budget(1.0, 0.01);
  int released = 0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    SvtSession s = SvtSession::Calibrated(1, 1, budget, Rng(DeriveSeed(6, i)));
    released += !s.Answer(VoteCount(5, 10)).is_bot();
  }
  EXPECT_LT(released / 100000.0, 0.01);
}

TEST(SvtSessionTest, HaltsAfterCutoff) {
  SvtSession s = SvtSession::Calibrated(100, 4, PrivacyBudget(1.0, 1e-5), Rng(7));
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(s.Answer(VoteCount(5, 10)).is_bot());
  EXPECT_TRUE(s.halted());
  EXPECT_THROW(s.Answer(VoteCount(5, 10)), SessionError);
}

TEST(SvtSessionTest, BudgetEll) {
  SvtSession::Params p{1.0, -1e9, 5, 2, PrivacyBudget(1.0, 1e-5)};
  SvtSession s(p, Rng(8));
  s.Answer(VoteCount(1, 1));
  s.Answer(VoteCount(1, 1));
  EXPECT_THROW(s.Answer(VoteCount(1, 1)), SessionError);
}

TEST(SvtSessionTest, ThresholdRefreshOnlyAfterBot) {
  SvtSession s({2.0, 0.0, 3, 100, PrivacyBudget(1.0, 1e-5)}, Rng(9));
  std::int64_t bots = 0;
  while (!s.halted()) {
    const double before = s.noisy_threshold();
    const PseudoLabel y = s.Answer(VoteCount(std::int64_t{bots % 2 == 0 ? 3 : 6}, 6));
    if (y.is_bot()) {
      ++bots;
      if (!s.halted()) EXPECT_NE(s.noisy_threshold(), before);
    } else {
      EXPECT_EQ(s.noisy_threshold(), before);
    }
  }
  EXPECT_EQ(s.bots(), 3);
}

TEST(SvtSessionTest, AtMostTBotsOnAdversarialStreams) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng stream(seed);
    SvtSession s = SvtSession::Calibrated(500, 7, PrivacyBudget(1.0, 1e-3),
                                          Rng(DeriveSeed(seed, 1)));
    std::int64_t bots = 0;
    for (int i = 0; i < 500 && !s.halted(); ++i) {
      const auto ones = static_cast<std::int64_t>(stream.UniformInt(401));
      bots += s.Answer(VoteCount(ones, 400)).is_bot();
    }
    EXPECT_LE(bots, 7);
  }
}

TEST(SvtSessionTest, ReportIndependentOfAnswers) {
  const PrivacyBudget budget(1.0, 1e-5);
  SvtSession a = SvtSession::Calibrated(1000, 20, budget, Rng(10));
  SvtSession b = SvtSession::Calibrated(1000, 20, budget, Rng(11));
  for (int i = 0; i < 10; ++i) a.Answer(VoteCount(100000, 100000));
  for (int i = 0; i < 1000; ++i) b.Answer(VoteCount(100000, 100000));
  EXPECT_EQ(a.Report().epsilon, b.Report().epsilon);
  EXPECT_EQ(a.Report().delta, b.Report().delta);
  EXPECT_NEAR(b.Report().epsilon, 1.0, 1e-9);
  EXPECT_EQ(b.Report().delta, 1e-5);
}

TEST(NoiselessSessionTest, MajorityAndReport) {
  NoiselessSession s;
  EXPECT_EQ(s.Report().epsilon, 0.0);
  EXPECT_EQ(s.Answer(VoteCount(2, 4)).label(), 1);
  EXPECT_EQ(s.Answer(VoteCount(1, 4)).label(), 0);
  EXPECT_TRUE(std::isinf(s.Report().epsilon));
}

TEST(SparseVectorTest, HighQueriesRunToCompletion) {
  Rng rng(12);
  const PrivacyBudget budget(1.0, 1e-5);
  const std::vector<double> q(200, 1e6);
  const auto out = SparseVector(q, 3, 10.0, budget, rng);
  ASSERT_EQ(out.size(), 200u);
  for (SvtOutcome o : out) EXPECT_EQ(o, SvtOutcome::kAbove);
}

TEST(SparseVectorTest, LowQueriesHaltAfterT) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::vector<double> q(200, -1e6);
    const auto out = SparseVector(q, 5, 0.0, PrivacyBudget(1.0, 1e-5), rng);
    ASSERT_EQ(out.size(), 5u);
    for (SvtOutcome o : out) EXPECT_EQ(o, SvtOutcome::kBelow);
  }
}

TEST(SparseVectorTest, Empty) {
  Rng rng(13);
  EXPECT_TRUE(SparseVector({}, 5, 0.0, PrivacyBudget(1.0, 1e-5), rng).empty());
}

TEST(StabilityReleaseTest, ZeroDistanceRarelyReleases) {
  const double eps = 1.0, gamma = std::log(1e6) / eps;
  // Analytic release probability P[Lap(1) > gamma] = exp(-gamma) / 2.
  EXPECT_NEAR(1.0 - oracle::LaplaceCdf(gamma, 1.0), 0.5e-6, 1e-12);
  Rng rng(14);
  int released = 0;
  for (int i = 0; i < 1000000; ++i) {
    released += StabilityRelease(7, 0, gamma, eps, rng).has_value();
  }
  // Poisson mean 0.5; 6 or more has probability below 2e-5.
  EXPECT_LE(released, 5);
}

TEST(StabilityReleaseTest, LargeDistanceReleases) {
  Rng rng(15);
  int released = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto v = StabilityRelease(7, 100, 10.0, 1.0, rng);
    if (v) {
      EXPECT_EQ(*v, 7);
      ++released;
    }
  }
  EXPECT_GT(released, 9990);
  EXPECT_FALSE(StabilityRelease(7, 100, INFINITY, 1.0, rng).has_value());
}

}  // namespace
}  // namespace pate
