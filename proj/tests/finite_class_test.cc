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

#include "pate/finite_class.h"

#include <cstdint>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "pate/errors.h"

namespace pate {
namespace {

Dataset IdSample(const std::vector<std::pair<int, int>>& points) {
  Dataset d(1);
  for (auto [id, y] : points) d.Add(ScalarExample(id, y));
  return d;
}

TEST(FiniteHypothesisClassTest, RejectsMalformedTables) {
  EXPECT_THROW(FiniteHypothesisClass(std::vector<std::vector<int>>{}), ParameterError);
  EXPECT_THROW(FiniteHypothesisClass(std::vector<std::vector<int>>{std::vector<int>{}}), ParameterError);
  EXPECT_THROW(FiniteHypothesisClass({{0, 1}, {1}}), ParameterError);
  EXPECT_THROW(FiniteHypothesisClass({{0, 2}}), ParameterError);
}

TEST(FiniteHypothesisClassTest, PredictsFromTable) {
  const FiniteHypothesisClass h({{1, 0, 1}, {0, 0, 1}});
  EXPECT_EQ(h.Predict(0, ScalarExample(0)), 1);
  EXPECT_EQ(h.Predict(1, ScalarExample(0)), 0);
  EXPECT_EQ(h.Predict(1, ScalarExample(2)), 1);
  EXPECT_THROW(h.Predict(0, ScalarExample(3)), ParameterError);
  EXPECT_THROW(h.Predict(0, ScalarExample(-1)), ParameterError);
}

// Brute force over all 2^4 tables on a 4-point domain.
TEST(ExhaustiveErmTest, MatchesBruteForceOverAllTables) {
  std::vector<std::vector<int>> tables;
  for (int code = 0; code < 16; ++code) {
    tables.push_back({code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1});
  }
  const FiniteHypothesisClass h(tables);
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Dataset s(1);
    const int n = 1 + static_cast<int>(rng.UniformInt(12));
    for (int i = 0; i < n; ++i) {
      s.Add(ScalarExample(static_cast<double>(rng.UniformInt(4)),
                          rng.Bernoulli(0.5) ? 1 : 0));
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = 0; k < tables.size(); ++k) {
      std::int64_t m = 0;
      for (const Example& x : s) {
        m += tables[k][static_cast<std::size_t>(ScalarValue(x))] != *x.label;
      }
      best = std::min(best, m);
    }
    const auto counts = MistakeCounts(h, s);
    const std::size_t pick = ExhaustiveErm(h, s, TieBreak::kLowestIndex, rng);
    EXPECT_EQ(counts[pick], best);
    for (std::size_t k = 0; k < pick; ++k) EXPECT_GT(counts[k], best);
  }
}

TEST(ExhaustiveErmTest, RandomTieBreakCoversArgminSet) {
  const FiniteHypothesisClass h({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
  // One mistake each for members 2 and 3; members 0 and 1 also make one.
  const Dataset s = IdSample({{0, 1}, {1, 1}, {0, 0}, {1, 0}});
  std::vector<int> hits(4, 0);
  Rng rng(11);
  for (int i = 0; i < 400; ++i) {
    ++hits[ExhaustiveErm(h, s, TieBreak::kRandomOrder, rng)];
  }
  for (int c : hits) EXPECT_GT(c, 50);
  EXPECT_EQ(ExhaustiveErm(h, s, TieBreak::kLowestIndex, rng), 0u);
}

TEST(ExhaustiveErmTest, RejectsUnlabeledSamples) {
  const FiniteHypothesisClass h({{0, 1}});
  Dataset s(1);
  s.Add(ScalarExample(0));
  Rng rng(1);
  EXPECT_THROW(ExhaustiveErm(h, s, TieBreak::kLowestIndex, rng), ParameterError);
}

TEST(ThresholdGridTest, EndpointsAndPredictions) {
  const ThresholdGrid g(4);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.threshold(0), 0.0);
  EXPECT_DOUBLE_EQ(g.threshold(2), 0.5);
  EXPECT_DOUBLE_EQ(g.threshold(4), 1.0);
  EXPECT_EQ(g.Predict(2, ScalarExample(0.5)), 0);
  EXPECT_EQ(g.Predict(2, ScalarExample(0.51)), 1);
  EXPECT_THROW(ThresholdGrid(0), ParameterError);
  EXPECT_THROW(ThresholdGrid(3, 1.0, 1.0), ParameterError);
}

std::int64_t ThresholdMistakes(const Dataset& d, double t) {
  std::int64_t m = 0;
  for (const Example& x : d) m += (ScalarValue(x) > t ? 1 : 0) != *x.label;
  return m;
}

// Every candidate threshold lies in some gap; checking each sample value and
// the two ends enumerates all achievable labelings.
TEST(FitThresholdTest, OptimalAgainstCandidateEnumeration) {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    Dataset d(1);
    const int n = 1 + static_cast<int>(rng.UniformInt(25));
    for (int i = 0; i < n; ++i) {
      // Coarse values force ties.
      const double v = static_cast<double>(rng.UniformInt(10)) / 10.0 + 0.05;
      d.Add(ScalarExample(v, rng.Bernoulli(v) ? 1 : 0));
    }
    std::int64_t best = ThresholdMistakes(d, -1.0);
    for (const Example& x : d) best = std::min(best, ThresholdMistakes(d, ScalarValue(x)));
    const double t = FitThreshold(d);
    EXPECT_EQ(ThresholdMistakes(d, t), best) << "trial " << trial;
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
  }
}

TEST(FitThresholdTest, SeparableSampleSplitsTheGap) {
  const Dataset d = [] {
    Dataset s(1);
    s.Add(ScalarExample(0.2, 0));
    s.Add(ScalarExample(0.4, 0));
    s.Add(ScalarExample(0.6, 1));
    return s;
  }();
  EXPECT_DOUBLE_EQ(FitThreshold(d), 0.5);
  EXPECT_THROW(FitThreshold(Dataset(1)), ParameterError);
}

}  // namespace
}  // namespace pate
