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

#include "pate/experiment.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "pate/errors.h"
#include "pate/report_io.h"

namespace pate {
namespace {

// Each example carries its own id as the single feature value.
Dataset Indexed(std::size_t n) {
  Dataset d(1);
  for (std::size_t i = 0; i < n; ++i) d.Add(ScalarExample(static_cast<double>(i), static_cast<int>(i % 2)));
  return d;
}

TEST(SplitProtocolTest, TableSizes) {
  for (auto [n, t, s, e] : std::vector<std::array<std::size_t, 4>>{
           {8124, 6499, 163, 1462}, {48842, 39073, 977, 8792}, {72309, 57847, 1447, 13015}}) {
    Rng rng(1);
    const SplitData split = SplitProtocol(Indexed(n), SplitFractions{}, rng);
    EXPECT_EQ(split.teacher.size(), t);
    EXPECT_EQ(split.student.size(), s);
    EXPECT_EQ(split.test.size(), e);
  }
}

TEST(SplitProtocolTest, DisjointAndComplete) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 20 + rng.UniformInt(500);
    const SplitData split = SplitProtocol(Indexed(n), SplitFractions{0.6, 0.1, 0.3}, rng);
    std::set<double> seen;
    for (const Dataset* part : {&split.teacher, &split.student, &split.test}) {
      for (const Example& x : *part) EXPECT_TRUE(seen.insert(ScalarValue(x)).second);
    }
    EXPECT_EQ(seen.size(), n);
    for (const Example& x : split.student) EXPECT_FALSE(x.label.has_value());
    ASSERT_EQ(split.student_labels.size(), split.student.size());
    for (std::size_t i = 0; i < split.student.size(); ++i) {
      EXPECT_EQ(split.student_labels[i],
                static_cast<int>(ScalarValue(split.student[i])) % 2);
    }
  }
}

TEST(ExperimentConfigTest, DegenerateFractionsRejected) {
  ExperimentConfig c;
  c.dataset = "realizable";
  c.fractions = {1.0, 0.0, 0.0};
  EXPECT_THROW(c.Validate(), ConfigError);
  c.fractions = {0.5, 0.2, 0.2};
  EXPECT_THROW(c.Validate(), ConfigError);
  Rng rng(3);
  EXPECT_THROW(SplitProtocol(Indexed(2), SplitFractions{0.5, 0.2, 0.3}, rng), ConfigError);
}

TEST(ExperimentConfigTest, JsonOverrides) {
  ExperimentConfig c;
  ApplyJsonConfig(R"({"dataset": "massart", "method": "asq", "epsilon": 0.5,
                      "trials": 3, "seed": 9, "fractions": [0.7, 0.1, 0.2],
                      "flip": 0.1, "bot_policy": "coin-flip"})",
                  c);
  EXPECT_EQ(c.dataset, "massart");
  EXPECT_EQ(c.method, Method::kAsq);
  EXPECT_EQ(c.epsilon, 0.5);
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.fractions.student, 0.1);
  EXPECT_EQ(c.generator.flip, 0.1);
  EXPECT_EQ(c.bot_policy, BotPolicy::kCoinFlip);
  EXPECT_THROW(ApplyJsonConfig(R"({"epsilonn": 1})", c), ConfigError);
  EXPECT_THROW(ApplyJsonConfig("[1, 2]", c), ConfigError);
  EXPECT_THROW(ApplyJsonConfig("{", c), ConfigError);
  EXPECT_THROW(ParseMethod("psq-laplace"), ConfigError);
}

ExperimentConfig SmallConfig(Method method) {
  ExperimentConfig c;
  c.dataset = "realizable";
  c.method = method;
  c.trials = 4;
  c.seed = 123;
  c.generator.dimension = 3;
  c.generator_size = 3000;
  c.fractions = {0.8, 0.05, 0.15};
  c.epsilon = 1.0;
  return c;
}

TEST(RunExperimentTest, DeterministicAndWithinBudget) {
  for (Method m : {Method::kPsqGaussian, Method::kPsqSvt, Method::kAsq,
                   Method::kPsqNoPrivacy, Method::kAsqNoPrivacy}) {
    const ExperimentConfig c = SmallConfig(m);
    const Dataset data = LoadDataset(c);
    const ExperimentResult a = RunExperiment(c, data);
    const ExperimentResult b = RunExperiment(c, data);
    EXPECT_EQ(a.trials, b.trials) << MethodName(m);
    std::ostringstream ca, cb;
    WriteTrialsCsv(a.trials, ca);
    WriteTrialsCsv(b.trials, cb);
    EXPECT_EQ(ca.str(), cb.str());
    for (const TrialRecord& r : a.trials) {
      EXPECT_LE(r.eps_ex_post, r.epsilon) << MethodName(m);
      EXPECT_EQ(r.delta, 1.0 / 2400);
      EXPECT_EQ(r.wall_ms, 0.0);
      EXPECT_EQ(r.dataset, "realizable");
      EXPECT_EQ(IsPrivate(m), std::isfinite(r.epsilon));
    }
  }
}

TEST(RunExperimentTest, AsqBudgetIsThirtyPercentOfStudentPool) {
  ExperimentConfig c = SmallConfig(Method::kAsq);
  // Student pool = ceil(0.05 * 3000) = 150, so the budget is 45.
  const ExperimentResult r = RunExperiment(c, LoadDataset(c));
  for (const TrialRecord& t : r.trials) EXPECT_LE(t.queries, 45);
}

TEST(RunExperimentTest, SingleTrialSummary) {
  ExperimentConfig c = SmallConfig(Method::kPsqGaussian);
  c.trials = 1;
  const ExperimentResult r = RunExperiment(c, LoadDataset(c));
  EXPECT_EQ(r.summary.mean_accuracy, r.trials[0].accuracy);
  EXPECT_EQ(r.summary.accuracy_half_width, 0.0);
  EXPECT_EQ(r.summary.trials, 1);
}

TEST(RunExperimentTest, TrialsAreIndependentOfEachOther) {
  ExperimentConfig c = SmallConfig(Method::kPsqGaussian);
  const Dataset data = LoadDataset(c);
  const ExperimentResult all = RunExperiment(c, data);
  EXPECT_EQ(RunTrial(c, data, 2), all.trials[2]);
  EXPECT_NE(all.trials[0].seed, all.trials[1].seed);
}

TEST(RunExperimentTest, FailureNamesTheTrialSeed) {
  ExperimentConfig c = SmallConfig(Method::kPsqGaussian);
  const Dataset data = LoadDataset(c);
  c.k = 1000000;
  try {
    RunExperiment(c, data);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("seed"), std::string::npos);
  }
}

TEST(LoadDatasetTest, GeneratorsAndLabels) {
  ExperimentConfig c;
  c.dataset = "massart";
  EXPECT_THROW(LoadDataset(c), ConfigError);
  c.generator.flip = 0.2;
  c.generator_size = 50;
  EXPECT_EQ(LoadDataset(c).size(), 50u);
  EXPECT_EQ(DatasetLabel("/data/mushrooms.txt"), "mushrooms");
  EXPECT_EQ(DatasetLabel("a/a9a,a/a9a.t"), "a9a");
  EXPECT_EQ(DatasetLabel("tnc"), "tnc");
}

}  // namespace
}  // namespace pate
