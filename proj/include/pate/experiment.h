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

#ifndef PATE_EXPERIMENT_H_
#define PATE_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pate/data.h"
#include "pate/learners.h"
#include "pate/pipelines.h"
#include "pate/report_io.h"
#include "pate/rng.h"
#include "pate/synthdata.h"

namespace pate {

enum class Method { kPsqGaussian, kPsqSvt, kAsq, kPsqNoPrivacy, kAsqNoPrivacy };

// psq-gaussian, psq-svt, asq, psq-np, asq-np.
Method ParseMethod(const std::string& name);
std::string MethodName(Method method);
bool IsPrivate(Method method);

struct SplitFractions {
  double teacher = 0.8;
  double student = 0.02;
  double test = 0.18;
};

struct ExperimentConfig {
  // LIBSVM path(s), comma separated, or a generator name.
  std::string dataset;
  Method method = Method::kPsqGaussian;
  double epsilon = 1.0;
  // Defaults to 1 / n, n the teacher (private) set size.
  std::optional<double> delta;
  std::int64_t trials = 30;
  SplitFractions fractions;
  // Defaults to ceil(teacher size / per_teacher).
  std::optional<std::int64_t> k;
  double per_teacher = 100.0;
  // ASQ query budget as a fraction of the student pool.
  double query_fraction = 0.3;
  // SVT cutoff; defaults to the T formula with an estimated teacher error.
  std::optional<std::int64_t> svt_cutoff;
  double beta = 0.05;
  BotPolicy bot_policy = BotPolicy::kZero;
  double gamma = 0.05;
  TrainerConfig trainer;
  std::uint64_t seed = 0;
  // Record wall time per trial. Off by default so reports are byte-stable.
  bool timing = false;
  // Used when `dataset` names a generator.
  GeneratorSpec generator;
  std::size_t generator_size = 10000;

  // Throws ConfigError on invalid values.
  void Validate() const;
};

// Applies the keys of a flat JSON object on top of `config`. Unknown keys
// and mistyped values raise ConfigError.
void ApplyJsonConfig(const std::string& json_text, ExperimentConfig& config);

struct SplitData {
  Dataset teacher;
  Dataset student;  // labels stripped
  Dataset test;
  // True labels of `student`, kept aside and never shown to a pipeline.
  std::vector<int> student_labels;
};

// Random disjoint split with sizes floor(f_teacher n), ceil(f_student n)
// and the remainder for test.
SplitData SplitProtocol(const Dataset& data, const SplitFractions& fractions,
                        Rng& rng);

// Loads LIBSVM files, or samples `generator_size` points when the dataset
// names a generator.
Dataset LoadDataset(const ExperimentConfig& config);

// Short name used in reports: the generator name or the first file's stem.
std::string DatasetLabel(const std::string& dataset);

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  SummaryReport summary;
};

// Runs config.trials independent trials, in parallel. Trial t uses seed
// DeriveSeed(config.seed, t), so results do not depend on thread count.
ExperimentResult RunExperiment(const ExperimentConfig& config, const Dataset& data);

// One trial; exposed for tests.
TrialRecord RunTrial(const ExperimentConfig& config, const Dataset& data,
                     std::int64_t trial);

}  // namespace pate

#endif  // PATE_EXPERIMENT_H_
