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

#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "pate/errors.h"
#include "pate/libsvm.h"

namespace pate {
namespace {

using Json = nlohmann::json;

bool IsGeneratorName(const std::string& name) {
  try {
    ParseGeneratorKind(name);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

BotPolicy ParseBotPolicy(const std::string& name) {
  if (name == "zero") return BotPolicy::kZero;
  if (name == "coin-flip") return BotPolicy::kCoinFlip;
  throw ConfigError("unknown bot_policy '" + name + "' (zero or coin-flip)");
}

template <typename T>
T Get(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::int64_t RoundHalfUp(double x) {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

}  // namespace

Method ParseMethod(const std::string& name) {
  if (name == "psq-gaussian" || name == "psq") return Method::kPsqGaussian;
  if (name == "psq-svt") return Method::kPsqSvt;
  if (name == "asq") return Method::kAsq;
  if (name == "psq-np") return Method::kPsqNoPrivacy;
  if (name == "asq-np") return Method::kAsqNoPrivacy;
  throw ConfigError("unknown method '" + name +
                    "' (psq-gaussian, psq-svt, asq, psq-np, asq-np)");
}

std::string MethodName(Method method) {
  switch (method) {
    case Method::kPsqGaussian: return "psq-gaussian";
    case Method::kPsqSvt: return "psq-svt";
    case Method::kAsq: return "asq";
    case Method::kPsqNoPrivacy: return "psq-np";
    case Method::kAsqNoPrivacy: return "asq-np";
  }
  return "unknown";
}

bool IsPrivate(Method method) {
  return method != Method::kPsqNoPrivacy && method != Method::kAsqNoPrivacy;
}

void ExperimentConfig::Validate() const {
  if (dataset.empty()) throw ConfigError("dataset is required");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const SplitFractions& f = fractions;
  if (!(f.teacher > 0.0 && f.student > 0.0 && f.test > 0.0)) {
    throw ConfigError("split fractions must all be positive");
  }
  if (std::fabs(f.teacher + f.student + f.test - 1.0) > 1e-9) {
    throw ConfigError("split fractions must sum to 1");
  }
  if (IsPrivate(method) && !(epsilon > 0.0)) {
    throw ConfigError("epsilon must be positive");
  }
  if (delta && !(*delta > 0.0 && *delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  if (k && *k < 1) throw ConfigError("k must be >= 1");
  if (!(per_teacher > 0.0)) throw ConfigError("per_teacher must be positive");
  if (!(query_fraction > 0.0 && query_fraction <= 1.0)) {
    throw ConfigError("query_fraction must lie in (0, 1]");
  }
  if (svt_cutoff && *svt_cutoff < 1) throw ConfigError("svt_cutoff must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
}

void ApplyJsonConfig(const std::string& json_text, ExperimentConfig& c) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : root.items()) {
    if (key == "dataset") {
      c.dataset = Get<std::string>(v, key);
    } else if (key == "method") {
      c.method = ParseMethod(Get<std::string>(v, key));
    } else if (key == "epsilon") {
      c.epsilon = Get<double>(v, key);
    } else if (key == "delta") {
      c.delta = Get<double>(v, key);
    } else if (key == "trials") {
      c.trials = Get<std::int64_t>(v, key);
    } else if (key == "seed") {
      c.seed = Get<std::uint64_t>(v, key);
    } else if (key == "fractions") {
      const auto f = Get<std::vector<double>>(v, key);
      if (f.size() != 3) throw ConfigError("fractions needs three values");
      c.fractions = {f[0], f[1], f[2]};
    } else if (key == "k") {
      c.k = Get<std::int64_t>(v, key);
    } else if (key == "per_teacher") {
      c.per_teacher = Get<double>(v, key);
    } else if (key == "query_fraction") {
      c.query_fraction = Get<double>(v, key);
    } else if (key == "svt_cutoff") {
      c.svt_cutoff = Get<std::int64_t>(v, key);
    } else if (key == "beta") {
      c.beta = Get<double>(v, key);
    } else if (key == "bot_policy") {
      c.bot_policy = ParseBotPolicy(Get<std::string>(v, key));
    } else if (key == "gamma") {
      c.gamma = Get<double>(v, key);
    } else if (key == "max_iterations") {
      c.trainer.max_iterations = Get<int>(v, key);
    } else if (key == "l2") {
      c.trainer.l2 = Get<double>(v, key);
    } else if (key == "timing") {
      c.timing = Get<bool>(v, key);
    } else if (key == "generator_size") {
      c.generator_size = Get<std::size_t>(v, key);
    } else if (key == "dimension") {
      c.generator.dimension = Get<std::size_t>(v, key);
    } else if (key == "flip") {
      c.generator.flip = Get<double>(v, key);
    } else if (key == "tau") {
      c.generator.tau = Get<double>(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

SplitData SplitProtocol(const Dataset& data, const SplitFractions& fractions,
                        Rng& rng) {
  const std::size_t n = data.size();
  const auto teacher = static_cast<std::size_t>(
      std::floor(fractions.teacher * static_cast<double>(n)));
  const auto student = static_cast<std::size_t>(
      std::ceil(fractions.student * static_cast<double>(n)));
  if (teacher == 0 || student == 0 || teacher + student >= n) {
    throw ConfigError("split leaves an empty teacher, student or test set");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Shuffle(std::span<std::size_t>(order), rng);
  const std::span<const std::size_t> all(order);

  SplitData out;
  out.teacher = data.Select(all.subspan(0, teacher));
  const Dataset student_set = data.Select(all.subspan(teacher, student));
  out.test = data.Select(all.subspan(teacher + student));
  for (const Example& x : student_set) out.student_labels.push_back(x.label.value_or(0));
  out.student = student_set.WithoutLabels();
  return out;
}

Dataset LoadDataset(const ExperimentConfig& config) {
  if (!IsGeneratorName(config.dataset)) return ParseLibsvmFiles(config.dataset);
  GeneratorSpec spec = config.generator;
  spec.kind = ParseGeneratorKind(config.dataset);
  spec.seed = config.seed;
  if (spec.kind == GeneratorKind::kMassart && !(spec.flip > 0.0)) {
    throw ConfigError("massart needs flip > 0");
  }
  const auto generator = MakeGenerator(spec);
  Rng rng(DeriveSeed(config.seed, std::numeric_limits<std::uint64_t>::max()));
  return generator->Sample(config.generator_size, rng);
}

std::string DatasetLabel(const std::string& dataset) {
  if (IsGeneratorName(dataset)) return dataset;
  const std::string first = dataset.substr(0, dataset.find(','));
  return std::filesystem::path(first).stem().string();
}

TrialRecord RunTrial(const ExperimentConfig& config, const Dataset& data,
                     std::int64_t trial) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = DeriveSeed(config.seed, static_cast<std::uint64_t>(trial));
  Rng rng(seed);
  Rng split_rng = rng.Split(0);
  const SplitData split = SplitProtocol(data, config.fractions, split_rng);
  Rng pipeline_rng = rng.Split(1);

  const double delta = config.delta.value_or(1.0 / static_cast<double>(split.teacher.size()));
  const std::int64_t k = config.k.value_or(static_cast<std::int64_t>(
      std::ceil(static_cast<double>(split.teacher.size()) / config.per_teacher)));
  const double epsilon =
      IsPrivate(config.method) ? config.epsilon : std::numeric_limits<double>::infinity();
  const PrivacyBudget budget(IsPrivate(config.method) ? config.epsilon : 1.0, delta);

  PipelineReport report;
  switch (config.method) {
    case Method::kPsqGaussian:
    case Method::kPsqSvt:
    case Method::kPsqNoPrivacy: {
      PsqConfig psq;
      psq.k = k;
      psq.budget = budget;
      psq.bot_policy = config.bot_policy;
      psq.trainer = config.trainer;
      psq.mechanism = config.method == Method::kPsqGaussian ? Mechanism::kGaussian
                      : config.method == Method::kPsqSvt    ? Mechanism::kSvt
                                                            : Mechanism::kNone;
      if (psq.mechanism == Mechanism::kSvt) {
        if (config.svt_cutoff) {
          psq.cutoff = *config.svt_cutoff;
        } else {
          Rng err_rng = rng.Split(2);
          const double err =
              EstimateTeacherError(split.teacher, k, config.trainer, err_rng);
          psq.cutoff = ComputeSvtParams(static_cast<std::int64_t>(split.student.size()),
                                        err, config.beta, budget)
                           .cutoff;
        }
      }
      report = PatePsq(split.teacher, split.student, split.test, psq, pipeline_rng)
                   .report;
      break;
    }
    case Method::kAsq:
    case Method::kAsqNoPrivacy: {
      AsqConfig asq;
      asq.k = k;
      asq.budget = budget;
      asq.gamma = config.gamma;
      asq.trainer = config.trainer;
      asq.private_labels = config.method == Method::kAsq;
      asq.query_budget = std::max<std::int64_t>(
          1, RoundHalfUp(config.query_fraction * static_cast<double>(split.student.size())));
      report = PateAsq(split.teacher, split.student, split.test, asq, pipeline_rng)
                   .report;
      break;
    }
  }

  TrialRecord r;
  r.dataset = DatasetLabel(config.dataset);
  r.method = MethodName(config.method);
  r.epsilon = epsilon;
  r.delta = delta;
  r.trial = trial;
  r.seed = seed;
  r.queries = report.queries;
  r.bots = report.bots;
  r.eps_ex_post = report.eps_ex_post;
  r.accuracy = report.accuracy;
  if (config.timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  }
  return r;
}

ExperimentResult RunExperiment(const ExperimentConfig& config, const Dataset& data) {
  config.Validate();
  if (!data.AllLabeled()) throw ConfigError("dataset must be fully labeled");
  ExperimentResult result;
  result.trials.resize(static_cast<std::size_t>(config.trials));
  std::vector<std::exception_ptr> errors(result.trials.size());
  const auto n = static_cast<std::ptrdiff_t>(config.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    try {
      result.trials[idx] = RunTrial(config, data, t);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (std::size_t t = 0; t < errors.size(); ++t) {
    if (!errors[t]) continue;
    const std::uint64_t seed = DeriveSeed(config.seed, t);
    try {
      std::rethrow_exception(errors[t]);
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(t) + " (seed " +
                               std::to_string(seed) + ") failed: " + e.what());
    }
  }
  result.summary = Summarize(result.trials);
  return result;
}

}  // namespace pate
