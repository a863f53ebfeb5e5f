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

// Command-line front end: calibration, PSQ/ASQ experiments, synthetic rate
// sweeps, margin reports and the voting fixtures.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pate/aggregation.h"
#include "pate/dp_core.h"
#include "pate/errors.h"
#include "pate/estimators.h"
#include "pate/experiment.h"
#include "pate/finite_class.h"
#include "pate/pipelines.h"
#include "pate/rates.h"
#include "pate/report_io.h"
#include "pate/synthdata.h"

namespace {

using namespace pate;

// Writes `text` to `path`, or stdout for "" and "-".
void WriteText(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WarnIfBeyondRange(double epsilon, double delta) {
  if (PrivacyBudget(epsilon, delta).BeyondAnalyzedRange()) {
    std::cerr << "warning: epsilon " << FormatDouble(epsilon)
              << " exceeds log(1/delta) = " << FormatDouble(std::log(1.0 / delta))
              << "; utility guarantees do not cover this budget\n";
  }
}

struct ExperimentFlags {
  std::string dataset;
  std::string method;
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t k = 0;
  std::int64_t svt_cutoff = 0;
  double flip = 0.0;
  double tau = 1.0;
  std::size_t size = 0;
  std::string config;
  std::string out;
  std::string format = "csv";
  bool timing = false;
};

void AddExperimentFlags(CLI::App* cmd, ExperimentFlags& f, bool psq) {
  cmd->add_option("--dataset", f.dataset,
                  "LIBSVM file(s), comma separated, or a generator name");
  cmd->add_option("--method", f.method,
                  psq ? "gaussian, svt or none" : "private or none");
  cmd->add_option("--epsilon", f.epsilon, "privacy budget epsilon");
  cmd->add_option("--delta", f.delta, "privacy budget delta (default 1/teacher size)");
  cmd->add_option("--trials", f.trials, "independent random splits (default 30)");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--k", f.k, "number of teachers (default ceil(teachers/100))");
  if (psq) cmd->add_option("--svt-cutoff", f.svt_cutoff, "SVT cutoff T");
  cmd->add_option("--flip", f.flip, "label noise for the massart generator");
  cmd->add_option("--tau", f.tau, "TNC exponent for the tnc generator");
  cmd->add_option("--size", f.size, "points sampled from a generator");
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "csv or json");
  cmd->add_flag("--timing", f.timing, "record wall time per trial");
}

int RunExperimentCommand(CLI::App* cmd, const ExperimentFlags& f, bool psq) {
  ExperimentConfig config;
  config.method = psq ? Method::kPsqGaussian : Method::kAsq;
  if (!f.config.empty()) ApplyJsonConfig(ReadFile(f.config), config);
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--dataset")) config.dataset = f.dataset;
  if (given("--method")) {
    if (psq) {
      if (f.method == "gaussian") config.method = Method::kPsqGaussian;
      else if (f.method == "svt") config.method = Method::kPsqSvt;
      else if (f.method == "none") config.method = Method::kPsqNoPrivacy;
      else throw ConfigError("psq --method must be gaussian, svt or none");
    } else {
      if (f.method == "private") config.method = Method::kAsq;
      else if (f.method == "none") config.method = Method::kAsqNoPrivacy;
      else throw ConfigError("asq --method must be private or none");
    }
  }
  if (given("--epsilon")) config.epsilon = f.epsilon;
  if (given("--delta")) config.delta = f.delta;
  if (given("--trials")) config.trials = f.trials;
  if (given("--seed")) config.seed = f.seed;
  if (given("--k")) config.k = f.k;
  if (psq && given("--svt-cutoff")) config.svt_cutoff = f.svt_cutoff;
  if (given("--flip")) config.generator.flip = f.flip;
  if (given("--tau")) config.generator.tau = f.tau;
  if (given("--size")) config.generator_size = f.size;
  if (given("--timing")) config.timing = f.timing;
  if (psq && (config.method == Method::kAsq || config.method == Method::kAsqNoPrivacy)) {
    throw ConfigError("config selects an ASQ method; use the asq command");
  }
  if (!psq && config.method != Method::kAsq && config.method != Method::kAsqNoPrivacy) {
    throw ConfigError("config selects a PSQ method; use the psq command");
  }
  const ReportFormat format = ParseReportFormat(f.format);
  config.Validate();

  const Dataset data = LoadDataset(config);
  if (IsPrivate(config.method)) {
    const double teacher_size =
        std::floor(config.fractions.teacher * static_cast<double>(data.size()));
    WarnIfBeyondRange(config.epsilon,
                      config.delta.value_or(1.0 / std::max(teacher_size, 1.0)));
  }
  const ExperimentResult result = RunExperiment(config, data);
  EmitReport(result.trials, format, f.out);
  WriteSummaryCsv(result.summary, std::cerr);
  return 0;
}

int Calibrate(double epsilon, double delta, std::int64_t queries,
              std::int64_t cutoff, std::int64_t n, const std::string& out) {
  const PrivacyBudget budget(epsilon, delta);
  WarnIfBeyondRange(epsilon, delta);
  const double sigma = CalibrateGaussianSigma(queries, budget);
  const double rho = GaussianCompositionRho(queries, sigma);
  const double lambda = CalibrateSvtLambda(cutoff, budget);
  const double w = SvtThresholdW(lambda, queries, cutoff, delta);
  std::ostringstream text;
  text << "quantity,value\n"
       << "epsilon," << FormatDouble(epsilon) << '\n'
       << "delta," << FormatDouble(delta) << '\n'
       << "queries," << queries << '\n'
       << "gaussian_sigma," << FormatDouble(sigma) << '\n'
       << "gaussian_rho," << FormatDouble(rho) << '\n'
       << "gaussian_epsilon," << FormatDouble(ZcdpToDp(rho, delta)) << '\n'
       << "gaussian_k," << ComputeKForGaussian(queries, budget, n) << '\n'
       << "svt_cutoff," << cutoff << '\n'
       << "svt_lambda," << FormatDouble(lambda) << '\n'
       << "svt_w," << FormatDouble(w) << '\n'
       << "svt_epsilon,"
       << FormatDouble(ZcdpToDp(SvtCompositionRho(cutoff, lambda), delta / 2.0))
       << '\n';
  WriteText(text.str(), out);
  return 0;
}

std::vector<std::size_t> ParseSizes(const std::string& list) {
  std::vector<std::size_t> sizes;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      sizes.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("bad sample size '" + item + "'");
    }
  }
  if (sizes.empty()) throw ConfigError("no sample sizes given");
  return sizes;
}

struct SimulateFlags {
  std::string generator = "tnc";
  double tau = 1.0;
  double flip = 0.1;
  std::size_t dimension = 5;
  std::string sizes = "128,256,512,1024,2048,4096,8192";
  std::size_t reps = 50;
  std::uint64_t seed = 0;
  std::string out;
};

int Simulate(const SimulateFlags& f) {
  const std::vector<std::size_t> sizes = ParseSizes(f.sizes);
  const GeneratorKind kind = ParseGeneratorKind(f.generator);
  std::vector<RatePoint> points;
  if (kind == GeneratorKind::kTnc) {
    points = TncRateSweep(f.tau, sizes, f.reps, f.seed);
  } else if (kind == GeneratorKind::kRealizable || kind == GeneratorKind::kMassart) {
    const LinearGenerator generator(f.dimension,
                                    kind == GeneratorKind::kMassart ? f.flip : 0.0,
                                    f.seed);
    points = LinearRateSweep(generator, sizes, f.reps, f.seed);
  } else {
    throw ConfigError("simulate supports tnc, realizable and massart");
  }
  std::ostringstream text;
  text << "generator,n,reps,mean_excess_risk,standard_error\n";
  for (const RatePoint& p : points) {
    text << f.generator << ',' << p.n << ',' << f.reps << ','
         << FormatDouble(p.mean_excess_risk) << ',' << FormatDouble(p.standard_error)
         << '\n';
  }
  WriteText(text.str(), f.out);
  std::cerr << "log-log slope: " << FormatDouble(LogLogSlope(points)) << '\n';
  return 0;
}

struct MarginFlags {
  std::string generator = "realizable";
  std::size_t n_per_teacher = 100;
  std::size_t probes = 200;
  std::size_t reps = 500;
  std::size_t bins = 10;
  std::size_t dimension = 5;
  double flip = 0.1;
  double tau = 1.0;
  double xi = 0.1;
  std::uint64_t seed = 0;
  std::string out;
};

int Margins(const MarginFlags& f) {
  GeneratorSpec spec;
  spec.kind = ParseGeneratorKind(f.generator);
  spec.dimension = f.dimension;
  spec.flip = spec.kind == GeneratorKind::kMassart ? f.flip : 0.0;
  spec.tau = f.tau;
  spec.xi = f.xi;
  spec.domain_size = f.probes;
  spec.seed = f.seed;
  Rng rng(f.seed);

  std::vector<MarginRecord> records;
  if (spec.kind == GeneratorKind::kVotingWins) {
    const VotingWinsGenerator generator = GenVotingWins(f.xi, f.probes, rng);
    std::vector<std::size_t> ids(f.probes);
    std::vector<int> labels(f.probes);
    for (std::size_t i = 0; i < f.probes; ++i) {
      ids[i] = i;
      labels[i] = generator.LabelAt(i);
    }
    const SimulatedTeacherModel model(generator, ids);
    records = MarginDistributionReport(model, labels, f.reps, rng);
  } else if (spec.kind == GeneratorKind::kVotingFails) {
    const VotingFailsFixture fixture = GenVotingFails();
    Dataset probes;
    std::vector<int> labels;
    for (std::size_t i = 0; i < fixture.generator.domain_size(); ++i) {
      probes.Add(ScalarExample(static_cast<double>(i)));
      labels.push_back(fixture.labels[i]);
    }
    const SampledTeacherModel model(
        fixture.generator, f.n_per_teacher, probes,
        FiniteErmTrainer(fixture.h_class, TieBreak::kRandomOrder));
    records = MarginDistributionReport(model, labels, f.reps, rng);
  } else {
    const std::unique_ptr<DataGenerator> generator = MakeGenerator(spec);
    const Dataset probes = generator->Sample(f.probes, rng).WithoutLabels();
    std::vector<int> labels;
    for (const Example& x : probes) labels.push_back(generator->BayesLabel(x));
    const TeacherTrainer trainer = spec.kind == GeneratorKind::kTnc
                                       ? ThresholdErmTrainer()
                                       : LinearErmTrainer(TrainerConfig{});
    const SampledTeacherModel model(*generator, f.n_per_teacher, probes, trainer);
    records = MarginDistributionReport(model, labels, f.reps, rng);
  }

  std::ostringstream text;
  WriteMarginsCsv(records, text);
  WriteText(text.str(), f.out);
  const std::vector<std::size_t> hist = MarginHistogram(records, f.bins);
  std::cerr << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < hist.size(); ++b) {
    const double width = 0.5 / static_cast<double>(hist.size());
    std::cerr << FormatDouble(width * static_cast<double>(b)) << ','
              << FormatDouble(width * static_cast<double>(b + 1)) << ',' << hist[b]
              << '\n';
  }
  return 0;
}

struct ExampleFlags {
  std::int64_t k = 999;
  std::size_t n_per_teacher = 100;
  std::size_t reps = 200;
  double xi = 0.1;
  std::size_t points = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int Examples(const ExampleFlags& f) {
  std::ostringstream text;
  text << "example,k,quantity,value\n";

  const VotingFailsFixture fixture = GenVotingFails();
  const std::size_t domain = fixture.generator.domain_size();
  double exact = 0.0;
  for (std::size_t id = 0; id < domain; ++id) {
    std::int64_t ones = 0;
    for (std::size_t h = 0; h < fixture.h_class.size(); ++h) {
      ones += fixture.h_class.PredictId(h, id);
    }
    const int vote = VoteCount(ones, static_cast<std::int64_t>(fixture.h_class.size()))
                         .MajorityLabel();
    exact += fixture.generator.probability(id) * (vote != fixture.labels[id]);
  }
  text << "voting-fails,3,exact_majority_error," << FormatDouble(exact) << '\n';
  for (std::size_t h = 0; h < fixture.h_class.size(); ++h) {
    double err = 0.0;
    for (std::size_t id = 0; id < domain; ++id) {
      err += fixture.generator.probability(id) *
             (fixture.h_class.PredictId(h, id) != fixture.labels[id]);
    }
    text << "voting-fails,1,member_" << h + 1 << "_error," << FormatDouble(err) << '\n';
  }
  Rng fails_rng(DeriveSeed(f.seed, 1));
  const MonteCarloEstimate mc =
      FiniteEnsembleError(fixture.generator, fixture.h_class, f.k, f.n_per_teacher,
                          f.reps, TieBreak::kRandomOrder, fails_rng);
  text << "voting-fails," << f.k << ",aggregate_error," << FormatDouble(mc.mean) << '\n'
       << "voting-fails," << f.k << ",aggregate_error_se,"
       << FormatDouble(mc.standard_error) << '\n';

  Rng wins_rng(DeriveSeed(f.seed, 2));
  const VotingWinsGenerator wins = GenVotingWins(f.xi, 1000, wins_rng);
  for (std::int64_t k : {50, 100, 200}) {
    const MonteCarloEstimate e = VotingWinsAggregateError(wins, k, f.points, wins_rng);
    const double bound = std::exp(-2.0 * static_cast<double>(k) * f.xi * f.xi);
    text << "voting-wins," << k << ",aggregate_error," << FormatDouble(e.mean) << '\n'
         << "voting-wins," << k << ",aggregate_error_se,"
         << FormatDouble(e.standard_error) << '\n'
         << "voting-wins," << k << ",hoeffding_bound," << FormatDouble(bound) << '\n';
  }
  WriteText(text.str(), f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PATE private learning experiments"};
  app.require_subcommand(1);

  double cal_eps = 1.0, cal_delta = 1e-5;
  std::int64_t cal_queries = 100, cal_cutoff = 20, cal_n = 10000;
  std::string cal_out;
  CLI::App* calibrate = app.add_subcommand("calibrate", "print sigma, lambda and K");
  calibrate->add_option("--epsilon", cal_eps, "privacy budget epsilon");
  calibrate->add_option("--delta", cal_delta, "privacy budget delta");
  calibrate->add_option("--queries", cal_queries, "number of queries ell");
  calibrate->add_option("--cutoff", cal_cutoff, "SVT cutoff T");
  calibrate->add_option("--n", cal_n, "private dataset size");
  calibrate->add_option("--out", cal_out, "output file (default stdout)");

  ExperimentFlags psq_flags, asq_flags;
  CLI::App* psq = app.add_subcommand("psq", "passive student (PATE-PSQ)");
  AddExperimentFlags(psq, psq_flags, true);
  CLI::App* asq = app.add_subcommand("asq", "active student (PATE-ASQ)");
  AddExperimentFlags(asq, asq_flags, false);

  SimulateFlags sim;
  CLI::App* simulate = app.add_subcommand("simulate", "ERM excess-risk sweeps");
  simulate->add_option("--generator", sim.generator, "tnc, realizable or massart");
  simulate->add_option("--tau", sim.tau, "TNC exponent");
  simulate->add_option("--flip", sim.flip, "massart label noise");
  simulate->add_option("--dimension", sim.dimension, "linear generator dimension");
  simulate->add_option("--sizes", sim.sizes, "comma-separated sample sizes");
  simulate->add_option("--reps", sim.reps, "repetitions per size");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--out", sim.out, "output file (default stdout)");

  MarginFlags mar;
  CLI::App* margins = app.add_subcommand("margins", "teacher margin distribution");
  margins->add_option("--generator", mar.generator, "generator name");
  margins->add_option("--n-per-teacher", mar.n_per_teacher, "samples per teacher");
  margins->add_option("--probes", mar.probes, "probe points");
  margins->add_option("--reps", mar.reps, "teachers per estimate");
  margins->add_option("--bins", mar.bins, "histogram bins");
  margins->add_option("--dimension", mar.dimension, "linear generator dimension");
  margins->add_option("--flip", mar.flip, "massart label noise");
  margins->add_option("--tau", mar.tau, "TNC exponent");
  margins->add_option("--xi", mar.xi, "voting-wins advantage");
  margins->add_option("--seed", mar.seed, "master seed");
  margins->add_option("--out", mar.out, "output file (default stdout)");

  ExampleFlags ex;
  CLI::App* examples = app.add_subcommand("examples", "voting fixtures");
  examples->add_option("--k", ex.k, "teachers for the voting-fails ensemble");
  examples->add_option("--n-per-teacher", ex.n_per_teacher, "samples per teacher");
  examples->add_option("--reps", ex.reps, "independent ensembles");
  examples->add_option("--xi", ex.xi, "voting-wins advantage");
  examples->add_option("--points", ex.points, "voting-wins Monte-Carlo points");
  examples->add_option("--seed", ex.seed, "master seed");
  examples->add_option("--out", ex.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (calibrate->parsed()) {
      return Calibrate(cal_eps, cal_delta, cal_queries, cal_cutoff, cal_n, cal_out);
    }
    if (psq->parsed()) return RunExperimentCommand(psq, psq_flags, true);
    if (asq->parsed()) return RunExperimentCommand(asq, asq_flags, false);
    if (simulate->parsed()) return Simulate(sim);
    if (margins->parsed()) return Margins(mar);
    if (examples->parsed()) return Examples(ex);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
