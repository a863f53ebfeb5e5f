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

#include "pate/estimators.h"

#include <cmath>
#include <utility>

#include "pate/errors.h"
#include "pate/kernels.h"

namespace pate {

SampledTeacherModel::SampledTeacherModel(const DataGenerator& generator,
                                         std::size_t n_per_teacher,
                                         Dataset probes, TeacherTrainer trainer)
    : generator_(generator),
      n_per_teacher_(n_per_teacher),
      probes_(std::move(probes)),
      trainer_(std::move(trainer)) {
  if (n_per_teacher_ == 0) throw ParameterError("teachers need >= 1 sample");
}

void SampledTeacherModel::SampleTeacher(Rng& rng,
                                        std::span<std::uint8_t> out) const {
  const Dataset sample = generator_.Sample(n_per_teacher_, rng);
  const Predictor h = trainer_(sample, rng);
  for (std::size_t i = 0; i < probes_.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(h(probes_[i]));
  }
}

SimulatedTeacherModel::SimulatedTeacherModel(
    const VotingWinsGenerator& generator, std::vector<std::size_t> probe_ids)
    : generator_(generator), probe_ids_(std::move(probe_ids)) {}

void SimulatedTeacherModel::SampleTeacher(Rng& rng,
                                          std::span<std::uint8_t> out) const {
  for (std::size_t i = 0; i < probe_ids_.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(
        generator_.SimulateTeacher(probe_ids_[i], rng));
  }
}

TeacherTrainer LinearErmTrainer(const TrainerConfig& config) {
  return [config](const Dataset& data, Rng&) -> Predictor {
    LinearHypothesis h = TrainErm(data, config);
    return [h = std::move(h)](const Example& x) { return Predict(h, x); };
  };
}

TeacherTrainer FiniteErmTrainer(const FiniteClass& h_class,
                                TieBreak tie_break) {
  return [&h_class, tie_break](const Dataset& data, Rng& rng) -> Predictor {
    const std::size_t k = ExhaustiveErm(h_class, data, tie_break, rng);
    return [&h_class, k](const Example& x) { return h_class.Predict(k, x); };
  };
}

TeacherTrainer ThresholdErmTrainer(double lo, double hi) {
  return [lo, hi](const Dataset& data, Rng&) -> Predictor {
    const double t = FitThreshold(data, lo, hi);
    return [t](const Example& x) { return ScalarValue(x) > t ? 1 : 0; };
  };
}

std::vector<double> TeacherMeans(const TeacherModel& model, std::size_t reps,
                                 Rng& rng) {
  if (reps == 0) throw ParameterError("reps must be >= 1");
  return kernels::parallel::TeacherMeans(model, reps, rng.NextU64());
}

InfiniteEnsembleEstimate EstimateInfiniteEnsemble(const TeacherModel& model,
                                                  std::size_t reps, Rng& rng) {
  InfiniteEnsembleEstimate out;
  out.means = TeacherMeans(model, reps, rng);
  out.labels.reserve(out.means.size());
  for (double m : out.means) out.labels.push_back(m >= 0.5 ? 1 : 0);
  return out;
}

std::vector<double> EstimateExpectedMargin(const TeacherModel& model,
                                           std::size_t reps, Rng& rng) {
  std::vector<double> margins = TeacherMeans(model, reps, rng);
  for (double& m : margins) m = std::fabs(m - 0.5);
  return margins;
}

double HighMarginNu(std::span<const double> margins, double xi) {
  if (margins.empty()) throw ParameterError("no probe points");
  std::size_t low = 0;
  for (double m : margins) low += m <= xi;
  return static_cast<double>(low) / static_cast<double>(margins.size());
}

double EstimateHighMarginNu(const TeacherModel& model, double xi,
                            std::size_t reps, Rng& rng) {
  if (!(xi > 0.0 && xi <= 0.5)) throw ParameterError("xi must lie in (0, 1/2]");
  const std::vector<double> margins = EstimateExpectedMargin(model, reps, rng);
  return HighMarginNu(margins, xi);
}

std::vector<MarginRecord> MarginDistributionReport(
    const TeacherModel& model, std::span<const int> h_star_labels,
    std::size_t reps, Rng& rng) {
  if (h_star_labels.size() != model.probe_count()) {
    throw ParameterError("need one h* label per probe");
  }
  const std::vector<double> agree = TeacherMeans(model, reps, rng);
  const std::vector<double> second = TeacherMeans(model, reps, rng);
  std::vector<MarginRecord> out;
  out.reserve(agree.size());
  for (std::size_t i = 0; i < agree.size(); ++i) {
    const double mismatch =
        h_star_labels[i] == 1 ? 1.0 - second[i] : second[i];
    out.push_back({i, std::fabs(agree[i] - 0.5), std::fabs(mismatch - 0.5)});
  }
  return out;
}

std::vector<std::size_t> MarginHistogram(std::span<const MarginRecord> records,
                                         std::size_t bins) {
  if (bins == 0) throw ParameterError("need at least one bin");
  std::vector<std::size_t> counts(bins, 0);
  for (const MarginRecord& r : records) {
    auto b = static_cast<std::size_t>(r.delta_hat / 0.5 *
                                      static_cast<double>(bins));
    counts[std::min(b, bins - 1)] += 1;
  }
  return counts;
}

MonteCarloEstimate FiniteEnsembleError(const FiniteDomainGenerator& generator,
                                       const FiniteClass& h_class,
                                       std::int64_t k, std::size_t n_per_teacher,
                                       std::size_t reps, TieBreak tie_break,
                                       Rng& rng) {
  if (k < 1 || n_per_teacher == 0 || reps == 0) {
    throw ParameterError("need k, n_per_teacher and reps >= 1");
  }
  const std::size_t domain = generator.domain_size();
  const std::uint64_t seed = rng.NextU64();
  std::vector<double> errors(reps);
  const auto n = static_cast<std::ptrdiff_t>(reps);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    Rng rep_rng(DeriveSeed(seed, static_cast<std::uint64_t>(r)));
    std::vector<std::int64_t> ones(domain, 0);
    for (std::int64_t t = 0; t < k; ++t) {
      const Dataset sample = generator.Sample(n_per_teacher, rep_rng);
      const std::size_t h = ExhaustiveErm(h_class, sample, tie_break, rep_rng);
      for (std::size_t id = 0; id < domain; ++id) {
        ones[id] += h_class.Predict(h, ScalarExample(static_cast<double>(id)));
      }
    }
    double err = 0.0;
    for (std::size_t id = 0; id < domain; ++id) {
      const VoteCount votes(ones[id], k);
      const double reg = generator.RegressionAt(id);
      err += generator.probability(id) *
             (votes.MajorityLabel() == 1 ? 1.0 - reg : reg);
    }
    errors[static_cast<std::size_t>(r)] = err;
  }
  double mean = 0.0;
  for (double e : errors) mean += e;
  mean /= static_cast<double>(reps);
  double ss = 0.0;
  for (double e : errors) ss += (e - mean) * (e - mean);
  const double se = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) /
                                         static_cast<double>(reps))
                             : 0.0;
  return {mean, se};
}

double PearsonCorrelation(std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ParameterError("correlation needs two equal series of length >= 2");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace pate
