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

#ifndef PATE_ESTIMATORS_H_
#define PATE_ESTIMATORS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pate/data.h"
#include "pate/finite_class.h"
#include "pate/learners.h"
#include "pate/rng.h"
#include "pate/synthdata.h"

namespace pate {

// A population of teachers: each draw trains one teacher on a fresh i.i.d.
// sample and reports its predictions at a fixed set of probe points.
class TeacherModel {
 public:
  virtual ~TeacherModel() = default;

  virtual std::size_t probe_count() const = 0;

  // Writes one fresh teacher's 0/1 predictions at every probe point.
  // Must depend only on `rng`, so reps can run concurrently.
  virtual void SampleTeacher(Rng& rng, std::span<std::uint8_t> out) const = 0;
};

using Predictor = std::function<int(const Example&)>;
// Fits a predictor on a labeled sample.
using TeacherTrainer = std::function<Predictor(const Dataset&, Rng&)>;

// Teachers trained on `n_per_teacher` draws from `generator`.
class SampledTeacherModel final : public TeacherModel {
 public:
  SampledTeacherModel(const DataGenerator& generator,
                      std::size_t n_per_teacher, Dataset probes,
                      TeacherTrainer trainer);

  std::size_t probe_count() const override { return probes_.size(); }
  const Dataset& probes() const { return probes_; }
  void SampleTeacher(Rng& rng, std::span<std::uint8_t> out) const override;

 private:
  const DataGenerator& generator_;
  std::size_t n_per_teacher_;
  Dataset probes_;
  TeacherTrainer trainer_;
};

// Teachers that are independently correct at each probe with probability
// 1/2 + xi, with no training.
class SimulatedTeacherModel final : public TeacherModel {
 public:
  SimulatedTeacherModel(const VotingWinsGenerator& generator,
                        std::vector<std::size_t> probe_ids);

  std::size_t probe_count() const override { return probe_ids_.size(); }
  void SampleTeacher(Rng& rng, std::span<std::uint8_t> out) const override;

 private:
  const VotingWinsGenerator& generator_;
  std::vector<std::size_t> probe_ids_;
};

TeacherTrainer LinearErmTrainer(const TrainerConfig& config);
TeacherTrainer FiniteErmTrainer(const FiniteClass& h_class, TieBreak tie_break);
TeacherTrainer ThresholdErmTrainer(double lo = 0.0, double hi = 1.0);

// Estimated P[h_1(x) = 1] at every probe over `reps` fresh teachers.
std::vector<double> TeacherMeans(const TeacherModel& model, std::size_t reps,
                                 Rng& rng);

struct InfiniteEnsembleEstimate {
  // 1(mean >= 1/2): the infinite-teacher majority.
  std::vector<int> labels;
  std::vector<double> means;
};

InfiniteEnsembleEstimate EstimateInfiniteEnsemble(const TeacherModel& model,
                                                  std::size_t reps, Rng& rng);

// |mean - 1/2| per probe, the expected margin of a single teacher.
std::vector<double> EstimateExpectedMargin(const TeacherModel& model,
                                           std::size_t reps, Rng& rng);

// Fraction of probes whose estimated expected margin is at most xi: the
// mass on which the (nu, xi) high-margin condition fails.
double EstimateHighMarginNu(const TeacherModel& model, double xi,
                            std::size_t reps, Rng& rng);
double HighMarginNu(std::span<const double> margins, double xi);

struct MarginRecord {
  std::size_t probe_id;
  // |E[h(x)] - 1/2|
  double delta_hat;
  // |E[1(h(x) != h*(x))] - 1/2|, from an independent batch of teachers.
  double delta_hstar;
};

std::vector<MarginRecord> MarginDistributionReport(
    const TeacherModel& model, std::span<const int> h_star_labels,
    std::size_t reps, Rng& rng);

// Counts of delta_hat values in `bins` equal-width bins over [0, 1/2].
std::vector<std::size_t> MarginHistogram(std::span<const MarginRecord> records,
                                         std::size_t bins);

// Error of the K-teacher majority (ties to 1) when each teacher is exact ERM
// over `h_class` on `n_per_teacher` fresh draws, averaged over `reps`
// independent ensembles. The error of each ensemble is exact under the
// generator's distribution.
MonteCarloEstimate FiniteEnsembleError(const FiniteDomainGenerator& generator,
                                       const FiniteClass& h_class,
                                       std::int64_t k, std::size_t n_per_teacher,
                                       std::size_t reps, TieBreak tie_break,
                                       Rng& rng);

double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

}  // namespace pate

#endif  // PATE_ESTIMATORS_H_
