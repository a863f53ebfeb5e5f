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

#include "pate/kernels.h"

#include <bit>
#include <stdexcept>

#include "pate/errors.h"
#include "pate/rng.h"

namespace pate::kernels {
namespace {

void CheckPigeonholeShape(int teachers, int points) {
  if (teachers < 1 || teachers > 5 || points < 1 || points > 6) {
    throw ParameterError("exhaustive pigeonhole needs 1 <= K <= 5, 1 <= m <= 6");
  }
}

// Bit-sliced per-column counters for up to seven rows.
struct Slices {
  std::uint32_t s0 = 0, s1 = 0, s2 = 0;

  Slices Plus(std::uint32_t row) const {
    Slices out;
    const std::uint32_t c0 = s0 & row;
    out.s0 = s0 ^ row;
    const std::uint32_t c1 = s1 & c0;
    out.s1 = s1 ^ c0;
    out.s2 = s2 ^ c1;
    return out;
  }

  // Columns whose count is at least t (1 <= t <= 7).
  std::uint32_t AtLeast(int t) const {
    std::uint32_t mask = 0;
    for (int v = t; v <= 7; ++v) {
      mask |= ((v & 1) ? s0 : ~s0) & ((v & 2) ? s1 : ~s1) & ((v & 4) ? s2 : ~s2);
    }
    return mask;
  }
};

// Enumerates rows depth..K-1 below a fixed prefix.
void EnumerateRows(const Slices& prefix, int max_row_mistakes, int depth,
                   int teachers, int points, int at_least,
                   PigeonholeTally& tally) {
  const std::uint32_t limit = 1u << points;
  const std::uint32_t columns = limit - 1;
  if (depth == teachers - 1) {
    for (std::uint32_t row = 0; row < limit; ++row) {
      const Slices s = prefix.Plus(row);
      const int b = std::max(max_row_mistakes, std::popcount(row));
      const int bad = std::popcount(s.AtLeast(at_least) & columns);
      tally.matrices += 1;
      tally.violations += bad > 3 * b;
    }
    return;
  }
  for (std::uint32_t row = 0; row < limit; ++row) {
    EnumerateRows(prefix.Plus(row),
                  std::max(max_row_mistakes, std::popcount(row)), depth + 1,
                  teachers, points, at_least, tally);
  }
}

}  // namespace

bool PigeonholeHolds(const std::vector<std::uint32_t>& rows, int points) {
  const int k = static_cast<int>(rows.size());
  int b = 0;
  for (std::uint32_t r : rows) b = std::max(b, std::popcount(r));
  int bad = 0;
  for (int i = 0; i < points; ++i) {
    int wrong = 0;
    for (std::uint32_t r : rows) wrong += (r >> i) & 1u;
    bad += 3 * wrong >= k;
  }
  return bad <= 3 * b;
}

namespace serial {

std::vector<LinearHypothesis> TrainTeachers(
    const Dataset& data, const std::vector<std::vector<std::size_t>>& parts,
    const TrainerConfig& config) {
  std::vector<LinearHypothesis> teachers;
  teachers.reserve(parts.size());
  for (const auto& part : parts) {
    teachers.push_back(TrainErm(data.Select(part), config));
  }
  return teachers;
}

std::vector<VoteCount> CountVotes(const Ensemble& ensemble,
                                  const Dataset& points) {
  std::vector<VoteCount> votes;
  votes.reserve(points.size());
  for (const Example& x : points) votes.push_back(ensemble.Votes(x));
  return votes;
}

std::vector<double> TeacherMeans(const TeacherModel& model, std::size_t reps,
                                 std::uint64_t seed) {
  const std::size_t probes = model.probe_count();
  std::vector<std::uint64_t> ones(probes, 0);
  std::vector<std::uint8_t> buffer(probes);
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng(DeriveSeed(seed, r));
    model.SampleTeacher(rng, buffer);
    for (std::size_t i = 0; i < probes; ++i) ones[i] += buffer[i];
  }
  std::vector<double> means(probes);
  for (std::size_t i = 0; i < probes; ++i) {
    means[i] = static_cast<double>(ones[i]) / static_cast<double>(reps);
  }
  return means;
}

PigeonholeTally PigeonholeExhaustive(int teachers, int points) {
  CheckPigeonholeShape(teachers, points);
  PigeonholeTally tally;
  const int bits = teachers * points;
  const std::uint32_t mask = (1u << points) - 1;
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(teachers));
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    for (int k = 0; k < teachers; ++k) {
      rows[static_cast<std::size_t>(k)] =
          static_cast<std::uint32_t>(code >> (k * points)) & mask;
    }
    tally.matrices += 1;
    tally.violations += !PigeonholeHolds(rows, points);
  }
  return tally;
}

}  // namespace serial

namespace parallel {

std::vector<LinearHypothesis> TrainTeachers(
    const Dataset& data, const std::vector<std::vector<std::size_t>>& parts,
    const TrainerConfig& config) {
  std::vector<LinearHypothesis> teachers(parts.size());
  const auto n = static_cast<std::ptrdiff_t>(parts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    teachers[idx] = TrainErm(data.Select(parts[idx]), config);
  }
  return teachers;
}

std::vector<VoteCount> CountVotes(const Ensemble& ensemble,
                                  const Dataset& points) {
  std::vector<VoteCount> votes(points.size(), VoteCount(0, 1));
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    votes[idx] = ensemble.Votes(points[idx]);
  }
  return votes;
}

std::vector<double> TeacherMeans(const TeacherModel& model, std::size_t reps,
                                 std::uint64_t seed) {
  const std::size_t probes = model.probe_count();
  std::vector<std::uint64_t> ones(probes, 0);
  const auto n = static_cast<std::ptrdiff_t>(reps);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(probes, 0);
    std::vector<std::uint8_t> buffer(probes);
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(r)));
      model.SampleTeacher(rng, buffer);
      for (std::size_t i = 0; i < probes; ++i) local[i] += buffer[i];
    }
#pragma omp critical
    for (std::size_t i = 0; i < probes; ++i) ones[i] += local[i];
  }
  std::vector<double> means(probes);
  for (std::size_t i = 0; i < probes; ++i) {
    means[i] = static_cast<double>(ones[i]) / static_cast<double>(reps);
  }
  return means;
}

PigeonholeTally PigeonholeExhaustive(int teachers, int points) {
  CheckPigeonholeShape(teachers, points);
  const int at_least = (teachers + 2) / 3;
  const std::uint32_t limit = 1u << points;
  std::uint64_t matrices = 0;
  std::uint64_t violations = 0;
  const auto n = static_cast<std::ptrdiff_t>(limit);
#pragma omp parallel for schedule(dynamic) reduction(+ : matrices, violations)
  for (std::ptrdiff_t first = 0; first < n; ++first) {
    const auto row = static_cast<std::uint32_t>(first);
    PigeonholeTally tally;
    if (teachers == 1) {
      const int bad = std::popcount(Slices{}.Plus(row).AtLeast(at_least) &
                                    (limit - 1));
      tally.matrices = 1;
      tally.violations = bad > 3 * std::popcount(row);
    } else {
      EnumerateRows(Slices{}.Plus(row), std::popcount(row), 1, teachers,
                    points, at_least, tally);
    }
    matrices += tally.matrices;
    violations += tally.violations;
  }
  return {matrices, violations};
}

}  // namespace parallel
}  // namespace pate::kernels
