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

#ifndef PATE_KERNELS_H_
#define PATE_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pate/aggregation.h"
#include "pate/data.h"
#include "pate/estimators.h"
#include "pate/learners.h"

// Data-parallel hot loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel; both produce
// identical results because per-item randomness is derived from the item
// index rather than from a shared stream.
namespace pate::kernels {

struct PigeonholeTally {
  std::uint64_t matrices = 0;
  std::uint64_t violations = 0;

  friend bool operator==(const PigeonholeTally&,
                         const PigeonholeTally&) = default;
};

namespace serial {

// Teacher k is trained on data.Select(parts[k]).
std::vector<LinearHypothesis> TrainTeachers(
    const Dataset& data, const std::vector<std::vector<std::size_t>>& parts,
    const TrainerConfig& config);

std::vector<VoteCount> CountVotes(const Ensemble& ensemble,
                                  const Dataset& points);

// Rep r uses Rng(DeriveSeed(seed, r)).
std::vector<double> TeacherMeans(const TeacherModel& model, std::size_t reps,
                                 std::uint64_t seed);

// Enumerates every K x m 0/1 mistake matrix (teacher k wrong on point i)
// and counts those where more than 3B points have at least K/3 wrong
// teachers, B being the largest per-teacher mistake count. K <= 5, m <= 6.
PigeonholeTally PigeonholeExhaustive(int teachers, int points);

}  // namespace serial

namespace parallel {

std::vector<LinearHypothesis> TrainTeachers(
    const Dataset& data, const std::vector<std::vector<std::size_t>>& parts,
    const TrainerConfig& config);

std::vector<VoteCount> CountVotes(const Ensemble& ensemble,
                                  const Dataset& points);

std::vector<double> TeacherMeans(const TeacherModel& model, std::size_t reps,
                                 std::uint64_t seed);

PigeonholeTally PigeonholeExhaustive(int teachers, int points);

}  // namespace parallel

// Pigeonhole check of one matrix given as per-teacher row bitmasks over
// `points` columns. Shared by the exhaustive kernels and sampled tests.
bool PigeonholeHolds(const std::vector<std::uint32_t>& rows, int points);

}  // namespace pate::kernels

#endif  // PATE_KERNELS_H_
