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

#ifndef PATE_RATES_H_
#define PATE_RATES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pate/synthdata.h"

namespace pate {

struct RatePoint {
  std::size_t n = 0;
  double mean_excess_risk = 0.0;
  double standard_error = 0.0;
};

// Excess risk of exact threshold ERM on the TNC family, averaged over reps.
// Rep r at sample size n uses Rng(DeriveSeed(DeriveSeed(seed, n), r)).
std::vector<RatePoint> TncRateSweep(double tau, std::span<const std::size_t> sizes,
                                    std::size_t reps, std::uint64_t seed,
                                    double c = 0.5);

// Same for logistic ERM on a linear generator; risk is estimated on
// `test_size` fresh points per rep.
std::vector<RatePoint> LinearRateSweep(const LinearGenerator& generator,
                                       std::span<const std::size_t> sizes,
                                       std::size_t reps, std::uint64_t seed,
                                       std::size_t test_size = 20000);

// Least-squares slope of log(mean excess risk) against log(n). Points with
// zero risk are skipped.
double LogLogSlope(std::span<const RatePoint> points);

}  // namespace pate

#endif  // PATE_RATES_H_
