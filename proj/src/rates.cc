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

#include "pate/rates.h"

#include <cmath>
#include <functional>

#include "pate/errors.h"
#include "pate/finite_class.h"
#include "pate/learners.h"

namespace pate {
namespace {

std::vector<RatePoint> Sweep(std::span<const std::size_t> sizes, std::size_t reps,
                             std::uint64_t seed,
                             const std::function<double(std::size_t, Rng&)>& run) {
  if (reps == 0) throw ParameterError("reps must be >= 1");
  std::vector<RatePoint> out;
  for (std::size_t n : sizes) {
    std::vector<double> risk(reps);
    const std::uint64_t size_seed = DeriveSeed(seed, n);
    const auto count = static_cast<std::ptrdiff_t>(reps);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < count; ++r) {
      Rng rng(DeriveSeed(size_seed, static_cast<std::uint64_t>(r)));
      risk[static_cast<std::size_t>(r)] = run(n, rng);
    }
    double mean = 0.0;
    for (double v : risk) mean += v;
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (double v : risk) ss += (v - mean) * (v - mean);
    const double se =
        reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps))
                 : 0.0;
    out.push_back({n, mean, se});
  }
  return out;
}

}  // namespace

std::vector<RatePoint> TncRateSweep(double tau, std::span<const std::size_t> sizes,
                                    std::size_t reps, std::uint64_t seed, double c) {
  const TncGenerator generator(tau, c);
  return Sweep(sizes, reps, seed, [&](std::size_t n, Rng& rng) {
    const Dataset sample = generator.Sample(n, rng);
    return generator.ExcessRisk(FitThreshold(sample));
  });
}

std::vector<RatePoint> LinearRateSweep(const LinearGenerator& generator,
                                       std::span<const std::size_t> sizes,
                                       std::size_t reps, std::uint64_t seed,
                                       std::size_t test_size) {
  return Sweep(sizes, reps, seed, [&](std::size_t n, Rng& rng) {
    const Dataset sample = generator.Sample(n, rng);
    const LinearHypothesis h = TrainErm(sample, TrainerConfig{});
    const Dataset test = generator.Sample(test_size, rng);
    // Risk against the regression function, which has lower variance than
    // counting mistakes on noisy test labels.
    double err = 0.0;
    for (const Example& x : test) {
      const double r = generator.Regression(x);
      err += Predict(h, x) == 1 ? 1.0 - r : r;
    }
    return err / static_cast<double>(test.size()) - generator.BayesError();
  });
}

double LogLogSlope(std::span<const RatePoint> points) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double count = 0.0;
  for (const RatePoint& p : points) {
    if (!(p.mean_excess_risk > 0.0)) continue;
    const double x = std::log(static_cast<double>(p.n));
    const double y = std::log(p.mean_excess_risk);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    count += 1.0;
  }
  if (count < 2.0) throw ParameterError("need two points with positive risk");
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace pate
