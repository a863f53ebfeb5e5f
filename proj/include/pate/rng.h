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

#ifndef PATE_RNG_H_
#define PATE_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace pate {

// SplitMix64 finalizer. Used to derive independent child seeds.
constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the `index`-th child stream of `master`. Trial seeds, per-teacher
// seeds and per-rep seeds all come from here, so a parallel loop that derives
// its seed from the loop index reproduces the serial loop exactly.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  return SplitMix64(master ^ SplitMix64(index + 0x632be59bd9b4e019ULL));
}

// Seeded generator passed explicitly through every randomized operation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard; uniforms are built from its raw bits rather than through
// std::uniform_real_distribution so streams are identical across standard
// library implementations. `draws()` counts raw 64-bit outputs consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(SplitMix64(seed)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  // Independent child generator; depends only on this generator's seed and
  // `index`, never on how much of this stream has been consumed.
  Rng Split(std::uint64_t index) const { return Rng(DeriveSeed(seed_, index)); }

  std::uint64_t NextU64() {
    ++draws_;
    return engine_();
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1).
  double UniformOpen() {
    return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Lemire's nearly-divisionless rejection.
  std::uint64_t UniformInt(std::uint64_t n);

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by Rng (std::shuffle's draw pattern is
// implementation-defined).
template <typename T>
void Shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.UniformInt(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace pate

#endif  // PATE_RNG_H_
