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

// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include "pate/kernels.h"
#include "pate/synthdata.h"

namespace pate::kernels {
namespace {

struct TeacherFixture {
  Dataset data;
  std::vector<std::vector<std::size_t>> parts;
  Dataset probes;
};

const TeacherFixture& Teachers() {
  static const TeacherFixture f = [] {
    const LinearGenerator gen(20, 0.1, 1);
    Rng rng(2);
    TeacherFixture t;
    t.data = gen.Sample(20000, rng);
    t.parts = SplitIndices(t.data.size(), 200, rng);
    t.probes = gen.Sample(5000, rng).WithoutLabels();
    return t;
  }();
  return f;
}

template <auto Fn>
void BM_TrainTeachers(benchmark::State& state) {
  const auto& f = Teachers();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f.data, f.parts, TrainerConfig{}));
}
BENCHMARK(BM_TrainTeachers<serial::TrainTeachers>)->Name("TrainTeachers/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrainTeachers<parallel::TrainTeachers>)->Name("TrainTeachers/parallel")->Unit(benchmark::kMillisecond);

template <auto Fn>
void BM_CountVotes(benchmark::State& state) {
  const auto& f = Teachers();
  static const Ensemble ensemble(serial::TrainTeachers(f.data, f.parts, TrainerConfig{}));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(ensemble, f.probes));
}
BENCHMARK(BM_CountVotes<serial::CountVotes>)->Name("CountVotes/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountVotes<parallel::CountVotes>)->Name("CountVotes/parallel")->Unit(benchmark::kMillisecond);

template <auto Fn>
void BM_TeacherMeans(benchmark::State& state) {
  static const TncGenerator gen(0.5);
  static const Dataset probes = [] {
    Rng rng(3);
    return gen.Sample(200, rng).WithoutLabels();
  }();
  static const SampledTeacherModel model(gen, 100, probes, ThresholdErmTrainer());
  for (auto _ : state) benchmark::DoNotOptimize(Fn(model, 2000, 4));
}
BENCHMARK(BM_TeacherMeans<serial::TeacherMeans>)->Name("TeacherMeans/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TeacherMeans<parallel::TeacherMeans>)->Name("TeacherMeans/parallel")->Unit(benchmark::kMillisecond);

template <auto Fn>
void BM_Pigeonhole(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(4, 6));
}
BENCHMARK(BM_Pigeonhole<serial::PigeonholeExhaustive>)->Name("Pigeonhole4x6/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pigeonhole<parallel::PigeonholeExhaustive>)->Name("Pigeonhole4x6/parallel")->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pate::kernels

BENCHMARK_MAIN();
