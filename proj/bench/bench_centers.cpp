// Copyright 2026 The jcenters Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "jcenters/bench.hpp"
#include "jcenters/categorical.hpp"
#include "jcenters/gaussian.hpp"

namespace jcenters {
namespace {

HistogramSet pair_for(benchmark::State& state) {
  return random_histogram_pair(42, static_cast<int>(state.range(0)), 0);
}

void BM_Jeffreys(benchmark::State& state) {
  const auto set = pair_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(jeffreys_centroid_cat(set));
}

void BM_Jfr(benchmark::State& state) {
  const auto set = pair_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(jfr_center_cat(set));
}

void BM_Gb(benchmark::State& state) {
  const auto set = pair_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(gb_center_cat(set));
}

BENCHMARK(BM_Jeffreys)->RangeMultiplier(4)->Range(2, 256);
BENCHMARK(BM_Jfr)->RangeMultiplier(4)->Range(2, 256);
BENCHMARK(BM_Gb)->RangeMultiplier(4)->Range(2, 256);

void run_grid(benchmark::State& state, Execution exec) {
  RunConfig cfg;
  cfg.trials = 200;
  cfg.dims = {16, 64};
  cfg.timing = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_table1(cfg, exec));
}

void BM_Table1Serial(benchmark::State& state) { run_grid(state, Execution::kSerial); }
void BM_Table1Parallel(benchmark::State& state) { run_grid(state, Execution::kParallel); }

BENCHMARK(BM_Table1Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Table1Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FisherRaoMidpoint(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat c = Mat::Identity(d, d);
  c(0, d - 1) = c(d - 1, 0) = 0.3;
  const GaussianParam p0(Vec::Zero(d), SpdMatrix(Mat::Identity(d, d)));
  const GaussianParam p1(Vec::Ones(d), SpdMatrix(2.0 * c));
  for (auto _ : state) benchmark::DoNotOptimize(fisher_rao_midpoint_mvn(p0, p1));
}

BENCHMARK(BM_FisherRaoMidpoint)->DenseRange(2, 4);

}  // namespace
}  // namespace jcenters

BENCHMARK_MAIN();
