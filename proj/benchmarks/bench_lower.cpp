// Copyright 2026 The vqls Authors
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

#include "vqls/lower.hpp"

namespace {

using namespace vqls;

void BM_LowerStep(benchmark::State& state) {
  const problem::PlasmaParams params;
  const auto step = lower::single_step_circuit(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), params);
  const auto strategy = state.range(2) ? lower::Strategy::Optimized : lower::Strategy::Baseline;
  std::size_t cx = 0;
  for (auto _ : state) {
    cx = lower::count_resources(lower::lower_to_basis(step, strategy)).cx_count;
    benchmark::DoNotOptimize(cx);
  }
  state.counters["cx"] = static_cast<double>(cx);
}
BENCHMARK(BM_LowerStep)
    ->Args({3, 2, 0})->Args({3, 2, 1})->Args({6, 4, 0})->Args({6, 4, 1})->Args({8, 6, 0})->Args({8, 6, 1})
    ->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const problem::PlasmaParams params;
  std::vector<std::pair<int, int>> sizes;
  for (int nx = 3; nx <= 6; ++nx) {
    for (int nv = 2; nv <= 4; ++nv) sizes.emplace_back(nx, nv);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lower::sweep_report(sizes, {lower::Strategy::Baseline, lower::Strategy::Optimized}, params));
  }
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
