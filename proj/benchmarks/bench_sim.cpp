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

#include "vqls/blockenc.hpp"
#include "vqls/qsvt.hpp"
#include "vqls/sim.hpp"

namespace {

using namespace vqls;

void BM_ExtractFullBlock(benchmark::State& state) {
  const problem::PlasmaParams params;
  const auto grid = problem::make_grid(params, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto be = blockenc::full_be(grid, params);
  for (auto _ : state) benchmark::DoNotOptimize(be.extract());
}
BENCHMARK(BM_ExtractFullBlock)->Args({3, 2})->Args({4, 3})->Unit(benchmark::kMillisecond);

void BM_DenseStep(benchmark::State& state) {
  const problem::PlasmaParams params;
  const auto grid = problem::make_grid(params, 3, 2);
  const auto step = qsvt::qsvt_step(blockenc::full_be(grid, params), 0.3);
  sim::StateVector psi(step.num_qubits());
  for (auto _ : state) {
    sim::apply_in_place(step, psi);
    benchmark::DoNotOptimize(psi[0]);
  }
}
BENCHMARK(BM_DenseStep)->Unit(benchmark::kMillisecond);

void BM_CompiledApply(benchmark::State& state) {
  const problem::PlasmaParams params;
  const auto grid = problem::make_grid(params, 3, 2);
  const auto be = qsvt::dilate(blockenc::full_be(grid, params));
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t j = 0; j < (1u << be.data_width()); ++j) {
    seeds.push_back(sim::scatter_bits(j, be.data_qubits()));
  }
  const auto op = sim::compile_reachable(be.circuit, seeds);
  std::vector<Complex> a(op.dimension(), Complex(1.0, 0.0)), b(op.dimension()), c(op.dimension()), d(op.dimension());
  for (auto _ : state) {
    op.apply2(a, a, b, d);
    benchmark::DoNotOptimize(b.data());
  }
  state.counters["support"] = static_cast<double>(op.dimension());
}
BENCHMARK(BM_CompiledApply)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
