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

#include "vqls/phases.hpp"
#include "vqls/polynomial.hpp"

namespace {

using namespace vqls::qsvt;

void BM_InversePoly(benchmark::State& state) {
  SolverConfig c;
  c.kappa = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(inverse_poly(c));
}
BENCHMARK(BM_InversePoly)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Phases(benchmark::State& state) {
  SolverConfig c;
  c.kappa = static_cast<double>(state.range(0));
  const auto poly = inverse_poly(c);
  for (auto _ : state) benchmark::DoNotOptimize(qsvt_phases(poly));
  state.counters["degree"] = poly.degree();
}
BENCHMARK(BM_Phases)->Arg(10)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
