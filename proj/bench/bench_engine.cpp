// Copyright 2026 The gforce Authors.
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

// Serial reference engine vs the incremental engine, and the OpenMP sweep vs
// its serial counterpart.

#include <omp.h>

#include <vector>

#include <benchmark/benchmark.h>

#include "gforce/engine.hpp"

namespace {

using namespace gforce;

RunConfig bench_config(PolicyKind kind, std::int64_t horizon, std::uint64_t seed = 0) {
  RunConfig c{BanditInstance({ArmSpec::bernoulli(0.9), ArmSpec::bernoulli(0.6), ArmSpec::bernoulli(0.5)})};
  c.policy = kind;
  c.g = GFunction::power(0.5);
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

void BM_Run(benchmark::State& state) {
  const auto c = bench_config(static_cast<PolicyKind>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run(c));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_RunReference(benchmark::State& state) {
  const auto c = bench_config(static_cast<PolicyKind>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_reference(c));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

std::vector<RunConfig> sweep_configs() {
  std::vector<RunConfig> out;
  for (std::uint64_t s = 0; s < 16; ++s) out.push_back(bench_config(PolicyKind::kGIsm, 200'000, s));
  return out;
}

void BM_Sweep(benchmark::State& state) {
  const auto configs = sweep_configs();
  for (auto _ : state) benchmark::DoNotOptimize(sweep(configs, static_cast<int>(state.range(0))));
  state.counters["threads"] = static_cast<double>(state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto configs = sweep_configs();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(configs));
}

void policy_args(benchmark::internal::Benchmark* b) {
  for (int kind = 0; kind < 4; ++kind) {
    for (std::int64_t h : {1000, 10'000}) b->Args({kind, h});
  }
}

BENCHMARK(BM_Run)->Apply(policy_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RunReference)->Apply(policy_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Sweep)
    ->DenseRange(1, omp_get_num_procs() > 1 ? omp_get_num_procs() : 2, 1)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
