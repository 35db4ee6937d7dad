// Copyright 2026 The esd-lab Authors
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

#include "esdlab/stochastic.hpp"

namespace {

using namespace esdlab;

void BM_EnsembleEvolve(benchmark::State& state) {
  const DensityMatrix rho = embed(XState(1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 3, 0.0));
  StochasticConfig cfg;
  cfg.rates = state.range(1) == 0 ? DephasingRates::global(1.0) : DephasingRates::local(1.0, 1.0);
  cfg.trajectories = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_evolve(rho, 0.35, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnsembleEvolve)
    ->ArgsProduct({{10000, 200000}, {0, 1}})
    ->ArgNames({"n", "local"})
    ->Unit(benchmark::kMillisecond);

void BM_SamplePhase(benchmark::State& state) {
  SplitMix64 rng = trajectory_rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_phase(1.0, 0.35, rng));
}
BENCHMARK(BM_SamplePhase);

}  // namespace
