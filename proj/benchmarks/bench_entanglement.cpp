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

#include "esdlab/channels.hpp"
#include "esdlab/entanglement.hpp"

namespace {

using namespace esdlab;

const XState kState(1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 3, 0.0);

void BM_ConcurrenceGeneral(benchmark::State& state) {
  const DensityMatrix rho = embed(kState);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_general(rho));
}
BENCHMARK(BM_ConcurrenceGeneral);

void BM_ConcurrenceXState(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_x_state(kState));
}
BENCHMARK(BM_ConcurrenceXState);

void BM_Negativity(benchmark::State& state) {
  const DensityMatrix rho = embed(kState);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(rho));
}
BENCHMARK(BM_Negativity);

void BM_EsdTimeNumeric(benchmark::State& state) {
  const ConcurrenceCurve curve = [](double t) {
    return concurrence_x_state(evolve_global_closed_form(kState, t, 1.0));
  };
  for (auto _ : state) benchmark::DoNotOptimize(esd_time_numeric(curve, 10.0, 1e-9));
}
BENCHMARK(BM_EsdTimeNumeric);

}  // namespace
