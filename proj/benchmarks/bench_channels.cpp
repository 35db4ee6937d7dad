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

namespace {

using namespace esdlab;

const DensityMatrix& reference_state() {
  static const DensityMatrix rho = embed(XState(0.4, 0.1, 0.2, 0.3, 0.2, 0.1));
  return rho;
}

void BM_GlobalKraus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(global_kraus(0.35, 1.0));
}
BENCHMARK(BM_GlobalKraus);

void BM_ApplyGlobalChannel(benchmark::State& state) {
  const KrausSet k = global_kraus(0.35, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_channel(k, reference_state()));
}
BENCHMARK(BM_ApplyGlobalChannel);

void BM_ApplyLocalChannel(benchmark::State& state) {
  const KrausSet k = local_kraus(0.35, 1.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(apply_channel(k, reference_state()));
}
BENCHMARK(BM_ApplyLocalChannel);

void BM_LocalClosedForm(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_local_closed_form(reference_state(), 0.35, 1.0, 0.5));
  }
}
BENCHMARK(BM_LocalClosedForm);

}  // namespace
