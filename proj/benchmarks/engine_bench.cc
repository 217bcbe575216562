// Copyright 2026 The matchsim Authors
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

#include "benchmark/benchmark.h"
#include "matchsim/engine.h"

namespace matchsim {
namespace {

// One measured round of the default market, warm-up excluded.
void BM_SimulationRound(benchmark::State& state) {
  SimulationConfig config;
  config.mechanism.type = static_cast<MechanismType>(state.range(0));
  config.strategies.assign(config.n_schools, StrategyKind::Truthful());
  config.strategies[0] = StrategyKind::Attack(4.0);
  Simulation simulation(config);
  for (int r = 0; r < config.warmup(); ++r) simulation.RunRound();
  for (auto _ : state) benchmark::DoNotOptimize(simulation.RunRound());
}
BENCHMARK(BM_SimulationRound)
    ->ArgName("mechanism")
    ->DenseRange(0, 3)
    ->Unit(benchmark::kMicrosecond);

// A full default run: 200 students, 10 schools, 100 rounds.
void BM_FullRun(benchmark::State& state) {
  SimulationConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(RunSimulation(config));
}
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace matchsim
