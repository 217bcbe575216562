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

#include <vector>

#include "benchmark/benchmark.h"
#include "matchsim/mechanisms.h"
#include "matchsim/rng.h"

namespace matchsim {
namespace {

struct Market {
  std::vector<WeightedPreference> preferences;
  std::vector<int> capacities;
  std::vector<std::vector<std::size_t>> priorities;
  std::vector<std::size_t> order;
};

// Default-sized market: n_schools schools with 20 seats, 20 students each.
Market MakeMarket(int n_schools) {
  Rng rng(1);
  const std::size_t n = 20 * static_cast<std::size_t>(n_schools);
  Market market;
  std::uniform_real_distribution<double> weight(0.0, 5.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> w(n_schools);
    std::vector<std::uint64_t> keys(n_schools);
    for (int s = 0; s < n_schools; ++s) {
      w[s] = weight(rng);
      keys[s] = rng();
    }
    market.preferences.emplace_back(StudentId{static_cast<std::int64_t>(i)},
                                    std::move(w), keys);
  }
  market.capacities.assign(n_schools, 20);
  for (int s = 0; s < n_schools; ++s) {
    market.priorities.push_back(Lottery(n, rng));
  }
  market.order = Lottery(n, rng);
  return market;
}

void BM_SerialDictatorship(benchmark::State& state) {
  const Market m = MakeMarket(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SerialDictatorship(m.order, m.preferences, m.capacities));
  }
}
BENCHMARK(BM_SerialDictatorship)->Arg(2)->Arg(10)->Arg(50);

void BM_Boston(benchmark::State& state) {
  const Market m = MakeMarket(static_cast<int>(state.range(0)));
  const Priorities priorities(m.priorities);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Boston(m.preferences, priorities, m.capacities));
  }
}
BENCHMARK(BM_Boston)->Arg(2)->Arg(10)->Arg(50);

void BM_DeferredAcceptance(benchmark::State& state) {
  const Market m = MakeMarket(static_cast<int>(state.range(0)));
  const Priorities priorities(m.priorities);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DeferredAcceptance(m.preferences, priorities, m.capacities));
  }
}
BENCHMARK(BM_DeferredAcceptance)->Arg(2)->Arg(10)->Arg(50);

}  // namespace
}  // namespace matchsim
