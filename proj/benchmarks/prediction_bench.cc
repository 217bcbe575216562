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
#include "matchsim/prediction.h"
#include "matchsim/rng.h"

namespace matchsim {
namespace {

TrainingSet MakeTraining(int records) {
  Rng rng(3);
  std::uniform_int_distribution<int> level(0, 5);
  TrainingSet training(1);
  for (int i = 0; i < records; ++i) {
    training.Add(0, {{static_cast<double>(level(rng))},
                     static_cast<double>(level(rng))});
  }
  return training;
}

void BM_KnnPredict(benchmark::State& state) {
  const TrainingSet training = MakeTraining(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  const AttributeVector query{2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(KnnPredict(training, 0, query, k));
  }
}
// 60 records: one school's share of a 3-round window in the default market.
BENCHMARK(BM_KnnPredict)->Args({60, 1})->Args({1000, 1})->Args({1000, 10});

void BM_FormStudentPreference(benchmark::State& state) {
  TrainingSet training(10);
  Rng rng(4);
  std::uniform_int_distribution<int> level(0, 5);
  for (int i = 0; i < 600; ++i) {
    training.Add(i % 10, {{static_cast<double>(level(rng))}, 5.0});
  }
  KnnModel model(training, 1);
  const std::vector<double> prestige(10, 4.0);
  PreferenceContext context{&model, prestige, 0.01, 1.0, 1.0,
                            Aggregation::kSum};
  const Student student{StudentId{0}, {1.0}, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(FormStudentPreference(student, context, rng));
  }
}
BENCHMARK(BM_FormStudentPreference);

}  // namespace
}  // namespace matchsim
