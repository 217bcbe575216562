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

#include "matchsim/population.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace matchsim {
namespace {

double NormalCdf(double x, double mean, double stddev) {
  return 0.5 * std::erfc(-(x - mean) / (stddev * std::sqrt(2.0)));
}

}  // namespace

std::array<double, 6> EntryDistribution::LevelProbabilities() const {
  std::array<double, 6> p{};
  double below = 0.0;
  for (int v = 0; v < 5; ++v) {
    const double upto = NormalCdf(v + 0.5, mean, stddev);
    p[v] = upto - below;
    below = upto;
  }
  p[5] = 1.0 - below;
  return p;
}

double EntryDistribution::ExpectedValue(Aggregation aggregation) const {
  const auto p = LevelProbabilities();
  if (aggregation == Aggregation::kSum) {
    double mean_level = 0.0;
    for (int v = 0; v <= 5; ++v) mean_level += v * p[v];
    return mean_level * static_cast<double>(dimension);
  }
  // E[min] = sum_{v>=1} P(min >= v) = sum_{v>=1} P(component >= v)^d.
  double expected = 0.0;
  double at_least = 1.0;
  for (int v = 1; v <= 5; ++v) {
    at_least -= p[v - 1];
    expected += std::pow(std::max(at_least, 0.0),
                         static_cast<double>(dimension));
  }
  return expected;
}

AttributeVector EntryDistribution::Sample(Rng& rng) const {
  std::normal_distribution<double> normal(mean, stddev);
  std::vector<double> components(dimension);
  for (auto& c : components) {
    c = std::clamp(std::round(normal(rng)), 0.0, kMaxRating);
  }
  return AttributeVector(std::move(components));
}

}  // namespace matchsim
