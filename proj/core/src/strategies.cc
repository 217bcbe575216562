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

#include "matchsim/strategies.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace matchsim {

int DesiredStudents(std::size_t school, const ThresholdPolicy& policy) {
  const int capacity = policy.capacities.at(school);
  if (policy.utility_sign == UtilitySign::kPositive) {
    return std::min(policy.n_students, capacity);
  }
  const int others = std::accumulate(policy.capacities.begin(),
                                     policy.capacities.end(), 0) -
                     capacity;
  return std::min(capacity, std::max(0, policy.n_students - others));
}

int AttackTarget(std::size_t school, const ThresholdPolicy& policy) {
  const double raw = 0.5 * DesiredStudents(school, policy) *
                     static_cast<double>(policy.capacities.size());
  return static_cast<int>(std::floor(raw + 0.5));
}

std::vector<double> HelpDistribution(const EntryDistribution& distribution) {
  const auto level = distribution.LevelProbabilities();
  std::vector<double> help{1.0};
  for (std::size_t dim = 0; dim < distribution.dimension; ++dim) {
    std::vector<double> next(help.size() + 5, 0.0);
    for (std::size_t h = 0; h < help.size(); ++h) {
      for (int v = 0; v <= 5; ++v) next[h + 5 - v] += help[h] * level[v];
    }
    help = std::move(next);
  }
  return help;
}

double ComputeThreshold(const ThresholdPolicy& policy, std::size_t school) {
  const int target = AttackTarget(school, policy);
  if (target <= 0) return -1.0;
  const auto help = HelpDistribution(policy.distribution);
  const int max_help = static_cast<int>(help.size()) - 1;
  double cumulative = 0.0;
  for (int t = 0; t < max_help; ++t) {
    cumulative += help[t];
    if (policy.n_students * cumulative >= target) return t;
  }
  return max_help;
}

AttributeVector ChooseOutcome(const StrategyKind& strategy,
                              const AttributeVector& potential,
                              const AttributeVector& entry) {
  const std::size_t d = entry.dimension();
  if (potential.dimension() != d) {
    throw ConfigError("attribute dimension mismatch between school and student");
  }
  std::vector<double> best(d);
  double help = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    best[i] = std::max(entry[i], potential[i]);
    help += best[i] - entry[i];
  }
  if (strategy.kind == StrategyKind::Kind::kTruthful) {
    return AttributeVector(std::move(best));
  }
  if (!(strategy.level >= 0.0 && strategy.level <= 100.0)) {
    throw ContractViolation("attack level must lie in [0, 100]");
  }
  if (!strategy.threshold) {
    throw ContractViolation("attack strategy has no resolved threshold");
  }
  if (help <= *strategy.threshold) return AttributeVector(std::move(best));

  const double withheld = kMaxRating * strategy.level / 100.0;
  for (std::size_t i = 0; i < d; ++i) {
    best[i] = std::max(entry[i], best[i] - withheld);
  }
  return AttributeVector(std::move(best));
}

}  // namespace matchsim
