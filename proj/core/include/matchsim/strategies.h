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

#ifndef MATCHSIM_STRATEGIES_H_
#define MATCHSIM_STRATEGIES_H_

// School interaction policies: truthful (maximal help) and the adversarial
// interaction attack, which helps "cheap" students fully and withholds part
// of the maximum rating from "expensive" ones to skew future predictions.

#include <cstddef>
#include <vector>

#include "matchsim/market.h"
#include "matchsim/population.h"
#include "matchsim/strategy_kind.h"

namespace matchsim {

// Market facts a school uses to pick its cheap/expensive threshold.
struct ThresholdPolicy {
  EntryDistribution distribution;
  int n_students = 0;
  std::vector<int> capacities;
  UtilitySign utility_sign = UtilitySign::kPositive;
};

// Number of students the school would like to receive: as many as fit for
// positive utility, otherwise only the overflow the other schools cannot
// seat.
int DesiredStudents(std::size_t school, const ThresholdPolicy& policy);

// Size of the cheap group an attacking school aims for:
// round-half-up(0.5 * desired * n_schools).
int AttackTarget(std::size_t school, const ThresholdPolicy& policy);

// Distribution of the help a fresh student needs to reach the top of the
// scale, sum_i (kMaxRating - entry_i); index h holds P(help == h).
std::vector<double> HelpDistribution(const EntryDistribution& distribution);

// Smallest integer t in [0, 5d] with n_students * P(help <= t) >= target.
// Returns -1 (everyone expensive) when the target is 0 and 5d when the
// target cannot be met.
double ComputeThreshold(const ThresholdPolicy& policy, std::size_t school);

// Outcome a school with `potential` gives a matched student. Truthful play
// and cheap students (help <= threshold) get the best reachable outcome;
// expensive students get best_i - kMaxRating * level / 100, never below
// their entry. Attack strategies must carry a resolved threshold.
AttributeVector ChooseOutcome(const StrategyKind& strategy,
                              const AttributeVector& potential,
                              const AttributeVector& entry);

}  // namespace matchsim

#endif  // MATCHSIM_STRATEGIES_H_
