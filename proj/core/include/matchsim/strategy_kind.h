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

#ifndef MATCHSIM_STRATEGY_KIND_H_
#define MATCHSIM_STRATEGY_KIND_H_

#include <optional>

namespace matchsim {

// How a school treats the students it is matched with.
//
// A truthful school always helps as much as it can. An attacking school
// splits students into cheap (required help <= threshold) and expensive ones
// and withholds `level` percent of the maximum rating from the expensive
// ones. When `threshold` is empty the engine derives it from the market
// parameters (see ComputeThreshold).
struct StrategyKind {
  enum class Kind { kTruthful, kAttack };

  Kind kind = Kind::kTruthful;
  double level = 0.0;
  std::optional<double> threshold;

  static StrategyKind Truthful() { return {}; }
  static StrategyKind Attack(double level,
                             std::optional<double> threshold = std::nullopt) {
    return {Kind::kAttack, level, threshold};
  }

  // Level as seen by the outcome rule; truthful behaves like level 0.
  double EffectiveLevel() const {
    return kind == Kind::kTruthful ? 0.0 : level;
  }

  bool operator==(const StrategyKind&) const = default;
};

}  // namespace matchsim

#endif  // MATCHSIM_STRATEGY_KIND_H_
