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

#ifndef MATCHSIM_POPULATION_H_
#define MATCHSIM_POPULATION_H_

#include <array>
#include <cstddef>

#include "matchsim/market.h"
#include "matchsim/rng.h"

namespace matchsim {

// Distribution of incoming student attributes: every component is an
// independent draw of Normal(mean, stddev), rounded to the nearest integer
// and clamped to [0, kMaxRating].
struct EntryDistribution {
  double mean = 1.0;
  double stddev = 3.0;
  std::size_t dimension = 1;

  // P(component == v) for v = 0..5, from the normal CDF over rounding bins;
  // the end bins absorb the clamped tails.
  std::array<double, 6> LevelProbabilities() const;

  // Expected outcome value of an entry vector under `aggregation`.
  double ExpectedValue(Aggregation aggregation) const;

  AttributeVector Sample(Rng& rng) const;
};

}  // namespace matchsim

#endif  // MATCHSIM_POPULATION_H_
