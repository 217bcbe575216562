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

#ifndef MATCHSIM_RNG_H_
#define MATCHSIM_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace matchsim {

using Rng = std::mt19937_64;

// Phases that own an independent random substream inside one round.
enum class StreamPhase : std::uint64_t {
  kStudents = 1,
  kPreference = 2,
  kLottery = 3,
  kOrdering = 4,
  kWarmupMatching = 5,
};

// Stable 64-bit mix of a base seed and a key path. Equal inputs give equal
// outputs on every platform.
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> keys);

// Generator for the substream keyed by (seed, round, phase, index...).
// Streams with different keys are statistically independent, so the draws
// of one phase do not move when another phase consumes more or fewer numbers.
Rng Substream(std::uint64_t seed, int round, StreamPhase phase,
              std::uint64_t index = 0);

}  // namespace matchsim

#endif  // MATCHSIM_RNG_H_
