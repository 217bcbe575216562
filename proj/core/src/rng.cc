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

#include "matchsim/rng.h"

namespace matchsim {
namespace {

// splitmix64 finalizer.
std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> keys) {
  // Each step is a bijection of the state for a fixed key, and the seed and
  // keys enter at different depths, so swapping values changes the result.
  std::uint64_t state = Mix(seed);
  for (std::uint64_t key : keys) state = Mix(state ^ key);
  return state;
}

Rng Substream(std::uint64_t seed, int round, StreamPhase phase,
              std::uint64_t index) {
  return Rng(DeriveSeed(seed, {static_cast<std::uint64_t>(round),
                               static_cast<std::uint64_t>(phase), index}));
}

}  // namespace matchsim
