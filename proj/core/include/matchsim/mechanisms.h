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

#ifndef MATCHSIM_MECHANISMS_H_
#define MATCHSIM_MECHANISMS_H_

// School-choice matching procedures. Students and schools are addressed by
// position: student i is the i-th entry of the preference span, school s the
// s-th entry of the capacity span. All procedures are pure functions of their
// inputs; randomness enters only through explicit Rng arguments.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "matchsim/market.h"
#include "matchsim/rng.h"

namespace matchsim {

enum class MechanismType { kSD, kRSD, kBoston, kDA };

// Where school-side priorities come from for Boston and DA. Serial
// dictatorship variants ignore it.
enum class SchoolSide { kLottery, kTruePreference };

struct MechanismKind {
  MechanismType type = MechanismType::kRSD;
  SchoolSide school_side = SchoolSide::kLottery;
  bool operator==(const MechanismKind&) const = default;
};

std::string ToString(MechanismType type);
std::string ToString(SchoolSide side);
std::optional<MechanismType> ParseMechanismType(std::string_view name);
std::optional<SchoolSide> ParseSchoolSide(std::string_view name);

// Strict priority order of every school over the students of one round.
class Priorities {
 public:
  // Each order must be a permutation of 0..n_students-1.
  explicit Priorities(std::vector<std::vector<std::size_t>> orders);

  std::size_t n_schools() const { return orders_.size(); }
  std::size_t n_students() const { return n_students_; }
  std::span<const std::size_t> Order(std::size_t school) const {
    return orders_[school];
  }
  // 0 = highest priority.
  std::size_t RankOf(std::size_t school, std::size_t student) const {
    return rank_[school][student];
  }

 private:
  std::size_t n_students_ = 0;
  std::vector<std::vector<std::size_t>> orders_;
  std::vector<std::vector<std::size_t>> rank_;
};

enum class OrderingMode { kEntryLevel, kRandom };

// Uniform random permutation of 0..n-1.
std::vector<std::size_t> Lottery(std::size_t n, Rng& rng);

// Random order, or descending entry value with ties broken by a lottery
// drawn from `rng`.
std::vector<std::size_t> StudentOrdering(OrderingMode mode,
                                         std::span<const Student> students,
                                         Aggregation aggregation, Rng& rng);

// Each student, in `order`, takes the first school in their ranking that
// still has a free seat.
Matching SerialDictatorship(std::span<const std::size_t> order,
                            std::span<const WeightedPreference> preferences,
                            std::span<const int> capacities);

// Immediate acceptance: in round k every unassigned student applies to their
// k-th choice and schools permanently accept the highest-priority applicants
// that fit in their remaining seats.
Matching Boston(std::span<const WeightedPreference> preferences,
                const Priorities& priorities, std::span<const int> capacities);

// Student-proposing deferred acceptance. Returns the student-optimal stable
// matching for (preferences, priorities).
Matching DeferredAcceptance(std::span<const WeightedPreference> preferences,
                            const Priorities& priorities,
                            std::span<const int> capacities);

}  // namespace matchsim

#endif  // MATCHSIM_MECHANISMS_H_
