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

#include "matchsim/mechanisms.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <utility>

namespace matchsim {
namespace {

void CheckPreferences(std::span<const WeightedPreference> preferences,
                      std::size_t n_schools) {
  for (const auto& pref : preferences) {
    if (pref.ranking().size() != n_schools) {
      throw ContractViolation("every student must rank all schools");
    }
  }
}

void CheckPriorities(const Priorities& priorities, std::size_t n_students,
                     std::size_t n_schools) {
  if (priorities.n_schools() != n_schools ||
      priorities.n_students() != n_students) {
    throw ContractViolation("priorities do not cover the market");
  }
}

}  // namespace

std::string ToString(MechanismType type) {
  switch (type) {
    case MechanismType::kSD:
      return "SD";
    case MechanismType::kRSD:
      return "RSD";
    case MechanismType::kBoston:
      return "Boston";
    case MechanismType::kDA:
      return "DA";
  }
  return "?";
}

std::string ToString(SchoolSide side) {
  return side == SchoolSide::kLottery ? "lottery" : "true_preference";
}

std::optional<MechanismType> ParseMechanismType(std::string_view name) {
  if (name == "SD") return MechanismType::kSD;
  if (name == "RSD") return MechanismType::kRSD;
  if (name == "Boston") return MechanismType::kBoston;
  if (name == "DA") return MechanismType::kDA;
  return std::nullopt;
}

std::optional<SchoolSide> ParseSchoolSide(std::string_view name) {
  if (name == "lottery") return SchoolSide::kLottery;
  if (name == "true_preference") return SchoolSide::kTruePreference;
  return std::nullopt;
}

Priorities::Priorities(std::vector<std::vector<std::size_t>> orders)
    : orders_(std::move(orders)) {
  n_students_ = orders_.empty() ? 0 : orders_.front().size();
  rank_.resize(orders_.size());
  for (std::size_t s = 0; s < orders_.size(); ++s) {
    const auto& order = orders_[s];
    if (order.size() != n_students_) {
      throw ContractViolation("priority orders must have equal length");
    }
    auto& rank = rank_[s];
    rank.assign(n_students_, n_students_);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      if (order[pos] >= n_students_ || rank[order[pos]] != n_students_) {
        throw ContractViolation("priority order is not a permutation");
      }
      rank[order[pos]] = pos;
    }
  }
}

std::vector<std::size_t> Lottery(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::vector<std::size_t> StudentOrdering(OrderingMode mode,
                                         std::span<const Student> students,
                                         Aggregation aggregation, Rng& rng) {
  std::vector<std::size_t> order = Lottery(students.size(), rng);
  if (mode == OrderingMode::kEntryLevel) {
    std::vector<double> value(students.size());
    for (std::size_t i = 0; i < students.size(); ++i) {
      value[i] = OutcomeValue(students[i].entry, aggregation);
    }
    // Stable sort keeps the lottery order among equal entry values.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return value[a] > value[b];
                     });
  }
  return order;
}

Matching SerialDictatorship(std::span<const std::size_t> order,
                            std::span<const WeightedPreference> preferences,
                            std::span<const int> capacities) {
  CheckPreferences(preferences, capacities.size());
  Matching matching;
  matching.assignment.assign(preferences.size(), std::nullopt);
  std::vector<int> remaining(capacities.begin(), capacities.end());
  for (std::size_t student : order) {
    for (std::size_t school : preferences[student].ranking()) {
      if (remaining[school] > 0) {
        --remaining[school];
        matching.assignment[student] = school;
        break;
      }
    }
  }
  return matching;
}

Matching Boston(std::span<const WeightedPreference> preferences,
                const Priorities& priorities,
                std::span<const int> capacities) {
  const std::size_t n_schools = capacities.size();
  CheckPreferences(preferences, n_schools);
  CheckPriorities(priorities, preferences.size(), n_schools);

  Matching matching;
  matching.assignment.assign(preferences.size(), std::nullopt);
  std::vector<int> remaining(capacities.begin(), capacities.end());
  std::vector<std::vector<std::size_t>> applicants(n_schools);

  for (std::size_t choice = 0; choice < n_schools; ++choice) {
    bool anyone_applied = false;
    for (auto& list : applicants) list.clear();
    for (std::size_t x = 0; x < preferences.size(); ++x) {
      if (matching.assignment[x]) continue;
      applicants[preferences[x].ranking()[choice]].push_back(x);
      anyone_applied = true;
    }
    if (!anyone_applied) break;
    for (std::size_t s = 0; s < n_schools; ++s) {
      auto& list = applicants[s];
      std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
        return priorities.RankOf(s, a) < priorities.RankOf(s, b);
      });
      for (std::size_t x : list) {
        if (remaining[s] == 0) break;
        --remaining[s];
        matching.assignment[x] = s;
      }
    }
  }
  return matching;
}

Matching DeferredAcceptance(std::span<const WeightedPreference> preferences,
                            const Priorities& priorities,
                            std::span<const int> capacities) {
  const std::size_t n_schools = capacities.size();
  const std::size_t n_students = preferences.size();
  CheckPreferences(preferences, n_schools);
  CheckPriorities(priorities, n_students, n_schools);

  // Per school, a max-heap on priority rank: the top is the held student
  // with the lowest priority, i.e. the first to be displaced.
  auto lower_priority_on_top = [&](std::size_t school) {
    return [&priorities, school](std::size_t a, std::size_t b) {
      return priorities.RankOf(school, a) < priorities.RankOf(school, b);
    };
  };
  using Held = std::priority_queue<std::size_t, std::vector<std::size_t>,
                                   std::function<bool(std::size_t, std::size_t)>>;
  std::vector<Held> held;
  held.reserve(n_schools);
  for (std::size_t s = 0; s < n_schools; ++s) {
    held.emplace_back(lower_priority_on_top(s));
  }

  std::vector<std::size_t> next_choice(n_students, 0);
  std::vector<std::size_t> free_students(n_students);
  std::iota(free_students.rbegin(), free_students.rend(), std::size_t{0});

  const std::size_t proposal_bound = n_students * n_schools;
  std::size_t proposals = 0;
  while (!free_students.empty()) {
    const std::size_t x = free_students.back();
    free_students.pop_back();
    if (next_choice[x] == n_schools) continue;  // exhausted: stays unassigned
    const std::size_t s = preferences[x].ranking()[next_choice[x]++];
    if (++proposals > proposal_bound) {
      throw ContractViolation("deferred acceptance exceeded its proposal bound");
    }
    if (capacities[s] <= 0) {
      free_students.push_back(x);
      continue;
    }
    held[s].push(x);
    if (held[s].size() > static_cast<std::size_t>(capacities[s])) {
      free_students.push_back(held[s].top());
      held[s].pop();
    }
  }

  Matching matching;
  matching.assignment.assign(n_students, std::nullopt);
  for (std::size_t s = 0; s < n_schools; ++s) {
    while (!held[s].empty()) {
      matching.assignment[held[s].top()] = s;
      held[s].pop();
    }
  }
  return matching;
}

}  // namespace matchsim
