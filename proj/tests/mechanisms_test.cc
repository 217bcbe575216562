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
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "support/oracles.h"

namespace matchsim {
namespace {

constexpr int kInstances = 200;

TEST(PrioritiesTest, RejectsNonPermutations) {
  EXPECT_THROW(Priorities({{0, 0}}), ContractViolation);
  EXPECT_THROW(Priorities({{0, 1}, {0}}), ContractViolation);
  Priorities p({{1, 0, 2}});
  EXPECT_EQ(p.RankOf(0, 1), 0u);
  EXPECT_EQ(p.RankOf(0, 2), 2u);
}

TEST(ParseTest, NamesRoundTrip) {
  for (auto t : {MechanismType::kSD, MechanismType::kRSD,
                 MechanismType::kBoston, MechanismType::kDA}) {
    EXPECT_EQ(ParseMechanismType(ToString(t)), t);
  }
  EXPECT_FALSE(ParseMechanismType("TTC").has_value());
  EXPECT_EQ(ParseSchoolSide("true_preference"), SchoolSide::kTruePreference);
}

TEST(StudentOrderingTest, EntryLevelSortsByDescendingValue) {
  Rng rng(3);
  std::vector<Student> students;
  for (int i = 0; i < 50; ++i) {
    students.push_back({StudentId{i}, {static_cast<double>(i % 6)}, 0});
  }
  const auto order =
      StudentOrdering(OrderingMode::kEntryLevel, students, Aggregation::kSum, rng);
  ASSERT_EQ(order.size(), students.size());
  for (std::size_t k = 1; k < order.size(); ++k) {
    EXPECT_GE(students[order[k - 1]].entry[0], students[order[k]].entry[0]);
  }
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) EXPECT_EQ(sorted[k], k);
}

TEST(SerialDictatorshipTest, MatchesDefinitionAndIsParetoEfficient) {
  Rng rng(101);
  for (int t = 0; t < kInstances; ++t) {
    const auto instance = oracle::RandomInstance(rng);
    const Matching m = SerialDictatorship(instance.order, instance.preferences,
                                          instance.capacities);
    EXPECT_TRUE(oracle::Feasible(m.assignment, instance.capacities));
    EXPECT_EQ(m.assignment, oracle::SerialDictatorship(instance));
    EXPECT_TRUE(oracle::ParetoEfficient(instance, m.assignment));
  }
}

TEST(BostonTest, MatchesChoiceByChoiceReplay) {
  Rng rng(202);
  for (int t = 0; t < kInstances; ++t) {
    const auto instance = oracle::RandomInstance(rng);
    const Matching m = Boston(instance.preferences, instance.MakePriorities(),
                              instance.capacities);
    EXPECT_TRUE(oracle::Feasible(m.assignment, instance.capacities));
    EXPECT_EQ(m.assignment, oracle::Boston(instance));
  }
}

TEST(DeferredAcceptanceTest, StableAndStudentOptimal) {
  Rng rng(303);
  for (int t = 0; t < kInstances; ++t) {
    const auto instance = oracle::RandomInstance(rng);
    const Matching m = DeferredAcceptance(
        instance.preferences, instance.MakePriorities(), instance.capacities);
    EXPECT_TRUE(oracle::Feasible(m.assignment, instance.capacities));
    EXPECT_TRUE(oracle::BlockingPairs(instance, m.assignment).empty());
    const auto stable = oracle::StableAssignments(instance);
    ASSERT_FALSE(stable.empty());
    for (const auto& other : stable) {
      for (std::size_t i = 0; i < other.size(); ++i) {
        if (other[i]) {
          EXPECT_FALSE(oracle::Prefers(instance.preferences[i], *other[i],
                                       m.assignment[i]))
              << "student " << i << " does better in another stable matching";
        }
      }
    }
  }
}

// Every strict ranking a student could report instead of the truth.
bool AnyProfitableMisreport(
    oracle::Instance instance,
    const std::function<Matching(const oracle::Instance&)>& mechanism) {
  const Matching truthful = mechanism(instance);
  for (std::size_t i = 0; i < instance.preferences.size(); ++i) {
    const WeightedPreference truth = instance.preferences[i];
    std::vector<std::size_t> report(truth.ranking().begin(),
                                    truth.ranking().end());
    std::sort(report.begin(), report.end());
    do {
      instance.preferences[i] =
          WeightedPreference::FromRanking(truth.owner(), report);
      const Matching lie = mechanism(instance);
      if (lie.assignment[i] &&
          oracle::Prefers(truth, *lie.assignment[i], truthful.assignment[i])) {
        return true;
      }
    } while (std::next_permutation(report.begin(), report.end()));
    instance.preferences[i] = truth;
  }
  return false;
}

TEST(StrategyProofnessTest, DeferredAcceptanceAndSerialDictatorship) {
  Rng rng(404);
  const auto da = [](const oracle::Instance& x) {
    return DeferredAcceptance(x.preferences, x.MakePriorities(), x.capacities);
  };
  const auto sd = [](const oracle::Instance& x) {
    return SerialDictatorship(x.order, x.preferences, x.capacities);
  };
  for (int t = 0; t < 100; ++t) {
    const auto instance = oracle::RandomInstance(rng, 4, 4, 2);
    EXPECT_FALSE(AnyProfitableMisreport(instance, da));
    EXPECT_FALSE(AnyProfitableMisreport(instance, sd));
  }
}

TEST(StrategyProofnessTest, BostonIsManipulable) {
  // Students 0 and 1 both rank school 0 first and student 1 loses it. By the
  // second step school 1 is already taken by student 2, who ranks it first,
  // although student 1 has the higher priority there. Ranking school 1 first
  // would have secured it.
  oracle::Instance x;
  const std::vector<std::size_t> r01{0, 1, 2};
  const std::vector<std::size_t> r10{1, 0, 2};
  x.preferences = {WeightedPreference::FromRanking(StudentId{0}, r01),
                   WeightedPreference::FromRanking(StudentId{1}, r01),
                   WeightedPreference::FromRanking(StudentId{2}, r10)};
  x.capacities = {1, 1, 1};
  x.priority_orders = {{0, 1, 2}, {1, 2, 0}, {0, 1, 2}};
  x.order = {0, 1, 2};
  const auto boston = [](const oracle::Instance& y) {
    return Boston(y.preferences, y.MakePriorities(), y.capacities);
  };
  EXPECT_TRUE(AnyProfitableMisreport(x, boston));
}

TEST(DeferredAcceptanceTest, ZeroCapacitySchoolsStayEmpty) {
  const std::vector<std::size_t> r{0, 1};
  std::vector<WeightedPreference> prefs{
      WeightedPreference::FromRanking(StudentId{0}, r),
      WeightedPreference::FromRanking(StudentId{1}, r)};
  const std::vector<int> caps{0, 1};
  const Matching m = DeferredAcceptance(prefs, Priorities({{1, 0}, {1, 0}}),
                                        caps);
  EXPECT_EQ(m.assignment[0], std::nullopt);
  EXPECT_EQ(m.assignment[1], std::optional<std::size_t>(1));
}

}  // namespace
}  // namespace matchsim
