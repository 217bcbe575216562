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

#ifndef MATCHSIM_MARKET_H_
#define MATCHSIM_MARKET_H_

// Agents, preferences, matchings and the interaction history of a repeated
// school-choice market, together with the outcome / value / cost / utility
// algebra used by every other module.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchsim/strategy_kind.h"

namespace matchsim {

// Top of the evaluation scale for a single attribute.
inline constexpr double kMaxRating = 5.0;

// Raised for invalid user-supplied configuration (bad keys, out-of-range
// values, inconsistent dimensions).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a caller breaks a documented precondition of an operation.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Aggregation { kSum, kMin };
enum class UtilitySign { kPositive, kNegative };

std::string ToString(Aggregation aggregation);
std::string ToString(UtilitySign sign);

// A point on the evaluation scale, one component per evaluation criterion.
// Every component lies in [0, kMaxRating].
class AttributeVector {
 public:
  AttributeVector() = default;
  explicit AttributeVector(std::vector<double> components);
  AttributeVector(std::initializer_list<double> components);

  static AttributeVector Filled(std::size_t dimension, double value);

  std::size_t dimension() const { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  std::span<const double> components() const { return components_; }

  bool operator==(const AttributeVector&) const = default;
  friend bool operator<(const AttributeVector& a, const AttributeVector& b) {
    return a.components_ < b.components_;
  }

 private:
  std::vector<double> components_;
};

struct StudentId {
  std::int64_t value = 0;
  auto operator<=>(const StudentId&) const = default;
};

struct Student {
  StudentId id;
  AttributeVector entry;
  int round_of_arrival = 0;
};

struct School {
  std::size_t id = 0;
  AttributeVector potential;
  int capacity = 1;
  // Cost per unit of help, in [0, 1).
  double alpha = 0.95;
  UtilitySign utility_sign = UtilitySign::kPositive;
  StrategyKind strategy;
};

// Ranking of one agent over the schools, backed by a real weight per school.
// Schools are ordered by descending weight; equal weights are ordered by a
// tie-break key fixed when the preference is created (lower key first).
class WeightedPreference {
 public:
  WeightedPreference() = default;
  WeightedPreference(StudentId owner, std::vector<double> weights,
                     std::span<const std::uint64_t> tie_break_keys);

  // Preference whose weights descend along `ranking` (n, n-1, ..., 1).
  static WeightedPreference FromRanking(StudentId owner,
                                        std::span<const std::size_t> ranking);

  StudentId owner() const { return owner_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const std::size_t> ranking() const { return ranking_; }
  // Position of `school` in the ranking (0 = most preferred).
  std::size_t RankOf(std::size_t school) const { return rank_of_[school]; }

 private:
  StudentId owner_;
  std::vector<double> weights_;
  std::vector<std::size_t> ranking_;
  std::vector<std::size_t> rank_of_;
};

// Assignment of the students of one round (by position) to schools; an empty
// optional means the student stayed unassigned.
struct Matching {
  std::vector<std::optional<std::size_t>> assignment;

  std::vector<int> Occupancy(std::size_t n_schools) const;
  bool IsFeasible(std::span<const int> capacities) const;
};

struct InteractionRecord {
  StudentId student;
  std::size_t school = 0;
  AttributeVector entry;
  AttributeVector outcome;
  int round = 0;
};

// Append-only log of interactions, ordered by round.
class History {
 public:
  // Throws ContractViolation when the record would break round ordering or
  // duplicate a (student, round) pair.
  void Append(InteractionRecord record);

  std::span<const InteractionRecord> records() const { return records_; }
  // Records with round in [first_round, last_round].
  std::span<const InteractionRecord> RecordsBetween(int first_round,
                                                    int last_round) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<InteractionRecord> records_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool Contains(double x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

// Per-component set of reachable outcomes.
class OutcomeSet {
 public:
  explicit OutcomeSet(std::vector<Interval> intervals)
      : intervals_(std::move(intervals)) {}

  std::span<const Interval> intervals() const { return intervals_; }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  bool Contains(const AttributeVector& outcome) const;

 private:
  std::vector<Interval> intervals_;
};

// [min(entry_i, potential_i), max(entry_i, potential_i)] per component.
OutcomeSet ComputeOutcomeSet(const AttributeVector& entry,
                             const AttributeVector& potential);

double OutcomeValue(const AttributeVector& outcome, Aggregation aggregation);

// Largest value an outcome of the given dimension can take.
double MaxOutcomeValue(std::size_t dimension, Aggregation aggregation);

// value(o) - alpha * (value(o) - value(entry)), shifted down by
// kMaxRating * d for negative-sign schools. The outcome must be reachable
// from `entry` at a school of the given potential.
double SchoolUtility(const AttributeVector& outcome,
                     const AttributeVector& entry,
                     const AttributeVector& potential, double alpha,
                     UtilitySign sign, Aggregation aggregation);

// Students carry no cost, so their utility is the outcome value.
double StudentUtility(const AttributeVector& outcome, Aggregation aggregation);

}  // namespace matchsim

#endif  // MATCHSIM_MARKET_H_
