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

#include "matchsim/market.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace matchsim {
namespace {

void CheckOnScale(std::span<const double> components) {
  if (components.empty()) {
    throw ContractViolation("attribute vector must have dimension >= 1");
  }
  for (double c : components) {
    if (!(c >= 0.0 && c <= kMaxRating)) {
      throw ContractViolation("attribute component " + std::to_string(c) +
                              " outside [0, 5]");
    }
  }
}

void CheckSameDimension(const AttributeVector& a, const AttributeVector& b) {
  if (a.dimension() != b.dimension()) {
    throw ConfigError("attribute dimension mismatch: " +
                      std::to_string(a.dimension()) + " vs " +
                      std::to_string(b.dimension()));
  }
}

}  // namespace

std::string ToString(Aggregation aggregation) {
  return aggregation == Aggregation::kSum ? "sum" : "min";
}

std::string ToString(UtilitySign sign) {
  return sign == UtilitySign::kPositive ? "positive" : "negative";
}

AttributeVector::AttributeVector(std::vector<double> components)
    : components_(std::move(components)) {
  CheckOnScale(components_);
}

AttributeVector::AttributeVector(std::initializer_list<double> components)
    : AttributeVector(std::vector<double>(components)) {}

AttributeVector AttributeVector::Filled(std::size_t dimension, double value) {
  return AttributeVector(std::vector<double>(dimension, value));
}

WeightedPreference::WeightedPreference(
    StudentId owner, std::vector<double> weights,
    std::span<const std::uint64_t> tie_break_keys)
    : owner_(owner), weights_(std::move(weights)) {
  if (tie_break_keys.size() != weights_.size()) {
    throw ContractViolation("one tie-break key per option is required");
  }
  ranking_.resize(weights_.size());
  std::iota(ranking_.begin(), ranking_.end(), std::size_t{0});
  std::sort(ranking_.begin(), ranking_.end(),
            [&](std::size_t a, std::size_t b) {
              if (weights_[a] != weights_[b]) return weights_[a] > weights_[b];
              if (tie_break_keys[a] != tie_break_keys[b]) {
                return tie_break_keys[a] < tie_break_keys[b];
              }
              return a < b;
            });
  rank_of_.resize(ranking_.size());
  for (std::size_t pos = 0; pos < ranking_.size(); ++pos) {
    rank_of_[ranking_[pos]] = pos;
  }
}

WeightedPreference WeightedPreference::FromRanking(
    StudentId owner, std::span<const std::size_t> ranking) {
  const std::size_t n = ranking.size();
  std::vector<double> weights(n, -1.0);
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (ranking[pos] >= n || weights[ranking[pos]] >= 0.0) {
      throw ContractViolation("ranking must be a permutation of the options");
    }
    weights[ranking[pos]] = static_cast<double>(n - pos);
  }
  std::vector<std::uint64_t> keys(n, 0);
  return WeightedPreference(owner, std::move(weights), keys);
}

std::vector<int> Matching::Occupancy(std::size_t n_schools) const {
  std::vector<int> occupancy(n_schools, 0);
  for (const auto& school : assignment) {
    if (school) ++occupancy.at(*school);
  }
  return occupancy;
}

bool Matching::IsFeasible(std::span<const int> capacities) const {
  for (const auto& school : assignment) {
    if (school && *school >= capacities.size()) return false;
  }
  const auto occupancy = Occupancy(capacities.size());
  for (std::size_t s = 0; s < capacities.size(); ++s) {
    if (occupancy[s] > capacities[s]) return false;
  }
  return true;
}

void History::Append(InteractionRecord record) {
  if (!records_.empty()) {
    const auto& last = records_.back();
    if (record.round < last.round) {
      throw ContractViolation("history records must be appended in round order");
    }
    if (record.round == last.round) {
      auto same_round = RecordsBetween(record.round, record.round);
      for (const auto& r : same_round) {
        if (r.student == record.student) {
          throw ContractViolation("duplicate (student, round) in history");
        }
      }
    }
  }
  records_.push_back(std::move(record));
}

std::span<const InteractionRecord> History::RecordsBetween(
    int first_round, int last_round) const {
  if (first_round > last_round) return {};
  auto by_round = [](const InteractionRecord& r, int round) {
    return r.round < round;
  };
  auto begin = std::lower_bound(records_.begin(), records_.end(), first_round,
                                by_round);
  auto end =
      std::lower_bound(begin, records_.end(), last_round + 1, by_round);
  return {begin, end};
}

bool OutcomeSet::Contains(const AttributeVector& outcome) const {
  if (outcome.dimension() != intervals_.size()) return false;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!intervals_[i].Contains(outcome[i])) return false;
  }
  return true;
}

OutcomeSet ComputeOutcomeSet(const AttributeVector& entry,
                             const AttributeVector& potential) {
  CheckSameDimension(entry, potential);
  std::vector<Interval> intervals;
  intervals.reserve(entry.dimension());
  for (std::size_t i = 0; i < entry.dimension(); ++i) {
    intervals.push_back({std::min(entry[i], potential[i]),
                         std::max(entry[i], potential[i])});
  }
  return OutcomeSet(std::move(intervals));
}

double OutcomeValue(const AttributeVector& outcome, Aggregation aggregation) {
  const auto c = outcome.components();
  if (aggregation == Aggregation::kSum) {
    return std::accumulate(c.begin(), c.end(), 0.0);
  }
  return *std::min_element(c.begin(), c.end());
}

double MaxOutcomeValue(std::size_t dimension, Aggregation aggregation) {
  return aggregation == Aggregation::kSum
             ? kMaxRating * static_cast<double>(dimension)
             : kMaxRating;
}

double SchoolUtility(const AttributeVector& outcome,
                     const AttributeVector& entry,
                     const AttributeVector& potential, double alpha,
                     UtilitySign sign, Aggregation aggregation) {
  CheckSameDimension(outcome, entry);
  if (!ComputeOutcomeSet(entry, potential).Contains(outcome)) {
    throw ContractViolation("outcome outside the reachable outcome set");
  }
  const double value = OutcomeValue(outcome, aggregation);
  double utility =
      value - alpha * (value - OutcomeValue(entry, aggregation));
  if (sign == UtilitySign::kNegative) {
    utility -= kMaxRating * static_cast<double>(outcome.dimension());
  }
  return utility;
}

double StudentUtility(const AttributeVector& outcome,
                      Aggregation aggregation) {
  return OutcomeValue(outcome, aggregation);
}

}  // namespace matchsim
