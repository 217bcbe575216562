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

#ifndef MATCHSIM_ENGINE_H_
#define MATCHSIM_ENGINE_H_

// The repeated market: every round a fresh cohort of students arrives, forms
// preferences from predictions and prestige, gets matched, and is taught by
// the schools, whose chosen outcomes feed the next round's predictions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "matchsim/market.h"
#include "matchsim/mechanisms.h"
#include "matchsim/population.h"
#include "matchsim/prediction.h"
#include "matchsim/strategies.h"

namespace matchsim {

struct SimulationConfig {
  int n_schools = 10;
  // Students per round = students_per_school * n_schools.
  int students_per_school = 20;
  // Students per available seat; capacity = students_per_school / competition.
  double competition = 1.0;
  EntryDistribution entry{1.0, 3.0, 1};
  double school_potential = kMaxRating;
  double alpha = 0.95;
  UtilitySign utility_sign = UtilitySign::kPositive;
  Aggregation aggregation = Aggregation::kSum;
  MechanismKind mechanism;
  // One lottery shared by all schools instead of one per school.
  bool common_lottery = false;
  PredictorConfig predictor;
  double trust = 1.0;
  // Half-width of the noise on students' prestige observations, percent.
  double observation_noise_pct = 1.0;
  // One entry per school; empty means everyone is truthful.
  std::vector<StrategyKind> strategies;
  // Measured rounds.
  int rounds = 100;
  // Defaults to predictor.window.
  std::optional<int> warmup_rounds;
  std::uint64_t seed = 0;

  int n_students() const { return students_per_school * n_schools; }
  int capacity() const;
  int warmup() const { return warmup_rounds.value_or(predictor.window); }
  StrategyKind StrategyOf(std::size_t school) const;

  // Throws ConfigError naming the offending field.
  void Validate() const;

  ThresholdPolicy MakeThresholdPolicy() const;
  // Schools with attack thresholds resolved.
  std::vector<School> MakeSchools() const;
};

struct StudentOutcome {
  StudentId id;
  AttributeVector entry;
  // Equals `entry` for unassigned students.
  AttributeVector outcome;
  std::optional<std::size_t> school;
};

struct RoundResult {
  // Absolute round index, warm-up rounds included.
  int round = 0;
  bool warmup = false;
  Matching matching;
  // Sum of school utility over each school's matched students.
  std::vector<double> school_utility;
  std::vector<int> n_matched;
  std::vector<StudentOutcome> students;
};

struct SimulationResult {
  // Measured rounds only, in order.
  std::vector<RoundResult> rounds;
  // Per-school mean of the per-round utility over the measured rounds.
  std::vector<double> mean_utility;
  // Full interaction log, warm-up included.
  History history;
  std::vector<School> schools;
};

// n students of round `round` with ids first_id, first_id + 1, ...
std::vector<Student> SampleStudents(int n, const EntryDistribution& entry,
                                    int round, std::int64_t first_id,
                                    Rng& rng);

// Sequential state of one simulation run.
class Simulation {
 public:
  explicit Simulation(SimulationConfig config);

  // Plays the next round (warm-up first) and records its interactions.
  RoundResult RunRound();

  int round() const { return round_; }
  const History& history() const { return history_; }
  const std::vector<School>& schools() const { return schools_; }
  const SimulationConfig& config() const { return config_; }
  History TakeHistory() { return std::move(history_); }

 private:
  Matching MatchWarmup(std::span<const Student> students) const;
  Matching MatchRound(std::span<const Student> students);

  SimulationConfig config_;
  std::vector<School> schools_;
  std::vector<int> capacities_;
  double prestige_fallback_ = 0.0;
  int round_ = 0;
  History history_;
};

// Warm-up rounds followed by config.rounds measured rounds.
SimulationResult RunSimulation(const SimulationConfig& config);

struct Stats {
  double mean = 0.0;
  // Sample standard deviation (n - 1 denominator); 0 for a single value.
  double std = 0.0;
};

Stats MeanAndStd(std::span<const double> values);

// Discount-weighted mean of a utility stream: sum_r b^r u_r / sum_r b^r.
// b = 1 gives the plain mean.
double DiscountedMean(std::span<const double> per_round, double discount);

struct BatchOptions {
  double discount = 1.0;
  bool keep_runs = false;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct BatchResult {
  std::vector<std::uint64_t> seeds;
  // [seed index][school]: discounted mean per-round utility.
  std::vector<std::vector<double>> per_seed_utility;
  std::vector<Stats> school_stats;
  // Present when BatchOptions::keep_runs is set, in seed order.
  std::vector<SimulationResult> runs;
};

// Runs seeds config.seed + i for i in [0, n_seeds). Seeds may run
// concurrently; results are always assembled in seed order.
BatchResult RunBatch(const SimulationConfig& config, int n_seeds,
                     const BatchOptions& options = {});

}  // namespace matchsim

#endif  // MATCHSIM_ENGINE_H_
