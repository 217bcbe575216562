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

#ifndef MATCHSIM_ANALYSIS_H_
#define MATCHSIM_ANALYSIS_H_

// Experiments on top of the engine: unilateral deviation, iterated best
// response over a finite grid of attack levels, and student welfare.
//
// All comparisons use the batch significance rule: two batch means differ
// significantly when they are more than the sum of their standard
// deviations apart.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchsim/engine.h"

namespace matchsim {

struct AnalysisConfig {
  SimulationConfig base;
  int n_seeds = 20;
  // Attack levels a school may choose; ascending and containing 0.
  std::vector<double> action_set{0, 25, 50, 75, 100};
  // Weight of round r in a school's score is discount^r; 1 reports the
  // plain per-round mean.
  double discount = 1.0;
  // Full round-robin passes allowed in best-response dynamics; defaults to
  // 5 * |action_set| * n_schools.
  std::optional<int> max_passes;

  void Validate() const;
  int MaxPasses() const;
};

bool IsSignificant(double mean_a, double std_a, double mean_b, double std_b);
bool IsSignificant(const Stats& a, const Stats& b);

// Base config with school s playing levels[s] (0 = truthful) and thresholds
// left to be derived.
SimulationConfig WithAttackLevels(const SimulationConfig& base,
                                  std::span<const double> levels);

// Memoized batch evaluation of attack-level profiles. Every profile is run
// on the same seed set, so comparisons between profiles are paired.
class ProfileEvaluator {
 public:
  explicit ProfileEvaluator(const AnalysisConfig& config) : config_(config) {}

  const std::vector<Stats>& Evaluate(const std::vector<double>& levels);
  std::size_t evaluations() const { return cache_.size(); }

 private:
  const AnalysisConfig& config_;
  std::map<std::vector<double>, std::vector<Stats>> cache_;
};

struct DeviationReport {
  std::size_t school = 0;
  double level = 0.0;
  Stats truthful;
  Stats deviating;
  bool significant_gain = false;

  double Gain() const { return deviating.mean - truthful.mean; }
  double RelativeGain() const { return Gain() / std::abs(truthful.mean); }
};

// All-truthful versus `school` attacking at `level` while the others stay
// truthful, over the same seeds.
DeviationReport DeviationExperiment(const AnalysisConfig& config,
                                    std::size_t school, double level);

struct BestResponseStep {
  std::size_t mover = 0;
  double previous_level = 0.0;
  double new_level = 0.0;
  bool changed = false;
  // Profile and per-school stats after the step.
  std::vector<double> levels;
  std::vector<Stats> stats;
};

// Evaluates every action of `mover` with the others fixed. Moves to the
// action with the highest mean when it beats the current action
// significantly; equal means resolve to the lowest level.
BestResponseStep BestResponse(const std::vector<double>& levels,
                              std::size_t mover, const AnalysisConfig& config,
                              ProfileEvaluator& evaluator);

struct BRTrajectory {
  std::vector<double> initial_levels;
  std::vector<Stats> initial_stats;
  // Only the steps that changed a school's level.
  std::vector<BestResponseStep> moves;
  std::vector<double> final_levels;
  std::vector<Stats> final_stats;
  bool nash = false;
  int passes = 0;
};

// Round-robin best responses in school order from the all-zero profile
// until a full pass changes nothing (nash = true) or MaxPasses() is hit.
BRTrajectory BestResponseDynamics(const AnalysisConfig& config);
BRTrajectory BestResponseDynamics(const AnalysisConfig& config,
                                  ProfileEvaluator& evaluator);

// True when no school has an action in the action set that beats its
// current one significantly.
bool IsNashProfile(const std::vector<double>& levels,
                   const AnalysisConfig& config, ProfileEvaluator& evaluator);

struct WelfareGroup {
  std::string name;
  // Inclusive range of entry values.
  double min_entry = 0.0;
  double max_entry = 0.0;
};

// low (entry 0), high (1 to 5d-1), top (5d): a partition of the entry scale.
std::vector<WelfareGroup> DefaultWelfareGroups(std::size_t dimension = 1);

struct WelfareSample {
  double entry_value = 0.0;
  double outcome_value = 0.0;
};

// Every student of every measured round; unassigned students count with
// their entry as outcome.
std::vector<WelfareSample> PoolWelfare(std::span<const SimulationResult> runs,
                                       Aggregation aggregation);

struct GroupWelfare {
  WelfareGroup group;
  std::size_t count = 0;
  // Empty when no student fell in the group.
  std::optional<double> mean_outcome;
};

struct WelfareReport {
  std::vector<GroupWelfare> groups;
  std::size_t count = 0;
  double overall_mean = 0.0;
};

WelfareReport ComputeWelfare(std::span<const WelfareSample> samples,
                             std::span<const WelfareGroup> groups);

struct WelfareCell {
  double level_a = 0.0;
  double level_b = 0.0;
  WelfareReport welfare;
  std::vector<Stats> school_stats;
};

// Schools 0 and 1 attack at every pair of `levels`; other schools stay
// truthful. Cells are ordered by (level_a, level_b).
std::vector<WelfareCell> WelfareGrid(const AnalysisConfig& config,
                                     std::span<const double> levels,
                                     std::span<const WelfareGroup> groups);

}  // namespace matchsim

#endif  // MATCHSIM_ANALYSIS_H_
