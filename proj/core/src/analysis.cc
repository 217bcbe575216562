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

#include "matchsim/analysis.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace matchsim {

void AnalysisConfig::Validate() const {
  base.Validate();
  if (n_seeds < 2) throw ConfigError("seeds must be >= 2, got " +
                                     std::to_string(n_seeds));
  if (action_set.empty() ||
      !std::is_sorted(action_set.begin(), action_set.end()) ||
      std::find(action_set.begin(), action_set.end(), 0.0) ==
          action_set.end()) {
    throw ConfigError("action_set must be ascending and contain 0");
  }
  for (double level : action_set) {
    if (!(level >= 0.0 && level <= 100.0)) {
      throw ConfigError("action_set levels must lie in [0, 100]");
    }
  }
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw ConfigError("discount_factor must lie in (0, 1]");
  }
  if (max_passes && *max_passes < 1) {
    throw ConfigError("max_passes must be >= 1");
  }
}

int AnalysisConfig::MaxPasses() const {
  return max_passes.value_or(5 * static_cast<int>(action_set.size()) *
                             base.n_schools);
}

bool IsSignificant(double mean_a, double std_a, double mean_b, double std_b) {
  if (std_a < 0.0 || std_b < 0.0) {
    throw ContractViolation("standard deviations must be >= 0");
  }
  return std::abs(mean_a - mean_b) > std_a + std_b;
}

bool IsSignificant(const Stats& a, const Stats& b) {
  return IsSignificant(a.mean, a.std, b.mean, b.std);
}

SimulationConfig WithAttackLevels(const SimulationConfig& base,
                                  std::span<const double> levels) {
  SimulationConfig config = base;
  config.strategies.clear();
  for (double level : levels) {
    config.strategies.push_back(level == 0.0 ? StrategyKind::Truthful()
                                             : StrategyKind::Attack(level));
  }
  return config;
}

const std::vector<Stats>& ProfileEvaluator::Evaluate(
    const std::vector<double>& levels) {
  if (auto it = cache_.find(levels); it != cache_.end()) return it->second;
  BatchOptions options;
  options.discount = config_.discount;
  auto batch = RunBatch(WithAttackLevels(config_.base, levels),
                        config_.n_seeds, options);
  return cache_.emplace(levels, std::move(batch.school_stats)).first->second;
}

DeviationReport DeviationExperiment(const AnalysisConfig& config,
                                    std::size_t school, double level) {
  config.Validate();
  if (!(level >= 0.0 && level <= 100.0)) {
    throw ConfigError("attack_level must lie in [0, 100]");
  }
  if (school >= static_cast<std::size_t>(config.base.n_schools)) {
    throw ConfigError("attack_school must name an existing school");
  }
  ProfileEvaluator evaluator(config);
  std::vector<double> levels(config.base.n_schools, 0.0);
  DeviationReport report;
  report.school = school;
  report.level = level;
  report.truthful = evaluator.Evaluate(levels)[school];
  levels[school] = level;
  report.deviating = evaluator.Evaluate(levels)[school];
  report.significant_gain = report.deviating.mean > report.truthful.mean &&
                            IsSignificant(report.deviating, report.truthful);
  return report;
}

BestResponseStep BestResponse(const std::vector<double>& levels,
                              std::size_t mover, const AnalysisConfig& config,
                              ProfileEvaluator& evaluator) {
  const Stats current = evaluator.Evaluate(levels)[mover];
  std::vector<double> candidate = levels;
  double best_level = levels[mover];
  Stats best = current;
  bool have_best = false;
  for (double action : config.action_set) {
    candidate[mover] = action;
    const Stats stats = evaluator.Evaluate(candidate)[mover];
    if (!have_best || stats.mean > best.mean) {
      best = stats;
      best_level = action;
      have_best = true;
    }
  }

  BestResponseStep step;
  step.mover = mover;
  step.previous_level = levels[mover];
  step.levels = levels;
  if (best_level != levels[mover] && best.mean > current.mean &&
      IsSignificant(best, current)) {
    step.changed = true;
    step.levels[mover] = best_level;
  }
  step.new_level = step.levels[mover];
  step.stats = evaluator.Evaluate(step.levels);
  return step;
}

BRTrajectory BestResponseDynamics(const AnalysisConfig& config) {
  ProfileEvaluator evaluator(config);
  return BestResponseDynamics(config, evaluator);
}

BRTrajectory BestResponseDynamics(const AnalysisConfig& config,
                                  ProfileEvaluator& evaluator) {
  config.Validate();
  if (config.base.n_schools < 2) {
    throw ConfigError("best-response dynamics needs n_schools >= 2");
  }
  BRTrajectory trajectory;
  std::vector<double> levels(config.base.n_schools, 0.0);
  trajectory.initial_levels = levels;
  trajectory.initial_stats = evaluator.Evaluate(levels);

  const int max_passes = config.MaxPasses();
  while (trajectory.passes < max_passes) {
    ++trajectory.passes;
    bool changed = false;
    for (std::size_t mover = 0; mover < levels.size(); ++mover) {
      BestResponseStep step = BestResponse(levels, mover, config, evaluator);
      if (!step.changed) continue;
      changed = true;
      levels = step.levels;
      trajectory.moves.push_back(std::move(step));
    }
    if (!changed) {
      trajectory.nash = true;
      break;
    }
  }
  trajectory.final_levels = levels;
  trajectory.final_stats = evaluator.Evaluate(levels);
  return trajectory;
}

bool IsNashProfile(const std::vector<double>& levels,
                   const AnalysisConfig& config, ProfileEvaluator& evaluator) {
  for (std::size_t school = 0; school < levels.size(); ++school) {
    const Stats current = evaluator.Evaluate(levels)[school];
    std::vector<double> candidate = levels;
    for (double action : config.action_set) {
      candidate[school] = action;
      const Stats stats = evaluator.Evaluate(candidate)[school];
      if (stats.mean > current.mean && IsSignificant(stats, current)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<WelfareGroup> DefaultWelfareGroups(std::size_t dimension) {
  const double top = kMaxRating * static_cast<double>(dimension);
  return {{"low", 0.0, 0.0}, {"high", 1.0, top - 1.0}, {"top", top, top}};
}

std::vector<WelfareSample> PoolWelfare(std::span<const SimulationResult> runs,
                                       Aggregation aggregation) {
  std::vector<WelfareSample> samples;
  for (const auto& run : runs) {
    for (const auto& round : run.rounds) {
      for (const auto& student : round.students) {
        samples.push_back({OutcomeValue(student.entry, aggregation),
                           OutcomeValue(student.outcome, aggregation)});
      }
    }
  }
  return samples;
}

WelfareReport ComputeWelfare(std::span<const WelfareSample> samples,
                             std::span<const WelfareGroup> groups) {
  WelfareReport report;
  std::vector<double> sums(groups.size(), 0.0);
  report.groups.reserve(groups.size());
  for (const auto& group : groups) report.groups.push_back({group, 0, {}});

  double total = 0.0;
  for (const auto& sample : samples) {
    total += sample.outcome_value;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (sample.entry_value >= groups[g].min_entry &&
          sample.entry_value <= groups[g].max_entry) {
        sums[g] += sample.outcome_value;
        ++report.groups[g].count;
      }
    }
  }
  report.count = samples.size();
  report.overall_mean = samples.empty() ? 0.0 : total / samples.size();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (report.groups[g].count > 0) {
      report.groups[g].mean_outcome =
          sums[g] / static_cast<double>(report.groups[g].count);
    }
  }
  return report;
}

std::vector<WelfareCell> WelfareGrid(const AnalysisConfig& config,
                                     std::span<const double> levels,
                                     std::span<const WelfareGroup> groups) {
  config.Validate();
  if (config.base.n_schools < 2) {
    throw ConfigError("welfare grid needs n_schools >= 2");
  }
  if (levels.empty()) throw ConfigError("welfare grid needs attack levels");
  BatchOptions options;
  options.discount = config.discount;
  options.keep_runs = true;

  std::vector<WelfareCell> cells;
  for (double level_a : levels) {
    for (double level_b : levels) {
      std::vector<double> profile(config.base.n_schools, 0.0);
      profile[0] = level_a;
      profile[1] = level_b;
      const auto batch = RunBatch(WithAttackLevels(config.base, profile),
                                  config.n_seeds, options);
      const auto samples = PoolWelfare(batch.runs, config.base.aggregation);
      cells.push_back({level_a, level_b, ComputeWelfare(samples, groups),
                       batch.school_stats});
    }
  }
  return cells;
}

}  // namespace matchsim
