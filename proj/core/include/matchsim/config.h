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

#ifndef MATCHSIM_CONFIG_H_
#define MATCHSIM_CONFIG_H_

// Experiment configuration files: flat `key = value` lines, '#' comments,
// snake_case keys. Unset keys keep their defaults; unknown keys are errors.
//
//   mechanism = DA
//   competition = 1/4
//   grid_trust = 0.5, 1

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matchsim/analysis.h"

namespace matchsim {

enum class ExperimentMode {
  kSimulate,
  kDeviation,
  kBestResponse,
  kSweep,
  kWelfareGrid
};

std::string ToString(ExperimentMode mode);
std::optional<ExperimentMode> ParseExperimentMode(std::string_view name);

// What each sweep cell runs.
enum class SweepExperiment { kDeviation, kSimulate };

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct ExperimentSpec {
  ExperimentMode mode = ExperimentMode::kSimulate;
  // Simulation parameters, seeds, action set and discount.
  AnalysisConfig analysis;
  // Unilateral deviation used by `deviation` and `sweep`.
  std::size_t attack_school = 0;
  double attack_level = 4.0;
  std::optional<double> attack_threshold;
  // Per-school attack levels for `simulate`; empty = all truthful.
  std::vector<double> school_levels;
  // Levels of schools A and B in `welfare-grid`; empty = action set.
  std::vector<double> welfare_levels;
  std::vector<SweepAxis> grid;
  SweepExperiment sweep_experiment = SweepExperiment::kDeviation;
  std::filesystem::path output_dir = "out";
  std::optional<bool> write_round_rows;
  std::optional<bool> write_student_rows;

  // school_utility.csv rows: on for `simulate` and `deviation` unless
  // disabled.
  bool RoundRows() const;
  // students.csv rows: on for `simulate` unless disabled, off otherwise.
  bool StudentRows() const;

  // Throws ConfigError on any inconsistency.
  void Validate() const;
};

// Keys that may be varied by a sweep (`grid_<key>`).
const std::vector<std::string>& SweepableKeys();

// Sets one key; throws ConfigError naming the key and its allowed values.
void ApplySetting(ExperimentSpec& spec, std::string_view key,
                  std::string_view value);

ExperimentSpec ParseConfigText(std::string_view text);
// Reads and parses a config file; a missing file is a ConfigError.
ExperimentSpec ParseConfig(const std::filesystem::path& path);

}  // namespace matchsim

#endif  // MATCHSIM_CONFIG_H_
