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

#ifndef MATCHSIM_EXPERIMENT_H_
#define MATCHSIM_EXPERIMENT_H_

// Runs an ExperimentSpec and writes its CSV outputs.
//
// Files (all UTF-8, LF, header row first, deterministic row order):
//   school_utility.csv  scenario,seed,round,school,strategy_level,utility,n_matched
//   students.csv        scenario,seed,round,student,entry,outcome,school
//   summary.csv         scenario,school,mean,std,significant
//   best_response.csv   step,mover,new_level,school,level,mean,std
//   welfare_grid.csv    level_a,level_b,group,min_entry,max_entry,count,mean_outcome
//   manifest.csv        file,rows   (written last)
//
// `round` counts measured rounds from 1; warm-up rounds are not written.
// Unassigned students have school "⊥". Multi-dimensional attributes are
// written as ';'-joined components.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "matchsim/config.h"
#include "matchsim/csv.h"

namespace matchsim {

inline constexpr char kUnassigned[] = "\xe2\x8a\xa5";  // U+22A5 in UTF-8

struct ExperimentOutcome {
  // One line per scenario, also echoed to the log stream.
  std::vector<std::string> summary;
  // Files written, manifest last.
  std::vector<std::filesystem::path> files;
};

// Validates `spec`, runs it and writes the applicable files into
// spec.output_dir. Throws ConfigError for invalid specs and IoError when the
// output cannot be written.
ExperimentOutcome RunExperiment(const ExperimentSpec& spec,
                                std::ostream* log = nullptr);

// Scenario id of a sweep cell: "key=value|key=value".
std::string SweepCellId(const std::vector<SweepAxis>& grid,
                        const std::vector<std::size_t>& index);

}  // namespace matchsim

#endif  // MATCHSIM_EXPERIMENT_H_
