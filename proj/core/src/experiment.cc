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

#include "matchsim/experiment.h"

#include <cstdio>
#include <memory>
#include <ostream>
#include <span>
#include <system_error>
#include <utility>

#include "matchsim/csv.h"

namespace matchsim {
namespace {

const std::vector<std::string> kSchoolRowHeader = {
    "scenario", "seed", "round", "school", "strategy_level", "utility",
    "n_matched"};
const std::vector<std::string> kStudentRowHeader = {
    "scenario", "seed", "round", "student", "entry", "outcome", "school"};
const std::vector<std::string> kSummaryHeader = {"scenario", "school", "mean",
                                                 "std", "significant"};
const std::vector<std::string> kBestResponseHeader = {
    "step", "mover", "new_level", "school", "level", "mean", "std"};
const std::vector<std::string> kWelfareHeader = {
    "level_a", "level_b", "group", "min_entry", "max_entry", "count",
    "mean_outcome"};

std::string Flag(bool b) { return b ? "true" : "false"; }

std::string Fixed(double x, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, x);
  return buffer;
}

// Lazily opened output files of one experiment.
class Outputs {
 public:
  explicit Outputs(const std::filesystem::path& dir) : dir_(dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
      throw IoError("cannot create output directory " + dir_.string() +
                    (ec ? ": " + ec.message() : ""));
    }
  }

  CsvWriter& SchoolRows() { return Open(school_rows_, "school_utility.csv", kSchoolRowHeader); }
  CsvWriter& StudentRows() { return Open(student_rows_, "students.csv", kStudentRowHeader); }
  CsvWriter& Summary() { return Open(summary_, "summary.csv", kSummaryHeader); }
  CsvWriter& BestResponse() {
    return Open(best_response_, "best_response.csv", kBestResponseHeader);
  }
  CsvWriter& Welfare() { return Open(welfare_, "welfare_grid.csv", kWelfareHeader); }

  void Finish(ExperimentOutcome& outcome) {
    std::vector<std::pair<std::string, std::size_t>> written;
    for (auto* writer : {&school_rows_, &student_rows_, &summary_,
                         &best_response_, &welfare_}) {
      if (!*writer) continue;
      (*writer)->Close();
      outcome.files.push_back((*writer)->path());
      written.emplace_back((*writer)->path().filename().string(),
                           (*writer)->rows());
    }
    CsvWriter manifest(dir_ / "manifest.csv", {"file", "rows"});
    for (const auto& [file, rows] : written) {
      manifest.WriteRow({file, std::to_string(rows)});
    }
    manifest.Close();
    outcome.files.push_back(manifest.path());
  }

 private:
  CsvWriter& Open(std::unique_ptr<CsvWriter>& slot, const char* name,
                  const std::vector<std::string>& header) {
    if (!slot) slot = std::make_unique<CsvWriter>(dir_ / name, header);
    return *slot;
  }

  std::filesystem::path dir_;
  std::unique_ptr<CsvWriter> school_rows_;
  std::unique_ptr<CsvWriter> student_rows_;
  std::unique_ptr<CsvWriter> summary_;
  std::unique_ptr<CsvWriter> best_response_;
  std::unique_ptr<CsvWriter> welfare_;
};

class Runner {
 public:
  Runner(const ExperimentSpec& spec, std::ostream* log)
      : spec_(spec), log_(log), out_(spec.output_dir) {}

  ExperimentOutcome Run() {
    switch (spec_.mode) {
      case ExperimentMode::kSimulate:
        Simulate(spec_, "simulate");
        break;
      case ExperimentMode::kDeviation:
        Deviation(spec_, "");
        break;
      case ExperimentMode::kBestResponse:
        BestResponseRun();
        break;
      case ExperimentMode::kSweep:
        Sweep();
        break;
      case ExperimentMode::kWelfareGrid:
        WelfareGridRun();
        break;
    }
    out_.Finish(outcome_);
    return std::move(outcome_);
  }

 private:
  void Say(std::string line) {
    if (log_) *log_ << line << '\n';
    outcome_.summary.push_back(std::move(line));
  }

  StrategyKind AttackStrategy(const ExperimentSpec& spec, double level) const {
    return level == 0.0 && !spec.attack_threshold
               ? StrategyKind::Truthful()
               : StrategyKind::Attack(level, spec.attack_threshold);
  }

  void WriteRuns(const ExperimentSpec& spec, const std::string& scenario,
                 const SimulationConfig& config,
                 std::span<const SimulationResult> runs) {
    const bool school_rows = spec.RoundRows();
    const bool student_rows = spec.StudentRows();
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const std::string seed = std::to_string(config.seed + i);
      const auto& run = runs[i];
      for (const auto& round : run.rounds) {
        const std::string index =
            std::to_string(round.round - config.warmup() + 1);
        if (school_rows) {
          for (std::size_t s = 0; s < run.schools.size(); ++s) {
            out_.SchoolRows().WriteRow(
                {scenario, seed, index, std::to_string(s),
                 FormatNumber(run.schools[s].strategy.EffectiveLevel()),
                 FormatNumber(round.school_utility[s]),
                 std::to_string(round.n_matched[s])});
          }
        }
        if (student_rows) {
          for (const auto& student : round.students) {
            out_.StudentRows().WriteRow(
                {scenario, seed, index, std::to_string(student.id.value),
                 FormatAttributes(student.entry),
                 FormatAttributes(student.outcome),
                 student.school ? std::to_string(*student.school)
                                : std::string(kUnassigned)});
          }
        }
      }
    }
  }

  // Runs `config` over the spec's seeds, writes per-round rows and returns
  // per-school stats across seeds.
  std::vector<Stats> RunScenario(const ExperimentSpec& spec,
                                 const std::string& scenario,
                                 const SimulationConfig& config) {
    const bool keep = spec.RoundRows() || spec.StudentRows();
    const int n_seeds = spec.analysis.n_seeds;
    if (n_seeds == 1) {
      SimulationResult run = RunSimulation(config);
      WriteRuns(spec, scenario, config, std::span(&run, 1));
      std::vector<Stats> stats;
      std::vector<double> stream(run.rounds.size());
      for (std::size_t s = 0; s < run.schools.size(); ++s) {
        for (std::size_t r = 0; r < run.rounds.size(); ++r) {
          stream[r] = run.rounds[r].school_utility[s];
        }
        stats.push_back({DiscountedMean(stream, spec.analysis.discount), 0.0});
      }
      return stats;
    }
    BatchOptions options;
    options.discount = spec.analysis.discount;
    options.keep_runs = keep;
    BatchResult batch = RunBatch(config, n_seeds, options);
    WriteRuns(spec, scenario, config, batch.runs);
    return batch.school_stats;
  }

  void WriteSummary(const std::string& scenario, std::size_t school,
                    const Stats& stats, bool significant) {
    out_.Summary().WriteRow({scenario, std::to_string(school),
                             FormatNumber(stats.mean), FormatNumber(stats.std),
                             Flag(significant)});
  }

  void Simulate(const ExperimentSpec& spec, const std::string& scenario) {
    SimulationConfig config = spec.analysis.base;
    config.strategies.clear();
    for (double level : spec.school_levels) {
      config.strategies.push_back(AttackStrategy(spec, level));
    }
    const auto stats = RunScenario(spec, scenario, config);
    std::string line = scenario + ":";
    for (std::size_t s = 0; s < stats.size(); ++s) {
      if (spec.analysis.n_seeds > 1) {
        WriteSummary(scenario, s, stats[s], false);
      }
      line += " " + Fixed(stats[s].mean, 3);
    }
    Say(line);
  }

  void Deviation(const ExperimentSpec& spec, const std::string& cell) {
    const std::string prefix = cell.empty() ? "" : cell + "|";
    const std::size_t school = spec.attack_school;
    SimulationConfig truthful = spec.analysis.base;
    truthful.strategies.assign(truthful.n_schools, StrategyKind::Truthful());
    SimulationConfig attack = truthful;
    attack.strategies[school] = StrategyKind::Attack(spec.attack_level,
                                                     spec.attack_threshold);

    const std::string truthful_id = prefix + "truthful";
    const std::string attack_id = prefix + "attack";
    const Stats base = RunScenario(spec, truthful_id, truthful)[school];
    const Stats dev = RunScenario(spec, attack_id, attack)[school];
    const bool significant = IsSignificant(base, dev);
    WriteSummary(truthful_id, school, base, false);
    WriteSummary(attack_id, school, dev, significant);
    const double relative = base.mean != 0.0
                                ? (dev.mean - base.mean) / std::abs(base.mean)
                                : 0.0;
    Say(prefix + "deviation school " + std::to_string(school) + " level " +
        FormatNumber(spec.attack_level) + ": truthful " + Fixed(base.mean, 3) +
        " +- " + Fixed(base.std, 3) + ", attack " + Fixed(dev.mean, 3) +
        " +- " + Fixed(dev.std, 3) + ", change " +
        Fixed(100.0 * relative, 1) + "%" +
        (significant ? " (significant)" : " (not significant)"));
  }

  void WriteBestResponseRows(const std::string& step, const std::string& mover,
                             const std::string& new_level,
                             const std::vector<double>& levels,
                             const std::vector<Stats>& stats) {
    for (std::size_t s = 0; s < levels.size(); ++s) {
      out_.BestResponse().WriteRow({step, mover, new_level, std::to_string(s),
                                    FormatNumber(levels[s]),
                                    FormatNumber(stats[s].mean),
                                    FormatNumber(stats[s].std)});
    }
  }

  void BestResponseRun() {
    const BRTrajectory trajectory = BestResponseDynamics(spec_.analysis);
    WriteBestResponseRows("0", "", "", trajectory.initial_levels,
                          trajectory.initial_stats);
    std::string path;
    for (std::size_t i = 0; i < trajectory.moves.size(); ++i) {
      const auto& move = trajectory.moves[i];
      WriteBestResponseRows(std::to_string(i + 1), std::to_string(move.mover),
                            FormatNumber(move.new_level), move.levels,
                            move.stats);
      path += " " + std::to_string(move.mover) + "->" +
              FormatNumber(move.new_level);
    }
    std::string final_levels;
    for (double level : trajectory.final_levels) {
      final_levels += (final_levels.empty() ? "" : ",") + FormatNumber(level);
    }
    Say("best-response: " + std::to_string(trajectory.moves.size()) +
        " moves" + path + "; final (" + final_levels + ")" +
        (trajectory.nash ? " nash" : " step cap reached"));
  }

  void Sweep() {
    const auto& grid = spec_.grid;
    std::vector<std::size_t> index(grid.size(), 0);
    while (true) {
      ExperimentSpec cell = spec_;
      cell.grid.clear();
      cell.mode = spec_.sweep_experiment == SweepExperiment::kDeviation
                      ? ExperimentMode::kDeviation
                      : ExperimentMode::kSimulate;
      // Per-round rows of deviation cells are opt-in; simulate cells keep
      // the simulate defaults.
      const bool simulate_cells =
          spec_.sweep_experiment == SweepExperiment::kSimulate;
      cell.write_round_rows = spec_.write_round_rows.value_or(simulate_cells);
      cell.write_student_rows =
          spec_.write_student_rows.value_or(simulate_cells);
      for (std::size_t a = 0; a < grid.size(); ++a) {
        ApplySetting(cell, grid[a].key, grid[a].values[index[a]]);
      }
      cell.Validate();
      const std::string id = SweepCellId(grid, index);
      if (spec_.sweep_experiment == SweepExperiment::kDeviation) {
        Deviation(cell, id);
      } else {
        Simulate(cell, id);
      }
      // Odometer increment, last axis fastest.
      std::size_t a = grid.size();
      while (a > 0) {
        --a;
        if (++index[a] < grid[a].values.size()) break;
        index[a] = 0;
        if (a == 0) return;
      }
      if (grid.empty()) return;
    }
  }

  void WelfareGridRun() {
    const auto& analysis = spec_.analysis;
    const std::vector<double>& levels = spec_.welfare_levels.empty()
                                            ? analysis.action_set
                                            : spec_.welfare_levels;
    const auto groups = DefaultWelfareGroups(analysis.base.entry.dimension);
    ProfileEvaluator evaluator(analysis);
    const std::vector<double> truthful(analysis.base.n_schools, 0.0);

    BatchOptions options;
    options.discount = analysis.discount;
    options.keep_runs = true;
    for (double level_a : levels) {
      for (double level_b : levels) {
        std::vector<double> profile = truthful;
        profile[0] = level_a;
        profile[1] = level_b;
        const std::string id =
            "A=" + FormatNumber(level_a) + "|B=" + FormatNumber(level_b);
        const SimulationConfig config =
            WithAttackLevels(analysis.base, profile);
        const BatchResult batch =
            RunBatch(config, analysis.n_seeds, options);
        WriteRuns(spec_, id, config, batch.runs);
        const WelfareReport report = ComputeWelfare(
            PoolWelfare(batch.runs, analysis.base.aggregation), groups);

        const auto& base = profile == truthful ? batch.school_stats
                                               : evaluator.Evaluate(truthful);
        for (std::size_t s = 0; s < batch.school_stats.size(); ++s) {
          WriteSummary(id, s, batch.school_stats[s],
                       profile != truthful &&
                           IsSignificant(batch.school_stats[s], base[s]));
        }
        const std::string a = FormatNumber(level_a);
        const std::string b = FormatNumber(level_b);
        out_.Welfare().WriteRow({a, b, "all", "0",
                                 FormatNumber(MaxOutcomeValue(
                                     analysis.base.entry.dimension,
                                     Aggregation::kSum)),
                                 std::to_string(report.count),
                                 FormatNumber(report.overall_mean)});
        std::string line = id + ": all " + Fixed(report.overall_mean, 3);
        for (const auto& group : report.groups) {
          out_.Welfare().WriteRow(
              {a, b, group.group.name, FormatNumber(group.group.min_entry),
               FormatNumber(group.group.max_entry),
               std::to_string(group.count),
               group.mean_outcome ? FormatNumber(*group.mean_outcome) : ""});
          line += ", " + group.group.name + " " +
                  (group.mean_outcome ? Fixed(*group.mean_outcome, 3) : "-");
        }
        Say(line);
      }
    }
  }

  const ExperimentSpec& spec_;
  std::ostream* log_;
  Outputs out_;
  ExperimentOutcome outcome_;
};

}  // namespace

std::string SweepCellId(const std::vector<SweepAxis>& grid,
                        const std::vector<std::size_t>& index) {
  std::string id;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    if (a > 0) id += '|';
    id += grid[a].key + "=" + grid[a].values[index[a]];
  }
  return id;
}

ExperimentOutcome RunExperiment(const ExperimentSpec& spec,
                                std::ostream* log) {
  spec.Validate();
  return Runner(spec, log).Run();
}

}  // namespace matchsim
