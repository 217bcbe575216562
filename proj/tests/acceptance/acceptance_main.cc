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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
//   acceptance [output_dir]

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "matchsim/analysis.h"
#include "matchsim/config.h"
#include "matchsim/engine.h"
#include "matchsim/experiment.h"
#include "matchsim/mechanisms.h"
#include "matchsim/prediction.h"
#include "matchsim/strategies.h"
#include "support/oracles.h"

namespace matchsim {
namespace {

namespace fs = std::filesystem;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Num(double x, int digits = 3) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, x);
  return buffer;
}

std::string Percent(double ratio) { return Num(100.0 * ratio, 1) + "%"; }

ExperimentSpec LoadConfig(const std::string& name) {
  return ParseConfig(fs::path(MATCHSIM_CONFIG_DIR) / name);
}

ExperimentSpec With(ExperimentSpec spec,
                    const std::map<std::string, std::string>& settings) {
  for (const auto& [key, value] : settings) ApplySetting(spec, key, value);
  spec.Validate();
  return spec;
}

DeviationReport Deviate(const ExperimentSpec& spec) {
  return DeviationExperiment(spec.analysis, spec.attack_school,
                             spec.attack_level);
}

std::string Describe(const DeviationReport& r) {
  return "truthful " + Num(r.truthful.mean) + " +- " + Num(r.truthful.std) +
         ", attack " + Num(r.deviating.mean) + " +- " + Num(r.deviating.std) +
         ", gain " + Percent(r.RelativeGain()) +
         (r.significant_gain ? " significant" : " not significant");
}

Verdict A1() {
  const auto r = Deviate(LoadConfig("default_deviation.cfg"));
  return {r.significant_gain && r.Gain() > 0.0, Describe(r)};
}

Verdict A2() {
  const auto r = Deviate(LoadConfig("sd_deviation.cfg"));
  return {!r.significant_gain, Describe(r)};
}

Verdict A3() {
  const auto r = Deviate(LoadConfig("da_deviation.cfg"));
  return {r.significant_gain && r.RelativeGain() >= 0.30,
          Describe(r) + " (need >= 30%)"};
}

Verdict A4() {
  const auto base = LoadConfig("default_deviation.cfg");
  bool pass = true;
  std::string detail;
  for (const char* mechanism : {"RSD", "Boston", "DA"}) {
    const auto clean = Deviate(With(base, {{"mechanism", mechanism},
                                           {"prediction_noise", "0.01"},
                                           {"trust", "1"}}));
    const auto noisy = Deviate(With(base, {{"mechanism", mechanism},
                                           {"prediction_noise", "10"},
                                           {"trust", "0.5"}}));
    const bool attenuated = clean.Gain() > noisy.Gain();
    const bool null_needed = std::string(mechanism) != "DA";
    const bool ok = attenuated && (!null_needed || !noisy.significant_gain);
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : "; ") + mechanism + " gain " +
              Num(clean.Gain(), 2) + " -> " + Num(noisy.Gain(), 2) +
              (noisy.significant_gain ? " (noisy significant)" : "");
  }
  return {pass, detail};
}

BatchResult Batch(const ExperimentSpec& spec, bool attack) {
  SimulationConfig config = spec.analysis.base;
  config.strategies.assign(config.n_schools, StrategyKind::Truthful());
  if (attack) {
    config.strategies[spec.attack_school] =
        StrategyKind::Attack(spec.attack_level);
  }
  return RunBatch(config, spec.analysis.n_seeds);
}

Verdict A5() {
  const auto spec = With(LoadConfig("default_deviation.cfg"),
                         {{"competition", "1/4"}, {"utility_sign", "positive"}});
  const auto threshold =
      ComputeThreshold(spec.analysis.base.MakeThresholdPolicy(), 0);
  const auto truthful = Batch(spec, false);
  const auto attack = Batch(spec, true);
  const bool equal = truthful.per_seed_utility == attack.per_seed_utility;
  return {equal && threshold == 5.0,
          "threshold " + Num(threshold, 0) + ", per-seed utilities " +
              (equal ? "identical" : "differ")};
}

Verdict A6() {
  const auto spec = With(LoadConfig("default_deviation.cfg"),
                         {{"competition", "1/4"}, {"utility_sign", "negative"}});
  const auto threshold =
      ComputeThreshold(spec.analysis.base.MakeThresholdPolicy(), 0);
  const auto r = Deviate(spec);
  return {threshold == -1.0 && r.significant_gain && r.Gain() > 0.0,
          "threshold " + Num(threshold, 0) + ", " + Describe(r)};
}

std::string Levels(const std::vector<double>& levels) {
  std::string s = "(";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    s += (i ? "," : "") + Num(levels[i], 0);
  }
  return s + ")";
}

Verdict A7() {
  const auto spec = LoadConfig("best_response.cfg");
  ProfileEvaluator evaluator(spec.analysis);
  const auto trajectory = BestResponseDynamics(spec.analysis, evaluator);
  const std::vector<double> top(spec.analysis.base.n_schools, 100.0);
  const bool nash = trajectory.nash &&
                    IsNashProfile(trajectory.final_levels, spec.analysis,
                                  evaluator);
  bool dominated = true;
  for (std::size_t s = 0; s < trajectory.final_stats.size(); ++s) {
    dominated = dominated &&
                trajectory.final_stats[s].mean < trajectory.initial_stats[s].mean;
  }
  std::string path;
  for (const auto& move : trajectory.moves) {
    path += " " + std::to_string(move.mover) + "->" + Num(move.new_level, 0);
  }
  return {nash && trajectory.final_levels == top && dominated,
          std::to_string(trajectory.moves.size()) + " moves" + path +
              ", terminal " + Levels(trajectory.final_levels) +
              (nash ? " nash" : " not nash") + ", utilities " +
              Num(trajectory.final_stats[0].mean, 2) + "/" +
              Num(trajectory.final_stats[1].mean, 2) + " vs truthful " +
              Num(trajectory.initial_stats[0].mean, 2) + "/" +
              Num(trajectory.initial_stats[1].mean, 2)};
}

// Per-seed welfare reports of one profile.
std::vector<WelfareReport> SeedWelfare(const AnalysisConfig& analysis,
                                       const std::vector<double>& levels) {
  BatchOptions options;
  options.keep_runs = true;
  const auto batch = RunBatch(WithAttackLevels(analysis.base, levels),
                              analysis.n_seeds, options);
  const auto groups = DefaultWelfareGroups(analysis.base.entry.dimension);
  std::vector<WelfareReport> reports;
  for (const auto& run : batch.runs) {
    const auto samples =
        PoolWelfare(std::span(&run, 1), analysis.base.aggregation);
    reports.push_back(ComputeWelfare(samples, groups));
  }
  return reports;
}

Stats GroupStats(const std::vector<WelfareReport>& reports, int group) {
  std::vector<double> values;
  for (const auto& r : reports) {
    values.push_back(group < 0 ? r.overall_mean
                               : r.groups[group].mean_outcome.value_or(0.0));
  }
  return MeanAndStd(values);
}

Verdict A8() {
  const auto spec = LoadConfig("welfare_grid.cfg");
  const std::vector<double> truthful(spec.analysis.base.n_schools, 0.0);
  const std::vector<double> attack(spec.analysis.base.n_schools, 100.0);
  const auto before = SeedWelfare(spec.analysis, truthful);
  const auto after = SeedWelfare(spec.analysis, attack);

  const Stats all_before = GroupStats(before, -1);
  const Stats all_after = GroupStats(after, -1);
  const double drop = (all_before.mean - all_after.mean) / all_before.mean;

  const Stats high_before = GroupStats(before, 1);
  const Stats high_after = GroupStats(after, 1);
  const bool high_kept = !(high_after.mean < high_before.mean &&
                           IsSignificant(high_before, high_after));

  const Stats low_before = GroupStats(before, 0);
  const Stats low_after = GroupStats(after, 0);
  const bool low_significant = low_after.mean < low_before.mean &&
                               IsSignificant(low_before, low_after);
  // Share of the total loss carried by the low group.
  double low_loss = 0.0;
  double total_loss = 0.0;
  for (std::size_t i = 0; i < after.size(); ++i) {
    const auto& g = after[i].groups[0];
    const auto& g0 = before[i].groups[0];
    low_loss += g0.mean_outcome.value_or(0.0) * g0.count -
                g.mean_outcome.value_or(0.0) * g.count;
    total_loss += before[i].overall_mean * before[i].count -
                  after[i].overall_mean * after[i].count;
  }
  const double low_share = total_loss > 0.0 ? low_loss / total_loss : 0.0;

  const bool pass = std::abs(drop - 0.432) <= 0.10 && high_kept &&
                    low_significant && low_share >= 0.9;
  return {pass, "overall drop " + Percent(drop) + " (target 43.2% +- 10pp), "
                "high " + Num(high_before.mean) + " -> " + Num(high_after.mean) +
                ", low " + Num(low_before.mean) + " -> " + Num(low_after.mean) +
                ", low share of loss " + Percent(low_share)};
}

Verdict P1() {
  Rng rng(2024);
  int unstable = 0, inefficient = 0, infeasible = 0;
  const int n = 200;
  for (int t = 0; t < n; ++t) {
    const auto x = oracle::RandomInstance(rng);
    const auto priorities = x.MakePriorities();
    const auto da = DeferredAcceptance(x.preferences, priorities, x.capacities);
    const auto boston = Boston(x.preferences, priorities, x.capacities);
    const auto sd = SerialDictatorship(x.order, x.preferences, x.capacities);
    const auto random_order = oracle::Shuffled(x.preferences.size(), rng);
    const auto rsd =
        SerialDictatorship(random_order, x.preferences, x.capacities);
    if (!oracle::BlockingPairs(x, da.assignment).empty()) ++unstable;
    if (!oracle::ParetoEfficient(x, sd.assignment)) ++inefficient;
    if (!oracle::ParetoEfficient(x, rsd.assignment)) ++inefficient;
    for (const auto* m : {&da, &boston, &sd, &rsd}) {
      if (!oracle::Feasible(m->assignment, x.capacities)) ++infeasible;
    }
  }
  return {unstable == 0 && inefficient == 0 && infeasible == 0,
          std::to_string(n) + " instances: " + std::to_string(unstable) +
              " DA blocking, " + std::to_string(inefficient) +
              " SD/RSD inefficient, " + std::to_string(infeasible) +
              " infeasible"};
}

Verdict P2() {
  Rng rng(77);
  int mismatches = 0, queries = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + t % 3;
    const int records = std::uniform_int_distribution<int>(0, 1000)(rng);
    const int k = std::uniform_int_distribution<int>(1, 10)(rng);
    TrainingSet training(1);
    std::uniform_int_distribution<int> level(0, 5);
    std::uniform_real_distribution<double> value(0.0, 5.0 * d);
    auto entry = [&] {
      std::vector<double> c(d);
      for (auto& v : c) v = level(rng);
      return AttributeVector(std::move(c));
    };
    for (int i = 0; i < records; ++i) training.Add(0, {entry(), value(rng)});
    for (int q = 0; q < 10; ++q) {
      const auto query = entry();
      ++queries;
      if (KnnPredict(training, 0, query, k) !=
          oracle::KnnPredict(training.ForSchool(0), query, k)) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(queries) + " queries on 200 sets, " +
                               std::to_string(mismatches) + " mismatches"};
}

Verdict P3() {
  Rng rng(3);
  std::uniform_real_distribution<double> rating(0.0, 5.0);
  std::uniform_real_distribution<double> level(0.0, 100.0);
  std::uniform_real_distribution<double> threshold(-1.0, 15.0);
  int outside = 0, level_zero_diff = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t d = 1 + i % 3;
    std::vector<double> e(d), p(d);
    for (std::size_t c = 0; c < d; ++c) {
      e[c] = rating(rng);
      p[c] = rating(rng);
    }
    const AttributeVector entry(e), potential(p);
    const double t = threshold(rng);
    const auto set = ComputeOutcomeSet(entry, potential);
    if (!set.Contains(ChooseOutcome(StrategyKind::Attack(level(rng), t),
                                    potential, entry))) {
      ++outside;
    }
    if (ChooseOutcome(StrategyKind::Attack(0.0, t), potential, entry) !=
        ChooseOutcome(StrategyKind::Truthful(), potential, entry)) {
      ++level_zero_diff;
    }
  }
  int replay_diff = 0;
  for (const char* mechanism : {"SD", "RSD", "Boston", "DA"}) {
    auto spec = With(LoadConfig("default_deviation.cfg"),
                     {{"mechanism", mechanism}, {"school_levels",
                      "100, 0, 4, 0, 50, 0, 0, 0, 0, 25"}});
    SimulationConfig config = spec.analysis.base;
    for (double l : spec.school_levels) {
      config.strategies.push_back(l == 0.0 ? StrategyKind::Truthful()
                                           : StrategyKind::Attack(l));
    }
    const auto result = RunSimulation(config);
    std::map<std::pair<int, std::size_t>, double> replay;
    for (const auto& r : result.history.records()) {
      const auto& school = result.schools[r.school];
      replay[{r.round, r.school}] +=
          SchoolUtility(r.outcome, r.entry, school.potential, school.alpha,
                        school.utility_sign, config.aggregation);
    }
    for (const auto& round : result.rounds) {
      for (std::size_t s = 0; s < round.school_utility.size(); ++s) {
        if (round.school_utility[s] != replay[{round.round, s}]) ++replay_diff;
      }
    }
  }
  return {outside == 0 && level_zero_diff == 0 && replay_diff == 0,
          "10000 inputs: " + std::to_string(outside) + " outside set, " +
              std::to_string(level_zero_diff) + " level-0 differences; " +
              std::to_string(replay_diff) + " replay mismatches over 4 runs"};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict P4(const fs::path& out) {
  const fs::path a = out / "p4_a";
  const fs::path b = out / "p4_b";
  fs::remove_all(a);
  fs::remove_all(b);
  int files = 0, differing = 0;
  for (const char* name : {"default_deviation.cfg", "simulate.cfg"}) {
    auto spec = With(LoadConfig(name), {{"seeds", "2"}, {"rounds", "20"}});
    if (spec.mode == ExperimentMode::kSimulate) {
      spec = With(spec, {{"seeds", "1"}});
    }
    const fs::path sub = fs::path(name).stem();
    spec.output_dir = a / sub;
    RunExperiment(spec);
    spec.output_dir = b / sub;
    RunExperiment(spec);
    for (const auto& entry : fs::directory_iterator(a / sub)) {
      ++files;
      if (Slurp(entry.path()) != Slurp(b / sub / entry.path().filename())) {
        ++differing;
      }
    }
  }
  return {files > 0 && differing == 0,
          std::to_string(files) + " files compared, " +
              std::to_string(differing) + " differ"};
}

}  // namespace
}  // namespace matchsim

int main(int argc, char** argv) {
  using matchsim::Verdict;
  const std::filesystem::path out =
      argc > 1 ? argv[1] : std::filesystem::temp_directory_path() /
                               "matchsim_acceptance";
  std::filesystem::create_directories(out);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"A1", matchsim::A1}, {"A2", matchsim::A2}, {"A3", matchsim::A3},
      {"A4", matchsim::A4}, {"A5", matchsim::A5}, {"A6", matchsim::A6},
      {"A7", matchsim::A7}, {"A8", matchsim::A8}, {"P1", matchsim::P1},
      {"P2", matchsim::P2}, {"P3", matchsim::P3},
      {"P4", [&] { return matchsim::P4(out); }},
  };
  int failed = 0;
  for (const auto& [id, check] : criteria) {
    Verdict verdict;
    try {
      verdict = check();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    if (!verdict.pass) ++failed;
    std::cout << (verdict.pass ? "PASS " : "FAIL ") << id << ": "
              << verdict.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
