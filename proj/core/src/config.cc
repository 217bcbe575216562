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

#include "matchsim/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "matchsim/csv.h"

namespace matchsim {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Reject(std::string_view key, std::string_view value,
                         std::string_view allowed) {
  throw ConfigError(std::string(key) + ": invalid value '" +
                    std::string(value) + "'; allowed " +
                    std::string(allowed));
}

double ParseNumber(std::string_view key, std::string_view value,
                   std::string_view allowed) {
  double parsed = 0.0;
  const auto text = Trim(value);
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), parsed);
  if (ec != std::errc() || end != text.data() + text.size() ||
      !std::isfinite(parsed)) {
    Reject(key, value, allowed);
  }
  return parsed;
}

double ParseInRange(std::string_view key, std::string_view value, double lo,
                    double hi, bool hi_open = false) {
  const std::string allowed =
      "[" + FormatNumber(lo) + ", " + FormatNumber(hi) + (hi_open ? ")" : "]");
  const double x = ParseNumber(key, value, allowed);
  if (x < lo || x > hi || (hi_open && x == hi)) Reject(key, value, allowed);
  return x;
}

int ParseInteger(std::string_view key, std::string_view value, int lo) {
  const std::string allowed = "integer >= " + std::to_string(lo);
  int parsed = 0;
  const auto text = Trim(value);
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), parsed);
  if (ec != std::errc() || end != text.data() + text.size() || parsed < lo) {
    Reject(key, value, allowed);
  }
  return parsed;
}

bool ParseBool(std::string_view key, std::string_view value) {
  const auto text = Trim(value);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  Reject(key, value, "true or false");
}

// Accepts decimals and fractions such as "1/4".
double ParseRatio(std::string_view key, std::string_view value) {
  const std::string allowed = "positive number or fraction a/b";
  const auto text = Trim(value);
  const auto slash = text.find('/');
  double x = 0.0;
  if (slash == std::string_view::npos) {
    x = ParseNumber(key, text, allowed);
  } else {
    const double num = ParseNumber(key, text.substr(0, slash), allowed);
    const double den = ParseNumber(key, text.substr(slash + 1), allowed);
    if (den == 0.0) Reject(key, value, allowed);
    x = num / den;
  }
  if (!(x > 0.0)) Reject(key, value, allowed);
  return x;
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = Trim(value.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    if (!item.empty()) items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::vector<double> ParseLevels(std::string_view key, std::string_view value) {
  std::vector<double> levels;
  for (const auto& item : SplitList(value)) {
    levels.push_back(ParseInRange(key, item, 0.0, 100.0));
  }
  if (levels.empty()) Reject(key, value, "comma-separated levels in [0, 100]");
  return levels;
}

using Setter = std::function<void(ExperimentSpec&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      {"mode",
       [](ExperimentSpec& s, std::string_view v) {
         auto mode = ParseExperimentMode(Trim(v));
         if (!mode) {
           Reject("mode", v,
                  "simulate, deviation, best-response, sweep, welfare-grid");
         }
         s.mode = *mode;
       }},
      {"n_schools",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.n_schools = ParseInteger("n_schools", v, 1);
       }},
      {"students_per_school",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.students_per_school =
             ParseInteger("students_per_school", v, 1);
       }},
      {"competition",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.competition = ParseRatio("competition", v);
       }},
      {"attribute_mean",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.entry.mean =
             ParseNumber("attribute_mean", v, "finite number");
       }},
      {"attribute_std",
       [](ExperimentSpec& s, std::string_view v) {
         const double x = ParseNumber("attribute_std", v, "number > 0");
         if (!(x > 0.0)) Reject("attribute_std", v, "number > 0");
         s.analysis.base.entry.stddev = x;
       }},
      {"n_dimensions",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.entry.dimension =
             static_cast<std::size_t>(ParseInteger("n_dimensions", v, 1));
       }},
      {"value_aggregation",
       [](ExperimentSpec& s, std::string_view v) {
         const auto t = Trim(v);
         if (t == "sum") {
           s.analysis.base.aggregation = Aggregation::kSum;
         } else if (t == "min") {
           s.analysis.base.aggregation = Aggregation::kMin;
         } else {
           Reject("value_aggregation", v, "sum or min");
         }
       }},
      {"school_potential",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.school_potential =
             ParseInRange("school_potential", v, 0.0, kMaxRating);
       }},
      {"alpha",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.alpha = ParseInRange("alpha", v, 0.0, 1.0, true);
       }},
      {"utility_sign",
       [](ExperimentSpec& s, std::string_view v) {
         const auto t = Trim(v);
         if (t == "positive") {
           s.analysis.base.utility_sign = UtilitySign::kPositive;
         } else if (t == "negative") {
           s.analysis.base.utility_sign = UtilitySign::kNegative;
         } else {
           Reject("utility_sign", v, "positive or negative");
         }
       }},
      {"mechanism",
       [](ExperimentSpec& s, std::string_view v) {
         auto type = ParseMechanismType(Trim(v));
         if (!type) Reject("mechanism", v, "SD, RSD, Boston or DA");
         s.analysis.base.mechanism.type = *type;
       }},
      {"school_side",
       [](ExperimentSpec& s, std::string_view v) {
         auto side = ParseSchoolSide(Trim(v));
         if (!side) Reject("school_side", v, "lottery or true_preference");
         s.analysis.base.mechanism.school_side = *side;
       }},
      {"common_lottery",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.common_lottery = ParseBool("common_lottery", v);
       }},
      {"prediction_noise",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.predictor.noise_pct =
             ParseInRange("prediction_noise", v, 0.0, 100.0);
       }},
      {"training_window",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.predictor.window =
             ParseInteger("training_window", v, 1);
       }},
      {"knn_k",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.predictor.k = ParseInteger("knn_k", v, 1);
       }},
      {"trust",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.trust = ParseInRange("trust", v, 0.0, 1.0);
       }},
      {"observation_noise",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.observation_noise_pct =
             ParseInRange("observation_noise", v, 0.0, 100.0);
       }},
      {"rounds",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.rounds = ParseInteger("rounds", v, 1);
       }},
      {"warmup_rounds",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.warmup_rounds = ParseInteger("warmup_rounds", v, 1);
       }},
      {"seed",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.base.seed =
             static_cast<std::uint64_t>(ParseInteger("seed", v, 0));
       }},
      {"seeds",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.n_seeds = ParseInteger("seeds", v, 1);
       }},
      {"attack_level",
       [](ExperimentSpec& s, std::string_view v) {
         s.attack_level = ParseInRange("attack_level", v, 0.0, 100.0);
       }},
      {"attack_school",
       [](ExperimentSpec& s, std::string_view v) {
         s.attack_school =
             static_cast<std::size_t>(ParseInteger("attack_school", v, 0));
       }},
      {"attack_threshold",
       [](ExperimentSpec& s, std::string_view v) {
         if (Trim(v) == "auto") {
           s.attack_threshold.reset();
         } else {
           s.attack_threshold =
               ParseNumber("attack_threshold", v, "number or auto");
         }
       }},
      {"school_levels",
       [](ExperimentSpec& s, std::string_view v) {
         s.school_levels = ParseLevels("school_levels", v);
       }},
      {"action_set",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.action_set = ParseLevels("action_set", v);
       }},
      {"discount_factor",
       [](ExperimentSpec& s, std::string_view v) {
         const double x = ParseInRange("discount_factor", v, 0.0, 1.0);
         if (x == 0.0) Reject("discount_factor", v, "(0, 1]");
         s.analysis.discount = x;
       }},
      {"max_passes",
       [](ExperimentSpec& s, std::string_view v) {
         s.analysis.max_passes = ParseInteger("max_passes", v, 1);
       }},
      {"welfare_levels",
       [](ExperimentSpec& s, std::string_view v) {
         s.welfare_levels = ParseLevels("welfare_levels", v);
       }},
      {"sweep_experiment",
       [](ExperimentSpec& s, std::string_view v) {
         const auto t = Trim(v);
         if (t == "deviation") {
           s.sweep_experiment = SweepExperiment::kDeviation;
         } else if (t == "simulate") {
           s.sweep_experiment = SweepExperiment::kSimulate;
         } else {
           Reject("sweep_experiment", v, "deviation or simulate");
         }
       }},
      {"output_dir",
       [](ExperimentSpec& s, std::string_view v) {
         if (Trim(v).empty()) Reject("output_dir", v, "non-empty path");
         s.output_dir = std::string(Trim(v));
       }},
      {"write_round_rows",
       [](ExperimentSpec& s, std::string_view v) {
         s.write_round_rows = ParseBool("write_round_rows", v);
       }},
      {"write_student_rows",
       [](ExperimentSpec& s, std::string_view v) {
         s.write_student_rows = ParseBool("write_student_rows", v);
       }},
  };
  return *setters;
}

}  // namespace

std::string ToString(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::kSimulate:
      return "simulate";
    case ExperimentMode::kDeviation:
      return "deviation";
    case ExperimentMode::kBestResponse:
      return "best-response";
    case ExperimentMode::kSweep:
      return "sweep";
    case ExperimentMode::kWelfareGrid:
      return "welfare-grid";
  }
  return "?";
}

std::optional<ExperimentMode> ParseExperimentMode(std::string_view name) {
  for (auto mode : {ExperimentMode::kSimulate, ExperimentMode::kDeviation,
                    ExperimentMode::kBestResponse, ExperimentMode::kSweep,
                    ExperimentMode::kWelfareGrid}) {
    if (ToString(mode) == name) return mode;
  }
  return std::nullopt;
}

bool ExperimentSpec::RoundRows() const {
  return write_round_rows.value_or(mode == ExperimentMode::kSimulate ||
                                   mode == ExperimentMode::kDeviation);
}

bool ExperimentSpec::StudentRows() const {
  return write_student_rows.value_or(mode == ExperimentMode::kSimulate);
}

void ExperimentSpec::Validate() const {
  analysis.base.Validate();
  const bool single_runs =
      mode == ExperimentMode::kSimulate ||
      (mode == ExperimentMode::kSweep &&
       sweep_experiment == SweepExperiment::kSimulate);
  if (!single_runs) analysis.Validate();
  if (analysis.n_seeds < 1) throw ConfigError("seeds must be >= 1");
  const auto n_schools = static_cast<std::size_t>(analysis.base.n_schools);
  if (attack_school >= n_schools) {
    throw ConfigError("attack_school out of range; allowed [0, " +
                      std::to_string(n_schools - 1) + "]");
  }
  if (!school_levels.empty() && school_levels.size() != n_schools) {
    throw ConfigError("school_levels must list one level per school (" +
                      std::to_string(n_schools) + ")");
  }
  if ((mode == ExperimentMode::kBestResponse ||
       mode == ExperimentMode::kWelfareGrid) &&
      n_schools < 2) {
    throw ConfigError("n_schools must be >= 2 for " + ToString(mode));
  }
  if (mode == ExperimentMode::kSweep && grid.empty()) {
    throw ConfigError("sweep needs at least one grid_<key> entry");
  }
  for (const auto& axis : grid) {
    if (axis.values.empty()) {
      throw ConfigError("grid_" + axis.key + " has no values");
    }
  }
}

const std::vector<std::string>& SweepableKeys() {
  static const auto* keys = new std::vector<std::string>{
      "n_schools",       "attribute_mean",  "attribute_std",
      "competition",     "utility_sign",    "alpha",
      "mechanism",       "prediction_noise", "training_window",
      "knn_k",           "trust",           "attack_level"};
  return *keys;
}

void ApplySetting(ExperimentSpec& spec, std::string_view key,
                  std::string_view value) {
  constexpr std::string_view kGridPrefix = "grid_";
  if (key.substr(0, kGridPrefix.size()) == kGridPrefix) {
    const std::string axis_key(key.substr(kGridPrefix.size()));
    const auto& sweepable = SweepableKeys();
    if (std::find(sweepable.begin(), sweepable.end(), axis_key) ==
        sweepable.end()) {
      throw ConfigError(std::string(key) +
                        ": not a sweepable key; allowed grid_ + one of "
                        "n_schools, attribute_mean, attribute_std, "
                        "competition, utility_sign, alpha, mechanism, "
                        "prediction_noise, training_window, knn_k, trust, "
                        "attack_level");
    }
    SweepAxis axis{axis_key, SplitList(value)};
    if (axis.values.empty()) Reject(key, value, "comma-separated values");
    // Check every value now so errors point at the config line.
    for (const auto& item : axis.values) {
      ExperimentSpec scratch = spec;
      ApplySetting(scratch, axis_key, item);
    }
    auto existing = std::find_if(spec.grid.begin(), spec.grid.end(),
                                 [&](const SweepAxis& a) {
                                   return a.key == axis_key;
                                 });
    if (existing != spec.grid.end()) {
      *existing = std::move(axis);
    } else {
      spec.grid.push_back(std::move(axis));
    }
    return;
  }
  const auto& setters = Setters();
  auto it = setters.find(key);
  if (it == setters.end()) {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
  it->second(spec, value);
}

ExperimentSpec ParseConfigText(std::string_view text) {
  ExperimentSpec spec;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_number) +
                        ": expected 'key = value'");
    }
    const auto key = Trim(line.substr(0, eq));
    const auto value = Trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_number) +
                        ": missing key");
    }
    try {
      ApplySetting(spec, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_number) + ": " +
                        e.what());
    }
  }
  spec.Validate();
  return spec;
}

ExperimentSpec ParseConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

}  // namespace matchsim
