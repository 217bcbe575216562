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

#include "matchsim/engine.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "matchsim/rng.h"

namespace matchsim {
namespace {

std::string Shortest(double x) {
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return ec == std::errc() ? std::string(buffer, end) : std::to_string(x);
}

std::string Range(double lo, double hi) {
  return "[" + Shortest(lo) + ", " + Shortest(hi) + "]";
}

void Require(bool ok, const std::string& key, const std::string& allowed) {
  if (!ok) throw ConfigError(key + " out of range; allowed " + allowed);
}

Priorities LotteryPriorities(std::size_t n_students, std::size_t n_schools,
                             bool common, std::uint64_t seed, int round) {
  std::vector<std::vector<std::size_t>> orders;
  orders.reserve(n_schools);
  for (std::size_t s = 0; s < n_schools; ++s) {
    if (common && s > 0) {
      orders.push_back(orders.front());
      continue;
    }
    Rng rng = Substream(seed, round, StreamPhase::kLottery, s);
    orders.push_back(Lottery(n_students, rng));
  }
  return Priorities(std::move(orders));
}

// Schools rank students by the utility they bring, which for every school
// is increasing in the entry value; a per-school lottery breaks ties.
Priorities TruePreferencePriorities(std::span<const Student> students,
                                    std::size_t n_schools,
                                    Aggregation aggregation,
                                    std::uint64_t seed, int round) {
  std::vector<std::vector<std::size_t>> orders;
  orders.reserve(n_schools);
  for (std::size_t s = 0; s < n_schools; ++s) {
    Rng rng = Substream(seed, round, StreamPhase::kLottery, s);
    orders.push_back(StudentOrdering(OrderingMode::kEntryLevel, students,
                                     aggregation, rng));
  }
  return Priorities(std::move(orders));
}

}  // namespace

int SimulationConfig::capacity() const {
  return static_cast<int>(std::lround(students_per_school / competition));
}

StrategyKind SimulationConfig::StrategyOf(std::size_t school) const {
  return strategies.empty() ? StrategyKind::Truthful()
                            : strategies.at(school);
}

void SimulationConfig::Validate() const {
  Require(n_schools >= 1, "n_schools", ">= 1");
  Require(students_per_school >= 1, "students_per_school", ">= 1");
  Require(competition > 0.0 && std::isfinite(competition), "competition",
          "> 0");
  Require(capacity() >= 1, "competition",
          "<= students_per_school (capacity must be >= 1)");
  const double implied = static_cast<double>(capacity()) * n_schools *
                         competition;
  Require(std::abs(implied - n_students()) <= 0.5 * n_schools * competition,
          "competition", "values for which capacity * n_schools * competition "
                         "matches the number of students");
  Require(entry.stddev > 0.0, "attribute_std", "> 0");
  Require(std::isfinite(entry.mean), "attribute_mean", "finite");
  Require(entry.dimension >= 1, "n_dimensions", ">= 1");
  Require(school_potential >= 0.0 && school_potential <= kMaxRating,
          "school_potential", Range(0, kMaxRating));
  Require(alpha >= 0.0 && alpha < 1.0, "alpha", "[0, 1)");
  predictor.Validate();
  Require(trust >= 0.0 && trust <= 1.0, "trust", Range(0, 1));
  Require(observation_noise_pct >= 0.0, "observation_noise", ">= 0");
  Require(rounds >= 1, "rounds", ">= 1");
  Require(warmup() >= predictor.window, "warmup_rounds",
          ">= training_window (" + std::to_string(predictor.window) + ")");
  Require(strategies.empty() ||
              strategies.size() == static_cast<std::size_t>(n_schools),
          "strategies", "one per school");
  for (const auto& strategy : strategies) {
    Require(strategy.level >= 0.0 && strategy.level <= 100.0, "attack_level",
            Range(0, 100));
  }
}

ThresholdPolicy SimulationConfig::MakeThresholdPolicy() const {
  return {entry, n_students(), std::vector<int>(n_schools, capacity()),
          utility_sign};
}

std::vector<School> SimulationConfig::MakeSchools() const {
  const auto policy = MakeThresholdPolicy();
  std::vector<School> schools(n_schools);
  for (int s = 0; s < n_schools; ++s) {
    School& school = schools[s];
    school.id = s;
    school.potential = AttributeVector::Filled(entry.dimension, school_potential);
    school.capacity = capacity();
    school.alpha = alpha;
    school.utility_sign = utility_sign;
    school.strategy = StrategyOf(s);
    if (school.strategy.kind == StrategyKind::Kind::kAttack &&
        !school.strategy.threshold) {
      school.strategy.threshold = ComputeThreshold(policy, s);
    }
  }
  return schools;
}

std::vector<Student> SampleStudents(int n, const EntryDistribution& entry,
                                    int round, std::int64_t first_id,
                                    Rng& rng) {
  std::vector<Student> students;
  students.reserve(n);
  for (int i = 0; i < n; ++i) {
    students.push_back({StudentId{first_id + i}, entry.Sample(rng), round});
  }
  return students;
}

Simulation::Simulation(SimulationConfig config) : config_(std::move(config)) {
  config_.Validate();
  schools_ = config_.MakeSchools();
  for (const auto& school : schools_) capacities_.push_back(school.capacity);
  prestige_fallback_ = config_.entry.ExpectedValue(config_.aggregation);
}

Matching Simulation::MatchWarmup(std::span<const Student> students) const {
  std::vector<std::size_t> seats;
  for (std::size_t s = 0; s < schools_.size(); ++s) {
    seats.insert(seats.end(), capacities_[s], s);
  }
  Rng rng = Substream(config_.seed, round_, StreamPhase::kWarmupMatching);
  std::shuffle(seats.begin(), seats.end(), rng);
  Matching matching;
  matching.assignment.assign(students.size(), std::nullopt);
  for (std::size_t i = 0; i < students.size() && i < seats.size(); ++i) {
    matching.assignment[i] = seats[i];
  }
  return matching;
}

Matching Simulation::MatchRound(std::span<const Student> students) {
  const std::size_t n_schools = schools_.size();
  const auto aggregation = config_.aggregation;

  std::vector<double> prestige(n_schools);
  for (std::size_t s = 0; s < n_schools; ++s) {
    prestige[s] =
        Prestige(history_, s, round_, aggregation, prestige_fallback_);
  }
  KnnModel model(BuildTrainingSet(history_, n_schools,
                                  config_.predictor.window, round_,
                                  aggregation),
                 config_.predictor.k);
  const PreferenceContext context{&model,
                                  prestige,
                                  config_.predictor.noise_pct,
                                  config_.observation_noise_pct,
                                  config_.trust,
                                  aggregation};
  std::vector<WeightedPreference> preferences;
  preferences.reserve(students.size());
  for (std::size_t i = 0; i < students.size(); ++i) {
    Rng rng = Substream(config_.seed, round_, StreamPhase::kPreference, i);
    preferences.push_back(FormStudentPreference(students[i], context, rng));
  }

  switch (config_.mechanism.type) {
    case MechanismType::kSD:
    case MechanismType::kRSD: {
      Rng rng = Substream(config_.seed, round_, StreamPhase::kOrdering);
      const auto mode = config_.mechanism.type == MechanismType::kSD
                            ? OrderingMode::kEntryLevel
                            : OrderingMode::kRandom;
      const auto order = StudentOrdering(mode, students, aggregation, rng);
      return SerialDictatorship(order, preferences, capacities_);
    }
    case MechanismType::kBoston:
    case MechanismType::kDA: {
      const Priorities priorities =
          config_.mechanism.school_side == SchoolSide::kLottery
              ? LotteryPriorities(students.size(), n_schools,
                                  config_.common_lottery, config_.seed, round_)
              : TruePreferencePriorities(students, n_schools, aggregation,
                                         config_.seed, round_);
      return config_.mechanism.type == MechanismType::kBoston
                 ? Boston(preferences, priorities, capacities_)
                 : DeferredAcceptance(preferences, priorities, capacities_);
    }
  }
  throw ContractViolation("unknown mechanism");
}

RoundResult Simulation::RunRound() {
  const int n = config_.n_students();
  Rng student_rng = Substream(config_.seed, round_, StreamPhase::kStudents);
  const auto students = SampleStudents(
      n, config_.entry, round_, static_cast<std::int64_t>(round_) * n,
      student_rng);

  RoundResult result;
  result.round = round_;
  result.warmup = round_ < config_.warmup();
  result.matching = result.warmup ? MatchWarmup(students) : MatchRound(students);
  if (!result.matching.IsFeasible(capacities_)) {
    throw ContractViolation("mechanism produced an infeasible matching");
  }

  const std::size_t n_schools = schools_.size();
  result.school_utility.assign(n_schools, 0.0);
  result.n_matched.assign(n_schools, 0);
  result.students.reserve(students.size());
  for (std::size_t i = 0; i < students.size(); ++i) {
    const Student& student = students[i];
    const auto assigned = result.matching.assignment[i];
    if (!assigned) {
      result.students.push_back(
          {student.id, student.entry, student.entry, std::nullopt});
      continue;
    }
    const School& school = schools_[*assigned];
    const StrategyKind strategy =
        result.warmup ? StrategyKind::Truthful() : school.strategy;
    AttributeVector outcome =
        ChooseOutcome(strategy, school.potential, student.entry);
    result.school_utility[*assigned] +=
        SchoolUtility(outcome, student.entry, school.potential, school.alpha,
                      school.utility_sign, config_.aggregation);
    ++result.n_matched[*assigned];
    history_.Append({student.id, *assigned, student.entry, outcome, round_});
    result.students.push_back(
        {student.id, student.entry, std::move(outcome), assigned});
  }
  ++round_;
  return result;
}

SimulationResult RunSimulation(const SimulationConfig& config) {
  Simulation simulation(config);
  SimulationResult result;
  const int total = config.warmup() + config.rounds;
  result.rounds.reserve(config.rounds);
  for (int r = 0; r < total; ++r) {
    RoundResult round = simulation.RunRound();
    if (!round.warmup) result.rounds.push_back(std::move(round));
  }
  result.mean_utility.assign(config.n_schools, 0.0);
  for (const auto& round : result.rounds) {
    for (int s = 0; s < config.n_schools; ++s) {
      result.mean_utility[s] += round.school_utility[s];
    }
  }
  for (auto& u : result.mean_utility) u /= config.rounds;
  result.schools = simulation.schools();
  result.history = simulation.TakeHistory();
  return result;
}

Stats MeanAndStd(std::span<const double> values) {
  Stats stats;
  if (values.empty()) return stats;
  const double n = static_cast<double>(values.size());
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.std = std::sqrt(ss / (n - 1.0));
  }
  return stats;
}

double DiscountedMean(std::span<const double> per_round, double discount) {
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw ContractViolation("discount factor must lie in (0, 1]");
  }
  double weighted = 0.0;
  double total_weight = 0.0;
  double w = 1.0;
  for (double u : per_round) {
    weighted += w * u;
    total_weight += w;
    w *= discount;
  }
  return total_weight > 0.0 ? weighted / total_weight : 0.0;
}

BatchResult RunBatch(const SimulationConfig& config, int n_seeds,
                     const BatchOptions& options) {
  if (n_seeds < 2) throw ConfigError("seeds must be >= 2 for a batch");
  config.Validate();

  BatchResult batch;
  batch.per_seed_utility.resize(n_seeds);
  if (options.keep_runs) batch.runs.resize(n_seeds);
  for (int i = 0; i < n_seeds; ++i) batch.seeds.push_back(config.seed + i);

  auto run_one = [&](int i) {
    SimulationConfig seeded = config;
    seeded.seed = batch.seeds[i];
    SimulationResult run = RunSimulation(seeded);
    std::vector<double> utility(config.n_schools);
    std::vector<double> stream(run.rounds.size());
    for (int s = 0; s < config.n_schools; ++s) {
      for (std::size_t r = 0; r < run.rounds.size(); ++r) {
        stream[r] = run.rounds[r].school_utility[s];
      }
      utility[s] = options.discount == 1.0
                       ? run.mean_utility[s]
                       : DiscountedMean(stream, options.discount);
    }
    batch.per_seed_utility[i] = std::move(utility);
    if (options.keep_runs) batch.runs[i] = std::move(run);
  };

  unsigned threads = options.threads ? options.threads
                                     : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(n_seeds));
  if (threads == 1) {
    for (int i = 0; i < n_seeds; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int i = next++; i < n_seeds; i = next++) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
  }

  batch.school_stats.resize(config.n_schools);
  std::vector<double> column(n_seeds);
  for (int s = 0; s < config.n_schools; ++s) {
    for (int i = 0; i < n_seeds; ++i) column[i] = batch.per_seed_utility[i][s];
    batch.school_stats[s] = MeanAndStd(column);
  }
  return batch;
}

}  // namespace matchsim
