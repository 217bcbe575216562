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

#ifndef MATCHSIM_PREDICTION_H_
#define MATCHSIM_PREDICTION_H_

// Modeling stage: a windowed memory of past interactions, k-nearest-neighbour
// outcome prediction, school prestige, and the blend of prediction and own
// observation that students use to weight schools.
//
// KNN has no fitted parameters; the "model" at round t is simply the
// training window itself, so no loss is minimised anywhere in this module.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "matchsim/market.h"
#include "matchsim/rng.h"

namespace matchsim {

struct PredictorConfig {
  int k = 1;
  // Number of most recent rounds the predictor learns from.
  int window = 3;
  // Half-width of the uniform prediction noise, in percent of kMaxRating.
  double noise_pct = 0.01;

  // Throws ConfigError unless k >= 1, window >= 1 and noise_pct >= 0.
  void Validate() const;
};

struct TrainingExample {
  AttributeVector entry;
  double outcome_value = 0.0;
};

// Past interactions grouped by school, in history order.
class TrainingSet {
 public:
  explicit TrainingSet(std::size_t n_schools) : per_school_(n_schools) {}

  void Add(std::size_t school, TrainingExample example) {
    per_school_.at(school).push_back(std::move(example));
  }
  std::span<const TrainingExample> ForSchool(std::size_t school) const {
    return per_school_.at(school);
  }
  std::size_t n_schools() const { return per_school_.size(); }
  std::size_t size() const;

 private:
  std::vector<std::vector<TrainingExample>> per_school_;
};

// Records with round in [now - window, now - 1], grouped by school.
TrainingSet BuildTrainingSet(const History& history, std::size_t n_schools,
                             int window, int now, Aggregation aggregation);

// Mean outcome value of the k examples of `school` whose entries are closest
// (Euclidean) to `entry`; distance ties go to the earlier example. Averages
// every example when fewer than k exist, and returns nullopt when the school
// has no examples at all.
std::optional<double> KnnPredict(const TrainingSet& training,
                                 std::size_t school,
                                 const AttributeVector& entry, int k);

// Memoizing wrapper around KnnPredict for one round's training set. The
// prediction for a (school, entry) pair is fixed within a round, and entries
// take few distinct values, so most queries hit the cache.
class KnnModel {
 public:
  KnnModel(TrainingSet training, int k);

  std::optional<double> Predict(std::size_t school,
                                const AttributeVector& entry);
  const TrainingSet& training() const { return training_; }

 private:
  TrainingSet training_;
  int k_;
  std::vector<std::map<AttributeVector, std::optional<double>>> cache_;
};

// prediction + U(-h, h) with h = kMaxRating * noise_pct / 100, clamped to
// [0, max_value]. Always consumes exactly one draw from `rng`.
double ApplyNoise(double prediction, double noise_pct, double max_value,
                  Rng& rng);

// Mean outcome value of the school's students in round now - 1, or
// `fallback` when it had none.
double Prestige(const History& history, std::size_t school, int now,
                Aggregation aggregation, double fallback);

// trust * prediction + (1 - trust) * observation.
double Integrate(double prediction, double observation, double trust);

// Everything a student needs to weight the schools in one round.
struct PreferenceContext {
  KnnModel* model = nullptr;
  std::span<const double> prestige;
  double prediction_noise_pct = 0.01;
  double observation_noise_pct = 1.0;
  double trust = 1.0;
  Aggregation aggregation = Aggregation::kSum;
};

// Weight of school s = Integrate(noisy prediction, noisy prestige, trust), or
// the noisy prestige alone when the predictor has no data for s. Draw order
// from `rng`: for each school, prediction noise then observation noise; then
// one tie-break key per school.
WeightedPreference FormStudentPreference(const Student& student,
                                         const PreferenceContext& context,
                                         Rng& rng);

}  // namespace matchsim

#endif  // MATCHSIM_PREDICTION_H_
