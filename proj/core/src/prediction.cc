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

#include "matchsim/prediction.h"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

namespace matchsim {
namespace {

double SquaredDistance(const AttributeVector& a, const AttributeVector& b) {
  if (a.dimension() != b.dimension()) {
    throw ConfigError("attribute dimension mismatch in distance");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

void PredictorConfig::Validate() const {
  if (k < 1) throw ConfigError("knn_k must be >= 1, got " + std::to_string(k));
  if (window < 1) {
    throw ConfigError("training_window must be >= 1, got " +
                      std::to_string(window));
  }
  if (!(noise_pct >= 0.0)) {
    throw ConfigError("prediction_noise must be >= 0, got " +
                      std::to_string(noise_pct));
  }
}

std::size_t TrainingSet::size() const {
  std::size_t n = 0;
  for (const auto& v : per_school_) n += v.size();
  return n;
}

TrainingSet BuildTrainingSet(const History& history, std::size_t n_schools,
                             int window, int now, Aggregation aggregation) {
  TrainingSet training(n_schools);
  for (const auto& record : history.RecordsBetween(now - window, now - 1)) {
    training.Add(record.school,
                 {record.entry, OutcomeValue(record.outcome, aggregation)});
  }
  return training;
}

std::optional<double> KnnPredict(const TrainingSet& training,
                                 std::size_t school,
                                 const AttributeVector& entry, int k) {
  const auto examples = training.ForSchool(school);
  if (examples.empty()) return std::nullopt;
  if (k < 1) throw ContractViolation("k must be >= 1");

  std::vector<std::pair<double, std::size_t>> by_distance;
  by_distance.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    by_distance.emplace_back(SquaredDistance(examples[i].entry, entry), i);
  }
  const std::size_t n =
      std::min(examples.size(), static_cast<std::size_t>(k));
  // Pairs compare by (distance, index), which is the stable tie-break.
  std::partial_sort(by_distance.begin(), by_distance.begin() + n,
                    by_distance.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += examples[by_distance[i].second].outcome_value;
  }
  return sum / static_cast<double>(n);
}

KnnModel::KnnModel(TrainingSet training, int k)
    : training_(std::move(training)), k_(k), cache_(training_.n_schools()) {}

std::optional<double> KnnModel::Predict(std::size_t school,
                                        const AttributeVector& entry) {
  auto& memo = cache_.at(school);
  if (auto it = memo.find(entry); it != memo.end()) return it->second;
  auto prediction = KnnPredict(training_, school, entry, k_);
  memo.emplace(entry, prediction);
  return prediction;
}

double ApplyNoise(double prediction, double noise_pct, double max_value,
                  Rng& rng) {
  if (noise_pct < 0.0) throw ContractViolation("noise must be >= 0");
  const double u = std::generate_canonical<double, 53>(rng);
  const double half_width = kMaxRating * noise_pct / 100.0;
  const double noisy = prediction + (2.0 * u - 1.0) * half_width;
  return std::clamp(noisy, 0.0, max_value);
}

double Prestige(const History& history, std::size_t school, int now,
                Aggregation aggregation, double fallback) {
  double sum = 0.0;
  int count = 0;
  for (const auto& record : history.RecordsBetween(now - 1, now - 1)) {
    if (record.school != school) continue;
    sum += OutcomeValue(record.outcome, aggregation);
    ++count;
  }
  return count == 0 ? fallback : sum / count;
}

double Integrate(double prediction, double observation, double trust) {
  if (!(trust >= 0.0 && trust <= 1.0)) {
    throw ContractViolation("trust must lie in [0, 1]");
  }
  return trust * prediction + (1.0 - trust) * observation;
}

WeightedPreference FormStudentPreference(const Student& student,
                                         const PreferenceContext& context,
                                         Rng& rng) {
  const std::size_t n_schools = context.prestige.size();
  if (n_schools == 0) throw ContractViolation("no schools to rank");
  const double max_value =
      MaxOutcomeValue(student.entry.dimension(), context.aggregation);

  std::vector<double> weights(n_schools);
  for (std::size_t s = 0; s < n_schools; ++s) {
    const std::optional<double> predicted =
        context.model ? context.model->Predict(s, student.entry)
                      : std::nullopt;
    const double noisy_prediction = ApplyNoise(
        predicted.value_or(0.0), context.prediction_noise_pct, max_value, rng);
    const double observation = ApplyNoise(
        context.prestige[s], context.observation_noise_pct, max_value, rng);
    weights[s] = predicted
                     ? Integrate(noisy_prediction, observation, context.trust)
                     : observation;
  }
  std::vector<std::uint64_t> keys(n_schools);
  for (auto& key : keys) key = rng();
  return WeightedPreference(student.id, std::move(weights), keys);
}

}  // namespace matchsim
