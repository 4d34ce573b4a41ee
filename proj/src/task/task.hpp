// Copyright 2026 The switchdetect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "features/bucketing.hpp"
#include "features/corpus_stats.hpp"
#include "features/extract.hpp"
#include "features/families.hpp"
#include "inference/model.hpp"
#include "log/session.hpp"

namespace swd {

enum class TaskKind : std::uint8_t { kBinary = 0, kThreeCategory = 1, kFourCategory = 2 };

std::string_view task_kind_name(TaskKind kind) noexcept;
/// Accepts "binary", "3cat"/"three_category", "4cat"/"four_category".
TaskKind task_kind_from_name(std::string_view name);

/// The switch type each constituent model targets; nullopt for the single
/// binary model. Three-category trains {B, P}, four-category {B, P, H}.
std::vector<std::optional<SwitchType>> constituent_targets(TaskKind kind);

struct TaskSpec {
  TaskKind kind = TaskKind::kBinary;
  ModelConfig model;
  BucketingConfig bucketing = BucketingConfig::defaults();
  FamilySet families = FamilySet::all();
  std::uint32_t epochs = 1;
  /// Remove each training session's own contribution from the corpus
  /// statistics while featurizing it.
  bool exclude_self = true;

  /// Throws config_error on an invalid model, bucketing or epoch setting.
  void validate() const;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct TrainedTask {
  TaskSpec spec;
  std::vector<ModelState> models;

  friend bool operator==(const TrainedTask&, const TrainedTask&) = default;
};

/// Streaming trainer: each observed session is extracted once and updates
/// every constituent model in turn.
class Trainer {
 public:
  Trainer(TaskSpec spec, const CorpusStats& stats);

  /// Throws invalid_argument (with the session id) for an unlabeled session.
  void observe(const Session& s);

  const TrainedTask& result() const noexcept { return task_; }
  TrainedTask take() && { return std::move(task_); }

 private:
  TrainedTask task_;
  std::vector<LabelMode> modes_;
  FeatureExtractor extractor_;
};

/// Runs spec.epochs passes over the sessions in order.
TrainedTask train(const TaskSpec& spec, const CorpusStats& stats, std::span<const Session> sessions);

struct SessionPrediction {
  SessionId session_id = 0;
  double probability = 0.5;
  /// Per constituent target in constituent_targets() order; empty for binary.
  std::vector<std::pair<SwitchType, double>> per_type;

  friend bool operator==(const SessionPrediction&, const SessionPrediction&) = default;
};

class Predictor {
 public:
  /// The task's bucketing and family set drive extraction.
  Predictor(const TrainedTask& task, const CorpusStats& stats);

  /// Switch records and the switch type are masked before extraction.
  SessionPrediction predict(const Session& s) const;

 private:
  const TrainedTask& task_;
  std::vector<std::optional<SwitchType>> targets_;
  FeatureExtractor extractor_;
};

std::vector<SessionPrediction> predict_task(const TrainedTask& task, const CorpusStats& stats,
                                            std::span<const Session> sessions);

// Task bundle: "SWDT" u32 version(=1), u8 kind, u32 family mask, u32 epochs,
// u8 exclude_self, string bucketing JSON, u32 model count, then each model
// as a length-prefixed SWDM blob. Strings are u32 length + bytes.
std::string serialize_task(const TrainedTask& task);
TrainedTask deserialize_task(std::string_view bytes);

/// Header line plus one row per prediction. Columns: session_id, probability
/// and one column per constituent type letter for multi-category tasks.
std::string format_predictions(std::span<const SessionPrediction> predictions, TaskKind kind);
/// Reads the session_id and probability columns of a prediction file.
std::vector<std::pair<SessionId, double>> parse_prediction_table(std::string_view text);

inline constexpr double kAblationThreshold = 0.0005;

/// Keep when the improvement reaches the threshold (inclusive).
constexpr bool keep_feature(double auc_delta, double threshold = kAblationThreshold) noexcept {
  return auc_delta >= threshold;
}

struct AblationReport {
  Family candidate = Family::kUserId;
  double base_auc = 0.0;
  double candidate_auc = 0.0;
  double delta = 0.0;
  bool keep = false;
};

/// Trains with spec.families and with spec.families plus the candidate,
/// and compares switch / no-switch AUC on the validation sessions.
AblationReport feature_ablation_report(const TaskSpec& base, Family candidate, const CorpusStats& stats,
                                       std::span<const Session> training, std::span<const Session> validation);

}  // namespace swd
