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

#include "task/task.hpp"

#include <algorithm>
#include <charconv>

#include "common/binary_io.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "eval/metrics.hpp"
#include "inference/model_io.hpp"

namespace swd {

namespace {

constexpr char kTaskMagic[4] = {'S', 'W', 'D', 'T'};
constexpr std::uint32_t kTaskVersion = 1;

LabelMode mode_for(const std::optional<SwitchType>& target) {
  return target ? LabelMode::one_vs_rest(*target) : LabelMode::binary();
}

}  // namespace

std::string_view task_kind_name(TaskKind kind) noexcept {
  switch (kind) {
    case TaskKind::kBinary: return "binary";
    case TaskKind::kThreeCategory: return "3cat";
    case TaskKind::kFourCategory: return "4cat";
  }
  return "?";
}

TaskKind task_kind_from_name(std::string_view name) {
  if (name == "binary") return TaskKind::kBinary;
  if (name == "3cat" || name == "three_category") return TaskKind::kThreeCategory;
  if (name == "4cat" || name == "four_category") return TaskKind::kFourCategory;
  throw config_error("unknown task kind '" + std::string(name) + "' (expected binary, 3cat or 4cat)");
}

std::vector<std::optional<SwitchType>> constituent_targets(TaskKind kind) {
  switch (kind) {
    case TaskKind::kBinary: return {std::nullopt};
    case TaskKind::kThreeCategory: return {SwitchType::kToolbar, SwitchType::kSerp};
    case TaskKind::kFourCategory: return {SwitchType::kToolbar, SwitchType::kSerp, SwitchType::kBoth};
  }
  return {};
}

void TaskSpec::validate() const {
  model.validate();
  bucketing.validate();
  if (epochs == 0) throw config_error("epochs must be at least 1");
}

Trainer::Trainer(TaskSpec spec, const CorpusStats& stats)
    : extractor_(stats, spec.bucketing, spec.families) {
  spec.validate();
  for (const auto& t : constituent_targets(spec.kind)) {
    modes_.push_back(mode_for(t));
    task_.models.emplace_back(spec.model);
  }
  task_.spec = std::move(spec);
}

void Trainer::observe(const Session& s) {
  const auto x = extractor_.extract_for_training(s, task_.spec.exclude_self);
  for (std::size_t k = 0; k < modes_.size(); ++k) update(task_.models[k], x, session_label(s, modes_[k]));
}

TrainedTask train(const TaskSpec& spec, const CorpusStats& stats, std::span<const Session> sessions) {
  Trainer trainer(spec, stats);
  for (std::uint32_t epoch = 0; epoch < spec.epochs; ++epoch)
    for (const auto& s : sessions) trainer.observe(s);
  return std::move(trainer).take();
}

Predictor::Predictor(const TrainedTask& task, const CorpusStats& stats)
    : task_(task),
      targets_(constituent_targets(task.spec.kind)),
      extractor_(stats, task.spec.bucketing, task.spec.families) {
  if (targets_.size() != task.models.size())
    throw format_error("task '" + std::string(task_kind_name(task.spec.kind)) + "' expects " +
                       std::to_string(targets_.size()) + " models, found " + std::to_string(task.models.size()));
}

SessionPrediction Predictor::predict(const Session& s) const {
  const auto x = extractor_.extract(s);
  SessionPrediction out{s.session_id, 0.0, {}};
  if (task_.spec.kind == TaskKind::kBinary) {
    out.probability = swd::predict(task_.models[0], x);
    return out;
  }
  for (std::size_t k = 0; k < targets_.size(); ++k) {
    const double p = swd::predict(task_.models[k], x);
    out.per_type.emplace_back(*targets_[k], p);
    out.probability = k == 0 ? p : std::max(out.probability, p);
  }
  return out;
}

std::vector<SessionPrediction> predict_task(const TrainedTask& task, const CorpusStats& stats,
                                            std::span<const Session> sessions) {
  const Predictor predictor(task, stats);
  std::vector<SessionPrediction> out;
  out.reserve(sessions.size());
  for (const auto& s : sessions) out.push_back(predictor.predict(s));
  return out;
}

std::string serialize_task(const TrainedTask& task) {
  ByteWriter w;
  w.put_bytes(std::string_view(kTaskMagic, 4));
  w.put_u32(kTaskVersion);
  w.put_u8(static_cast<std::uint8_t>(task.spec.kind));
  w.put_u32(task.spec.families.mask());
  w.put_u32(task.spec.epochs);
  w.put_u8(task.spec.exclude_self ? 1 : 0);
  w.put_string(task.spec.bucketing.to_json());
  w.put_u32(static_cast<std::uint32_t>(task.models.size()));
  for (const auto& m : task.models) w.put_string(serialize_model(m));
  return std::move(w).bytes();
}

TrainedTask deserialize_task(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.get_bytes(4) != std::string_view(kTaskMagic, 4)) throw format_error("not a task bundle (bad magic)");
  if (const auto v = r.get_u32(); v != kTaskVersion)
    throw format_error("unsupported task bundle version " + std::to_string(v));
  TrainedTask task;
  const auto kind = r.get_u8();
  if (kind > static_cast<std::uint8_t>(TaskKind::kFourCategory))
    throw format_error("unknown task kind code " + std::to_string(kind));
  task.spec.kind = static_cast<TaskKind>(kind);
  const auto mask = r.get_u32();
  if ((mask & ~FamilySet::all().mask()) != 0) throw format_error("task bundle has an invalid feature family mask");
  task.spec.families = FamilySet::from_mask(mask);
  task.spec.epochs = r.get_u32();
  task.spec.exclude_self = r.get_u8() != 0;
  try {
    task.spec.bucketing = BucketingConfig::from_json(std::string(r.get_string()));
  } catch (const Error& e) {
    throw format_error(std::string("task bundle bucketing: ") + e.what());
  }
  const auto n = r.get_u32();
  if (n != constituent_targets(task.spec.kind).size())
    throw format_error("task bundle has " + std::to_string(n) + " models for task '" +
                       std::string(task_kind_name(task.spec.kind)) + "'");
  for (std::uint32_t i = 0; i < n; ++i) task.models.push_back(deserialize_model(r.get_string()));
  r.expect_end();
  task.spec.model = task.models.front().config();
  for (const auto& m : task.models)
    if (!(m.config() == task.spec.model)) throw format_error("task bundle models disagree on model config");
  return task;
}

std::string format_predictions(std::span<const SessionPrediction> predictions, TaskKind kind) {
  std::string out = "session_id\tprobability";
  for (const auto& t : constituent_targets(kind))
    if (t) {
      out += '\t';
      out += to_char(*t);
    }
  out += '\n';
  for (const auto& p : predictions) {
    out += std::to_string(p.session_id);
    out += '\t';
    out += format_double(p.probability);
    for (const auto& [type, prob] : p.per_type) {
      out += '\t';
      out += format_double(prob);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::pair<SessionId, double>> parse_prediction_table(std::string_view text) {
  std::vector<std::pair<SessionId, double>> out;
  std::uint64_t line_no = 0;
  bool header = true;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (!line.starts_with("session_id\t")) throw ParseError(line_no, "missing prediction header");
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() < 2) throw ParseError(line_no, "expected session_id and score columns");
    const auto id = parse_u64(fields[0]);
    const auto score = parse_double(fields[1]);
    if (!id || !score) throw ParseError(line_no, "malformed session_id or score");
    out.emplace_back(*id, *score);
  }
  if (header) throw format_error("empty prediction file");
  return out;
}

AblationReport feature_ablation_report(const TaskSpec& base, Family candidate, const CorpusStats& stats,
                                       std::span<const Session> training, std::span<const Session> validation) {
  std::unordered_map<SessionId, Label> labels;
  for (const auto& s : validation) labels.emplace(s.session_id, session_label(s, LabelMode::binary()));

  const auto validation_auc = [&](const TaskSpec& spec) {
    const auto task = train(spec, stats, training);
    std::vector<ScoredSession> scores;
    for (const auto& p : predict_task(task, stats, validation)) scores.push_back({p.session_id, p.probability});
    return auc(scores, labels);
  };

  AblationReport report;
  report.candidate = candidate;
  report.base_auc = validation_auc(base);
  TaskSpec with = base;
  with.families = base.families.with(candidate);
  report.candidate_auc = validation_auc(with);
  report.delta = report.candidate_auc - report.base_auc;
  report.keep = keep_feature(report.delta);
  return report;
}

}  // namespace swd
