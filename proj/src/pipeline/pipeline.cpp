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

#include "pipeline/pipeline.hpp"

#include <fstream>

#include "common/error.hpp"
#include "common/text.hpp"
#include "features/corpus_stats.hpp"
#include "synth/generator.hpp"

namespace swd {

namespace {

ReadOptions read_options(const PipelineConfig& cfg) { return ReadOptions{cfg.permissive}; }

template <typename F>
void for_each_session(const std::string& path, const PipelineConfig& cfg, F&& f) {
  SessionReader reader(path, read_options(cfg));
  while (auto s = reader.next()) f(*s);
}

CorpusStats load_stats(const std::string& path) { return deserialize_corpus_stats(read_file(path)); }

CorpusStats stats_from_log(const std::string& log_path, const PipelineConfig& cfg) {
  CorpusStats stats;
  for_each_session(log_path, cfg, [&](const Session& s) { stats.add(s); });
  return stats;
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw io_error("cannot open '" + path + "' for writing");
  }
  void write(std::string_view text) {
    out_ << text;
    if (!out_) throw io_error("write to '" + path_ + "' failed");
  }
  void close() {
    out_.close();
    if (!out_) throw io_error("closing '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace

DatasetStats run_stats(const std::string& log_path, const PipelineConfig& cfg) {
  DatasetStatsBuilder b;
  for_each_session(log_path, cfg, [&](const Session& s) { b.add(s); });
  return b.result();
}

SplitSummary run_split(const std::string& log_path, const std::string& training_out,
                       const std::string& validation_out, const PipelineConfig& cfg) {
  validate_split_params(cfg.modulus, cfg.residue);
  OutputFile train(training_out), valid(validation_out);
  SplitSummary summary;
  for_each_session(log_path, cfg, [&](const Session& s) {
    if (in_validation(s.session_id, cfg.modulus, cfg.residue)) {
      valid.write(format_session(s));
      ++summary.validation;
    } else {
      train.write(format_session(s));
      ++summary.training;
    }
  });
  train.close();
  valid.close();
  return summary;
}

CorpusStats run_build_stats(const std::string& log_path, const std::string& stats_out, const PipelineConfig& cfg) {
  auto stats = stats_from_log(log_path, cfg);
  write_file(stats_out, serialize_corpus_stats(stats));
  return stats;
}

TrainSummary run_train(const std::string& log_path, const std::string& stats_path, const std::string& model_out,
                       const PipelineConfig& cfg) {
  cfg.validate();
  const auto stats = stats_path.empty() ? stats_from_log(log_path, cfg) : load_stats(stats_path);
  Trainer trainer(cfg.task, stats);
  TrainSummary summary;
  for (std::uint32_t epoch = 0; epoch < cfg.task.epochs; ++epoch) {
    summary.sessions = 0;
    for_each_session(log_path, cfg, [&](const Session& s) {
      trainer.observe(s);
      ++summary.sessions;
    });
  }
  const auto& task = trainer.result();
  for (const auto& m : task.models) {
    summary.variance_clamps += m.variance_clamps();
    summary.weights += m.size();
  }
  write_file(model_out, serialize_task(task));
  return summary;
}

std::uint64_t run_predict(const std::string& model_path, const std::string& stats_path, const std::string& log_path,
                          const std::string& predictions_out, const PipelineConfig& cfg) {
  const auto task = deserialize_task(read_file(model_path));
  const auto stats = load_stats(stats_path);
  const Predictor predictor(task, stats);
  std::vector<SessionPrediction> predictions;
  for_each_session(log_path, cfg, [&](const Session& s) { predictions.push_back(predictor.predict(s)); });
  write_file(predictions_out, format_predictions(predictions, task.spec.kind));
  return predictions.size();
}

std::uint64_t run_ensemble(std::span<const std::string> prediction_paths, const std::string& submission_out) {
  if (prediction_paths.empty()) throw invalid_argument("ensemble needs at least one prediction file");
  std::vector<RankedPrediction> rankings;
  for (const auto& path : prediction_paths) {
    std::vector<ScoredSession> scores;
    for (const auto& [id, score] : parse_prediction_table(read_file(path))) scores.push_back({id, score});
    rankings.push_back(RankedPrediction::from_scores(scores));
  }
  const auto fused = rank_fuse(rankings);
  std::string out = "session_id\tscore\n";
  for (const auto& e : fused.entries()) {
    out += std::to_string(e.session_id);
    out += '\t';
    out += format_double(e.score);
    out += '\n';
  }
  write_file(submission_out, out);
  return fused.size();
}

double run_evaluate(const std::string& scores_path, const std::string& labeled_log_path, const PipelineConfig& cfg) {
  std::unordered_map<SessionId, Label> labels;
  for_each_session(labeled_log_path, cfg,
                   [&](const Session& s) { labels.emplace(s.session_id, session_label(s, LabelMode::binary())); });
  std::vector<ScoredSession> scores;
  for (const auto& [id, score] : parse_prediction_table(read_file(scores_path))) scores.push_back({id, score});
  return auc(scores, labels);
}

std::string format_ablation_report(std::span<const AblationReport> reports) {
  std::string out = "family\tname\tbase_auc\tcandidate_auc\tdelta\tdecision\n";
  for (const auto& r : reports) {
    out += std::to_string(family_number(r.candidate));
    out += '\t';
    out += family_name(r.candidate);
    for (double v : {r.base_auc, r.candidate_auc, r.delta}) {
      out += '\t';
      out += format_double(v);
    }
    out += r.keep ? "\tkeep\n" : "\tdiscard\n";
  }
  return out;
}

std::vector<AblationReport> run_ablate(const std::string& training_log, const std::string& validation_log,
                                       FamilySet candidates, const std::string& report_out,
                                       const PipelineConfig& cfg) {
  cfg.validate();
  if (cfg.baseline.empty()) throw config_error("ablation baseline is empty");
  const auto training = read_sessions(training_log, read_options(cfg));
  const auto validation = read_sessions(validation_log, read_options(cfg));
  const auto stats = build_corpus_stats(training);
  TaskSpec base = cfg.task;
  base.families = cfg.baseline;

  std::vector<AblationReport> reports;
  for (auto f : all_families())
    if (candidates.contains(f) && !cfg.baseline.contains(f))
      reports.push_back(feature_ablation_report(base, f, stats, training, validation));
  if (!report_out.empty()) write_file(report_out, format_ablation_report(reports));
  return reports;
}

GenerateSummary run_gen_synthetic(const std::string& log_out, const std::string& truth_out,
                                  const std::string& report_out, const PipelineConfig& cfg) {
  const auto log = generate_synthetic(cfg.generator);
  OutputFile out(log_out);
  for (const auto& s : log.sessions) out.write(format_session(s));
  out.close();
  if (!truth_out.empty()) write_file(truth_out, format_truth(log.truth));
  if (!report_out.empty()) write_file(report_out, format_generator_report(cfg.generator, log));

  GenerateSummary summary{log.sessions.size(), 0.0};
  std::uint64_t switches = 0;
  for (const auto& t : log.truth) switches += t.switch_type != SwitchType::kNone;
  if (!log.truth.empty()) summary.switch_rate = static_cast<double>(switches) / static_cast<double>(log.truth.size());
  return summary;
}

void run_extract(const std::string& log_path, const std::string& stats_path, const PipelineConfig& cfg,
                 const std::function<void(SessionId, const FeatureVector&)>& sink) {
  const auto stats = stats_path.empty() ? CorpusStats{} : load_stats(stats_path);
  const FeatureExtractor extractor(stats, cfg.task.bucketing, cfg.task.families);
  for_each_session(log_path, cfg, [&](const Session& s) { sink(s.session_id, extractor.extract(s)); });
}

}  // namespace swd
