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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eval/metrics.hpp"
#include "pipeline/config.hpp"

namespace swd {

// File-level commands. Each reads and writes the documented formats and
// throws swd::Error; outputs are byte-identical for identical inputs.

DatasetStats run_stats(const std::string& log_path, const PipelineConfig& cfg);

struct SplitSummary {
  std::uint64_t training = 0;
  std::uint64_t validation = 0;
};

/// Streams the log into two log files by session id residue.
SplitSummary run_split(const std::string& log_path, const std::string& training_out,
                       const std::string& validation_out, const PipelineConfig& cfg);

CorpusStats run_build_stats(const std::string& log_path, const std::string& stats_out, const PipelineConfig& cfg);

struct TrainSummary {
  std::uint64_t sessions = 0;  // per epoch
  std::uint64_t variance_clamps = 0;
  std::uint64_t weights = 0;  // across constituent models
};

/// Trains cfg.task on a labeled log. With an empty stats_path the corpus
/// statistics are built from the same log first.
TrainSummary run_train(const std::string& log_path, const std::string& stats_path, const std::string& model_out,
                       const PipelineConfig& cfg);

/// Writes the prediction table; the task kind comes from the bundle.
std::uint64_t run_predict(const std::string& model_path, const std::string& stats_path, const std::string& log_path,
                          const std::string& predictions_out, const PipelineConfig& cfg);

/// Rank-fuses prediction tables into a submission: "session_id\tscore"
/// header, rows in fused order, score = 1 / harmonic-mean rank.
std::uint64_t run_ensemble(std::span<const std::string> prediction_paths, const std::string& submission_out);

/// AUC of a prediction or submission table against a labeled log.
double run_evaluate(const std::string& scores_path, const std::string& labeled_log_path, const PipelineConfig& cfg);

/// Evaluates each candidate family (those outside cfg.baseline) against the
/// baseline; writes a TSV report when report_out is non-empty.
std::vector<AblationReport> run_ablate(const std::string& training_log, const std::string& validation_log,
                                       FamilySet candidates, const std::string& report_out,
                                       const PipelineConfig& cfg);
std::string format_ablation_report(std::span<const AblationReport> reports);

struct GenerateSummary {
  std::uint64_t sessions = 0;
  double switch_rate = 0.0;
};

/// Writes the log; truth and report paths are optional (empty = skip).
GenerateSummary run_gen_synthetic(const std::string& log_out, const std::string& truth_out,
                                  const std::string& report_out, const PipelineConfig& cfg);

/// Calls sink with every session's switch-masked feature vector.
void run_extract(const std::string& log_path, const std::string& stats_path, const PipelineConfig& cfg,
                 const std::function<void(SessionId, const FeatureVector&)>& sink);

}  // namespace swd
