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

#include "swd/swd.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "common/text.hpp"
#include "features/extract.hpp"
#include "inference/model.hpp"
#include "inference/model_io.hpp"
#include "inference/posterior_oracle.hpp"
#include "inference/probit.hpp"
#include "pipeline/pipeline.hpp"

struct swd_model {
  swd::ModelState state;
};

struct swd_options {
  swd::PipelineConfig config;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

struct StopExtraction {};

template <typename F>
swd_status guarded(F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return SWD_OK;
  } catch (const swd::Error& e) {
    g_last_error = e.what();
    return static_cast<swd_status>(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SWD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SWD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SWD_ERR_INTERNAL;
  }
}

template <typename T>
T& require(T* p, const char* what) {
  if (!p) throw swd::invalid_argument(std::string(what) + " is NULL");
  return *p;
}

std::string require_path(const char* p, const char* what) {
  if (!p || !*p) throw swd::invalid_argument(std::string(what) + " is missing");
  return p;
}

const char* require_str(const char* p, const char* what) {
  if (!p) throw swd::invalid_argument(std::string(what) + " is NULL");
  return p;
}

std::string optional_path(const char* p) { return p ? p : ""; }

swd::FeatureVector features_of(const uint64_t* ids, size_t n) {
  if (n > 0 && !ids) throw swd::invalid_argument("feature ids are NULL");
  std::vector<swd::FeatureId> v;
  v.reserve(n);
  for (size_t i = 0; i < n; ++i) v.push_back({ids[i]});
  return swd::FeatureVector(std::move(v));
}

swd::Label label_of(int label) {
  if (label == SWD_LABEL_SWITCH) return swd::Label::kSwitch;
  if (label == SWD_LABEL_NO_SWITCH) return swd::Label::kNoSwitch;
  throw swd::invalid_argument("label must be 1 or -1, got " + std::to_string(label));
}

swd::PipelineConfig config_of(const swd_options* options) {
  return options ? options->config : swd::PipelineConfig{};
}

}  // namespace

extern "C" {

const char* swd_version(void) { return "1.0.0"; }

const char* swd_last_error(void) { return g_last_error.c_str(); }

const char* swd_status_name(swd_status status) {
  switch (status) {
    case SWD_OK: return "ok";
    case SWD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SWD_ERR_FORMAT: return "format error";
    case SWD_ERR_CONFIG: return "config error";
    case SWD_ERR_NUMERIC: return "numeric error";
    case SWD_ERR_IO: return "i/o error";
    case SWD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

swd_status swd_normal_cdf(double t, double* out) {
  return guarded([&] { require(out, "out") = swd::normal_cdf(t); });
}

swd_status swd_v(double t, double* out) {
  return guarded([&] { require(out, "out") = swd::v(t); });
}

swd_status swd_w(double t, double* out) {
  return guarded([&] { require(out, "out") = swd::w(t); });
}

swd_status swd_exact_posterior_1d(double prior_mean, double prior_variance, double beta, int label, double* mean,
                                  double* variance) {
  return guarded([&] {
    const auto m = swd::exact_posterior_moments_1d(prior_mean, prior_variance, beta, label_of(label));
    require(mean, "mean") = m.mean;
    require(variance, "variance") = m.variance;
  });
}

swd_status swd_model_create(double beta, double prior_mean, double prior_variance, swd_model** out) {
  return guarded([&] {
    auto& slot = require(out, "out");
    swd::ModelConfig cfg{beta, prior_mean, prior_variance};
    cfg.validate();
    slot = new swd_model{swd::ModelState(cfg)};
  });
}

void swd_model_destroy(swd_model* model) { delete model; }

swd_status swd_model_update(swd_model* model, const uint64_t* ids, size_t n, int label) {
  return guarded([&] { swd::update(require(model, "model").state, features_of(ids, n), label_of(label)); });
}

swd_status swd_model_predict(const swd_model* model, const uint64_t* ids, size_t n, double* probability) {
  return guarded([&] {
    require(probability, "probability") = swd::predict(require(model, "model").state, features_of(ids, n));
  });
}

swd_status swd_model_total_moments(const swd_model* model, const uint64_t* ids, size_t n, double* mean,
                                   double* variance) {
  return guarded([&] {
    const auto m = swd::total_moments(require(model, "model").state, features_of(ids, n));
    require(mean, "mean") = m.total_mean;
    require(variance, "variance") = m.total_variance;
  });
}

swd_status swd_model_belief(const swd_model* model, uint64_t id, double* mean, double* variance) {
  return guarded([&] {
    const auto b = require(model, "model").state.belief({id});
    require(mean, "mean") = b.mean;
    require(variance, "variance") = b.variance;
  });
}

swd_status swd_model_size(const swd_model* model, size_t* out) {
  return guarded([&] { require(out, "out") = require(model, "model").state.size(); });
}

swd_status swd_model_variance_clamps(const swd_model* model, uint64_t* out) {
  return guarded([&] { require(out, "out") = require(model, "model").state.variance_clamps(); });
}

swd_status swd_model_save(const swd_model* model, const char* path) {
  return guarded([&] { swd::write_file(require_path(path, "path"), swd::serialize_model(require(model, "model").state)); });
}

swd_status swd_model_load(const char* path, swd_model** out) {
  return guarded([&] {
    auto& slot = require(out, "out");
    auto state = swd::deserialize_model(swd::read_file(require_path(path, "path")));
    slot = new swd_model{std::move(state)};
  });
}

swd_status swd_feature_id(int family, const char* value, uint64_t* out) {
  return guarded([&] {
    const auto f = swd::family_from_number(family);
    if (!f) throw swd::invalid_argument("no feature family numbered " + std::to_string(family));
    require(out, "out") = swd::feature_id(*f, require_str(value, "value")).value;
  });
}

swd_status swd_auc(const double* scores, const int* labels, size_t n, double* out) {
  return guarded([&] {
    if (n > 0 && (!scores || !labels)) throw swd::invalid_argument("scores or labels are NULL");
    std::vector<swd::Label> l;
    l.reserve(n);
    for (size_t i = 0; i < n; ++i) l.push_back(label_of(labels[i]));
    require(out, "out") = swd::auc(std::span<const double>(scores, n), l);
  });
}

swd_status swd_rank_fuse(size_t k, size_t n, const uint64_t* ids, const double* scores, uint64_t* out_ids,
                         double* out_scores) {
  return guarded([&] {
    if (k == 0) throw swd::invalid_argument("rank fusion needs at least one ranking");
    if (n > 0 && (!ids || !scores || !out_ids || !out_scores)) throw swd::invalid_argument("NULL array");
    std::vector<swd::RankedPrediction> rankings;
    for (size_t r = 0; r < k; ++r) {
      std::vector<swd::ScoredSession> s;
      for (size_t i = 0; i < n; ++i) s.push_back({ids[r * n + i], scores[r * n + i]});
      rankings.push_back(swd::RankedPrediction::from_scores(s));
    }
    const auto fused = swd::rank_fuse(rankings);
    size_t i = 0;
    for (const auto& e : fused.entries()) {
      out_ids[i] = e.session_id;
      out_scores[i] = e.score;
      ++i;
    }
  });
}

swd_status swd_in_validation(uint64_t session_id, uint64_t modulus, uint64_t residue, int* out) {
  return guarded([&] {
    swd::validate_split_params(modulus, residue);
    require(out, "out") = swd::in_validation(session_id, modulus, residue) ? 1 : 0;
  });
}

swd_status swd_options_create(swd_options** out) {
  return guarded([&] { require(out, "out") = new swd_options{}; });
}

void swd_options_destroy(swd_options* options) { delete options; }

swd_status swd_options_load(swd_options* options, const char* config_path) {
  return guarded([&] {
    require(options, "options").config = swd::PipelineConfig::load(require_path(config_path, "config path"));
  });
}

swd_status swd_options_set(swd_options* options, const char* key, const char* value) {
  return guarded([&] {
    auto& o = require(options, "options");
    auto updated = o.config;
    updated.set(require_str(key, "key"), require_str(value, "value"));
    updated.validate();
    o.config = std::move(updated);
  });
}

swd_status swd_options_json(swd_options* options, const char** out) {
  return guarded([&] {
    auto& o = require(options, "options");
    o.json = o.config.to_json();
    require(out, "out") = o.json.c_str();
  });
}

swd_status swd_run_stats(const swd_options* options, const char* log_path, swd_dataset_stats* out) {
  return guarded([&] {
    auto& slot = require(out, "out");
    const auto s = swd::run_stats(require_path(log_path, "log path"), config_of(options));
    slot = {s.sessions, s.users, s.queries, s.urls};
  });
}

swd_status swd_run_split(const swd_options* options, const char* log_path, const char* training_out,
                         const char* validation_out, uint64_t* n_training, uint64_t* n_validation) {
  return guarded([&] {
    const auto s = swd::run_split(require_path(log_path, "log path"), require_path(training_out, "training output"),
                                  require_path(validation_out, "validation output"), config_of(options));
    if (n_training) *n_training = s.training;
    if (n_validation) *n_validation = s.validation;
  });
}

swd_status swd_run_build_stats(const swd_options* options, const char* log_path, const char* stats_out) {
  return guarded([&] {
    swd::run_build_stats(require_path(log_path, "log path"), require_path(stats_out, "stats output"),
                         config_of(options));
  });
}

swd_status swd_run_train(const swd_options* options, const char* log_path, const char* stats_path,
                         const char* model_out, uint64_t* n_sessions) {
  return guarded([&] {
    const auto s = swd::run_train(require_path(log_path, "log path"), optional_path(stats_path),
                                  require_path(model_out, "model output"), config_of(options));
    if (n_sessions) *n_sessions = s.sessions;
  });
}

swd_status swd_run_predict(const swd_options* options, const char* model_path, const char* stats_path,
                           const char* log_path, const char* predictions_out, uint64_t* n_predictions) {
  return guarded([&] {
    const auto n = swd::run_predict(require_path(model_path, "model path"), require_path(stats_path, "stats path"),
                                    require_path(log_path, "log path"),
                                    require_path(predictions_out, "predictions output"), config_of(options));
    if (n_predictions) *n_predictions = n;
  });
}

swd_status swd_run_ensemble(const char* const* prediction_paths, size_t n_paths, const char* submission_out,
                            uint64_t* n_sessions) {
  return guarded([&] {
    if (n_paths > 0 && !prediction_paths) throw swd::invalid_argument("prediction paths are NULL");
    std::vector<std::string> paths;
    for (size_t i = 0; i < n_paths; ++i) paths.push_back(require_path(prediction_paths[i], "prediction path"));
    const auto n = swd::run_ensemble(paths, require_path(submission_out, "submission output"));
    if (n_sessions) *n_sessions = n;
  });
}

swd_status swd_run_evaluate(const swd_options* options, const char* scores_path, const char* labeled_log_path,
                            double* auc) {
  return guarded([&] {
    require(auc, "auc") = swd::run_evaluate(require_path(scores_path, "scores path"),
                                            require_path(labeled_log_path, "labeled log path"), config_of(options));
  });
}

swd_status swd_run_ablate(const swd_options* options, const char* training_log, const char* validation_log,
                          const char* candidates, const char* report_out, size_t* n_kept) {
  return guarded([&] {
    const auto families = candidates ? swd::FamilySet::parse(candidates) : swd::FamilySet::all();
    const auto reports = swd::run_ablate(require_path(training_log, "training log"),
                                         require_path(validation_log, "validation log"), families,
                                         require_path(report_out, "report output"), config_of(options));
    size_t kept = 0;
    for (const auto& r : reports) kept += r.keep;
    if (n_kept) *n_kept = kept;
  });
}

swd_status swd_run_gen_synthetic(const swd_options* options, const char* log_out, const char* truth_out,
                                 const char* report_out, uint64_t* n_sessions) {
  return guarded([&] {
    const auto s = swd::run_gen_synthetic(require_path(log_out, "log output"), optional_path(truth_out),
                                          optional_path(report_out), config_of(options));
    if (n_sessions) *n_sessions = s.sessions;
  });
}

swd_status swd_extract_features(const swd_options* options, const char* log_path, const char* stats_path,
                                swd_feature_sink sink, void* user_data) {
  return guarded([&] {
    if (!sink) throw swd::invalid_argument("sink is NULL");
    std::vector<uint64_t> buf;
    try {
      swd::run_extract(require_path(log_path, "log path"), optional_path(stats_path), config_of(options),
                       [&](swd::SessionId id, const swd::FeatureVector& x) {
                         buf.clear();
                         for (auto f : x.ids()) buf.push_back(f.value);
                         if (sink(id, buf.data(), buf.size(), user_data) != 0) throw StopExtraction{};
                       });
    } catch (const StopExtraction&) {
    }
  });
}

}  // extern "C"
