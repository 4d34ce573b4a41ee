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

/* switchdetect C API.
 *
 * Every function returns an swd_status. On failure the message of the most
 * recent error on the calling thread is available from swd_last_error().
 * Status values double as the exit codes of the swd command line tool.
 * Handles are opaque; each *_create / *_load has a matching *_destroy that
 * accepts NULL. */

#ifndef SWD_SWD_H_
#define SWD_SWD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SWD_BUILDING_LIBRARY)
#    define SWD_API __declspec(dllexport)
#  else
#    define SWD_API __declspec(dllimport)
#  endif
#else
#  define SWD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swd_status {
  SWD_OK = 0,
  SWD_ERR_INVALID_ARGUMENT = 2,
  SWD_ERR_FORMAT = 3,
  SWD_ERR_CONFIG = 4,
  SWD_ERR_NUMERIC = 5,
  SWD_ERR_IO = 6,
  SWD_ERR_INTERNAL = 70
} swd_status;

/* Switch labels. */
#define SWD_LABEL_NO_SWITCH (-1)
#define SWD_LABEL_SWITCH 1

SWD_API const char* swd_version(void);
/* Message of the last failed call on this thread; "" if none. */
SWD_API const char* swd_last_error(void);
SWD_API const char* swd_status_name(swd_status status);

/* ---- probit utilities ---------------------------------------------------- */

SWD_API swd_status swd_normal_cdf(double t, double* out);
/* v(t) = N(t)/Phi(t) and w(t) = v(t)(v(t)+t). */
SWD_API swd_status swd_v(double t, double* out);
SWD_API swd_status swd_w(double t, double* out);
/* Exact posterior mean/variance of a single weight after one observation,
 * by numerical integration. */
SWD_API swd_status swd_exact_posterior_1d(double prior_mean, double prior_variance, double beta, int label,
                                          double* mean, double* variance);

/* ---- model ---------------------------------------------------------------- */

typedef struct swd_model swd_model;

SWD_API swd_status swd_model_create(double beta, double prior_mean, double prior_variance, swd_model** out);
SWD_API void swd_model_destroy(swd_model* model);
/* ids: the active feature ids (duplicates are ignored). */
SWD_API swd_status swd_model_update(swd_model* model, const uint64_t* ids, size_t n, int label);
SWD_API swd_status swd_model_predict(const swd_model* model, const uint64_t* ids, size_t n, double* probability);
SWD_API swd_status swd_model_total_moments(const swd_model* model, const uint64_t* ids, size_t n, double* mean,
                                           double* variance);
SWD_API swd_status swd_model_belief(const swd_model* model, uint64_t id, double* mean, double* variance);
/* Number of weights that have left the prior. */
SWD_API swd_status swd_model_size(const swd_model* model, size_t* out);
SWD_API swd_status swd_model_variance_clamps(const swd_model* model, uint64_t* out);
SWD_API swd_status swd_model_save(const swd_model* model, const char* path);
SWD_API swd_status swd_model_load(const char* path, swd_model** out);

/* Namespaced feature id of one (family number 1..20, value) token. */
SWD_API swd_status swd_feature_id(int family, const char* value, uint64_t* out);

/* ---- metrics ------------------------------------------------------------- */

/* labels: SWD_LABEL_SWITCH or SWD_LABEL_NO_SWITCH. */
SWD_API swd_status swd_auc(const double* scores, const int* labels, size_t n, double* out);
/* k rankings over the same n sessions, given as k*n row-major arrays of
 * session ids and scores. Writes the fused order into out_ids and the
 * fused scores (1 / harmonic-mean rank) into out_scores, both length n. */
SWD_API swd_status swd_rank_fuse(size_t k, size_t n, const uint64_t* ids, const double* scores, uint64_t* out_ids,
                                 double* out_scores);
SWD_API swd_status swd_in_validation(uint64_t session_id, uint64_t modulus, uint64_t residue, int* out);

/* ---- pipeline ------------------------------------------------------------- */

/* Pipeline options: defaults, optionally loaded from a JSON config file and
 * overridden per key (task, families, baseline, epochs, exclude_self,
 * permissive, beta, prior_mean, prior_variance, bucketing, modulus,
 * residue, seed, n_users, n_sessions, n_queries, switch_rate,
 * toolbar_fraction). */
typedef struct swd_options swd_options;

SWD_API swd_status swd_options_create(swd_options** out);
SWD_API void swd_options_destroy(swd_options* options);
SWD_API swd_status swd_options_load(swd_options* options, const char* config_path);
SWD_API swd_status swd_options_set(swd_options* options, const char* key, const char* value);
/* Effective configuration as JSON; valid until the next call on options. */
SWD_API swd_status swd_options_json(swd_options* options, const char** out);

typedef struct swd_dataset_stats {
  uint64_t sessions;
  uint64_t users;
  uint64_t queries;
  uint64_t urls;
} swd_dataset_stats;

SWD_API swd_status swd_run_stats(const swd_options* options, const char* log_path, swd_dataset_stats* out);
SWD_API swd_status swd_run_split(const swd_options* options, const char* log_path, const char* training_out,
                                 const char* validation_out, uint64_t* n_training, uint64_t* n_validation);
SWD_API swd_status swd_run_build_stats(const swd_options* options, const char* log_path, const char* stats_out);
/* stats_path may be NULL: statistics are then built from the training log. */
SWD_API swd_status swd_run_train(const swd_options* options, const char* log_path, const char* stats_path,
                                 const char* model_out, uint64_t* n_sessions);
SWD_API swd_status swd_run_predict(const swd_options* options, const char* model_path, const char* stats_path,
                                   const char* log_path, const char* predictions_out, uint64_t* n_predictions);
SWD_API swd_status swd_run_ensemble(const char* const* prediction_paths, size_t n_paths, const char* submission_out,
                                    uint64_t* n_sessions);
SWD_API swd_status swd_run_evaluate(const swd_options* options, const char* scores_path, const char* labeled_log_path,
                                    double* auc);
/* candidates: family list as accepted by the "families" option. */
SWD_API swd_status swd_run_ablate(const swd_options* options, const char* training_log, const char* validation_log,
                                  const char* candidates, const char* report_out, size_t* n_kept);
/* truth_out and report_out may be NULL. */
SWD_API swd_status swd_run_gen_synthetic(const swd_options* options, const char* log_out, const char* truth_out,
                                         const char* report_out, uint64_t* n_sessions);

/* Receives each session's switch-masked feature ids; return nonzero to stop. */
typedef int (*swd_feature_sink)(uint64_t session_id, const uint64_t* ids, size_t n, void* user_data);
/* stats_path may be NULL (empty statistics). */
SWD_API swd_status swd_extract_features(const swd_options* options, const char* log_path, const char* stats_path,
                                        swd_feature_sink sink, void* user_data);

#ifdef __cplusplus
}
#endif

#endif  /* SWD_SWD_H_ */
