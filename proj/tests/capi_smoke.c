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

/* Exercises the shared library through the C header only. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "swd/swd.h"

static int failures = 0;

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                             \
    }                                                         \
  } while (0)

static int count_sessions(uint64_t session_id, const uint64_t* ids, size_t n, void* user) {
  (void)session_id;
  (void)ids;
  if (n > 0) ++*(int*)user;
  return 0;
}

static int stop_after_one(uint64_t session_id, const uint64_t* ids, size_t n, void* user) {
  (void)session_id;
  (void)ids;
  (void)n;
  ++*(int*)user;
  return 1;
}

int main(int argc, char** argv) {
  const char* fixture = argc > 1 ? argv[1] : "sessions20.tsv";
  const char* tmp = argc > 2 ? argv[2] : "capi_smoke_model.bin";

  double x = 0.0, y = 0.0;
  EXPECT(swd_normal_cdf(0.0, &x) == SWD_OK && x == 0.5);
  EXPECT(swd_v(-30.0, &x) == SWD_OK && isfinite(x) && x > 0.0);
  EXPECT(swd_w(0.0, &x) == SWD_OK && x > 0.0 && x < 1.0);
  EXPECT(swd_v(NAN, &x) == SWD_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(swd_last_error()) > 0);

  swd_model* m = NULL;
  EXPECT(swd_model_create(5.0, 0.0, 1.0, &m) == SWD_OK && m != NULL);
  const uint64_t ids[3] = {11, 22, 33};
  EXPECT(swd_model_predict(m, ids, 3, &x) == SWD_OK && x == 0.5);
  EXPECT(swd_model_update(m, ids, 3, SWD_LABEL_SWITCH) == SWD_OK);
  EXPECT(swd_model_predict(m, ids, 3, &x) == SWD_OK && x > 0.5);
  EXPECT(swd_model_update(m, ids, 0, SWD_LABEL_SWITCH) == SWD_ERR_INVALID_ARGUMENT);
  EXPECT(swd_model_update(m, ids, 3, 0) == SWD_ERR_INVALID_ARGUMENT);
  EXPECT(swd_model_total_moments(m, ids, 3, &x, &y) == SWD_OK && x > 0.0 && y > 25.0);
  size_t size = 0;
  EXPECT(swd_model_size(m, &size) == SWD_OK && size == 3);
  EXPECT(swd_model_save(m, tmp) == SWD_OK);
  swd_model* loaded = NULL;
  EXPECT(swd_model_load(tmp, &loaded) == SWD_OK);
  double a = 0, b = 0;
  EXPECT(swd_model_belief(m, 22, &x, &y) == SWD_OK);
  EXPECT(swd_model_belief(loaded, 22, &a, &b) == SWD_OK && a == x && b == y);
  swd_model_destroy(loaded);
  swd_model_destroy(m);
  swd_model_destroy(NULL);
  EXPECT(swd_model_create(-1.0, 0.0, 1.0, &m) == SWD_ERR_CONFIG);
  EXPECT(swd_model_load("/nonexistent/model.bin", &m) == SWD_ERR_IO);

  EXPECT(swd_exact_posterior_1d(0.0, 1.0, 5.0, SWD_LABEL_SWITCH, &x, &y) == SWD_OK && x > 0.0 && y < 1.0);

  const double scores[4] = {0.9, 0.8, 0.3, 0.1};
  const int labels[4] = {1, -1, 1, -1};
  EXPECT(swd_auc(scores, labels, 4, &x) == SWD_OK && x == 0.75);
  const int one_class[2] = {1, 1};
  EXPECT(swd_auc(scores, one_class, 2, &x) == SWD_ERR_NUMERIC);

  /* Session 7 ranked 1, 2, 3 by the three inputs. */
  const uint64_t rank_ids[9] = {7, 8, 9, 7, 8, 9, 7, 8, 9};
  const double rank_scores[9] = {0.9, 0.5, 0.1, 0.5, 0.9, 0.1, 0.1, 0.9, 0.5};
  uint64_t fused_ids[3];
  double fused_scores[3];
  EXPECT(swd_rank_fuse(3, 3, rank_ids, rank_scores, fused_ids, fused_scores) == SWD_OK);
  for (int i = 0; i < 3; ++i)
    if (fused_ids[i] == 7) EXPECT(fabs(fused_scores[i] - 11.0 / 18.0) < 1e-15);

  int in = 0;
  EXPECT(swd_in_validation(31, 10, 1, &in) == SWD_OK && in == 1);
  EXPECT(swd_in_validation(32, 10, 1, &in) == SWD_OK && in == 0);
  EXPECT(swd_in_validation(3, 1, 0, &in) == SWD_ERR_INVALID_ARGUMENT);

  uint64_t f1 = 0, f2 = 0;
  EXPECT(swd_feature_id(3, "5", &f1) == SWD_OK && swd_feature_id(7, "5", &f2) == SWD_OK && f1 != f2);
  EXPECT(swd_feature_id(21, "5", &f1) == SWD_ERR_INVALID_ARGUMENT);

  swd_options* o = NULL;
  EXPECT(swd_options_create(&o) == SWD_OK);
  EXPECT(swd_options_set(o, "task", "4cat") == SWD_OK);
  EXPECT(swd_options_set(o, "beta", "-2") == SWD_ERR_CONFIG);
  EXPECT(swd_options_set(o, "bogus", "1") == SWD_ERR_CONFIG);
  const char* json = NULL;
  EXPECT(swd_options_json(o, &json) == SWD_OK && strstr(json, "\"4cat\"") != NULL);
  swd_dataset_stats st;
  EXPECT(swd_run_stats(o, fixture, &st) == SWD_OK && st.sessions == 20);
  EXPECT(swd_run_stats(o, "/nonexistent/log.tsv", &st) == SWD_ERR_IO);
  int n = 0;
  EXPECT(swd_extract_features(o, fixture, NULL, count_sessions, &n) == SWD_OK && n == 20);
  n = 0;
  EXPECT(swd_extract_features(o, fixture, NULL, stop_after_one, &n) == SWD_OK && n == 1);
  swd_options_destroy(o);

  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi smoke: ok\n");
  return 0;
}
