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
#include <string>
#include <vector>

#include "log/session.hpp"

namespace swd {

/// Coefficients of the two latent probit scores the generator draws switch
/// labels from. The SERP score drives P, the toolbar score drives B, and a
/// session where both fire is H.
struct GeneratorWeights {
  double user = 1.5;        // per-user latent propensity (both scores)
  double rare_query = 1.5;  // fraction of tail queries (SERP score)
  double deep_click = 2.0;  // fraction of clicks at positions 5-10 (SERP score)
  double no_click = 1.5;    // session without any click (SERP score)
  double toolbar = 1.5;     // user has the toolbar installed (toolbar score)
  double slow_click = 2.0;  // fraction of slow first clicks (toolbar score)

  friend bool operator==(const GeneratorWeights&, const GeneratorWeights&) = default;
};

struct GeneratorParams {
  std::uint64_t n_users = 2000;
  std::uint64_t n_sessions = 60000;
  std::uint64_t n_queries = 5000;
  /// Target fraction of sessions with any switch; the common score offset
  /// is calibrated by bisection to hit it in expectation.
  double switch_rate = 0.3;
  double toolbar_fraction = 0.3;
  GeneratorWeights weights;
  std::uint64_t seed = 42;

  /// Throws config_error for out-of-range values.
  void validate() const;
  /// Unknown keys are rejected; missing keys keep their defaults.
  static GeneratorParams from_json(const std::string& text);
  std::string to_json() const;

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

struct SessionTruth {
  SessionId session_id = 0;
  SwitchType switch_type = SwitchType::kNone;
  double p_serp = 0.0;
  double p_toolbar = 0.0;
  /// 1 - (1 - p_serp)(1 - p_toolbar).
  double p_switch = 0.0;
};

struct SyntheticLog {
  std::vector<Session> sessions;
  std::vector<SessionTruth> truth;
  /// Calibrated common offset added to both latent scores.
  double offset = 0.0;
  /// Mean of p_switch over all sessions.
  double expected_switch_rate = 0.0;
};

/// Deterministic in params (including the seed). Session ids run 1..n in
/// file order and days increase with the id.
SyntheticLog generate_synthetic(const GeneratorParams& params);

/// The log file text: every session formatted as log lines.
std::string format_log(const std::vector<Session>& sessions);
/// "session_id switch_type p_serp p_toolbar p_switch" TSV with a header.
std::string format_truth(const std::vector<SessionTruth>& truth);
/// Params plus the calibrated offset and realized rates.
std::string format_generator_report(const GeneratorParams& params, const SyntheticLog& log);

}  // namespace swd
