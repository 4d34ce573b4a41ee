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

#include "synth/generator.hpp"

#include <algorithm>
#include <array>
#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/geometric_distribution.hpp>
#include <boost/random/lognormal_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <cmath>
#include <nlohmann/json.hpp>

#include "common/error.hpp"
#include "common/text.hpp"
#include "inference/probit.hpp"

namespace swd {

namespace {

using Rng = boost::random::mt19937_64;
using nlohmann::json;

constexpr std::size_t kSerpSize = 10;
constexpr std::int64_t kSlowClick = 64;  // an interval bucket edge

struct User {
  double propensity = 0.0;
  bool toolbar = false;
  double activity = 1.0;
  double click_prob = 0.7;
  double depth = 2.5;  // mean click position scale
  double pace = 20.0;  // median seconds to first click
};

// Observables of one generated session that the latent scores use.
struct Drawn {
  Session session;
  double serp_score = 0.0;
  double toolbar_score = 0.0;
};

std::vector<User> draw_users(const GeneratorParams& p, Rng& rng) {
  boost::random::normal_distribution<double> normal;
  boost::random::bernoulli_distribution<double> toolbar(p.toolbar_fraction);
  boost::random::lognormal_distribution<double> activity(0.0, 0.8);
  std::vector<User> users(p.n_users);
  for (auto& u : users) {
    u.propensity = normal(rng);
    u.toolbar = toolbar(rng);
    u.activity = activity(rng);
    u.click_prob = 0.45 + 0.5 * boost::random::uniform_01<double>()(rng);
    u.depth = 1.0 + 4.0 * boost::random::uniform_01<double>()(rng);
    u.pace = 10.0 * std::exp(1.2 * normal(rng));
  }
  return users;
}

Drawn draw_session(SessionId id, int day, UserId user_id, const User& user, const GeneratorParams& p,
                   boost::random::discrete_distribution<std::uint64_t, double>& query_dist, Rng& rng) {
  boost::random::geometric_distribution<int, double> extra_queries(0.45);
  boost::random::bernoulli_distribution<double> clicks(user.click_prob);
  boost::random::uniform_int_distribution<int> n_clicks(1, 3);
  boost::random::lognormal_distribution<double> gap(std::log(120.0), 0.8);
  boost::random::lognormal_distribution<double> pace(std::log(user.pace), 0.6);
  boost::random::lognormal_distribution<double> dwell(std::log(40.0), 0.9);

  std::vector<double> position_weights(kSerpSize);
  for (std::size_t k = 0; k < kSerpSize; ++k) position_weights[k] = std::exp(-static_cast<double>(k) / user.depth);
  boost::random::discrete_distribution<std::size_t, double> position(position_weights);

  Drawn d;
  d.session = Session{id, day, user_id, std::nullopt, {}};
  const std::uint64_t rare_cut = p.n_queries / 5;

  const int n_queries = 1 + extra_queries(rng);
  std::int64_t now = 0;
  int rare = 0, total_clicks = 0, deep = 0, serps_clicked = 0, slow = 0;
  for (int qi = 0; qi < n_queries; ++qi) {
    if (qi > 0) now += 1 + static_cast<std::int64_t>(gap(rng));
    const QueryId q = 1 + query_dist(rng);
    if (q > rare_cut) ++rare;
    QueryRecord rec{id, now, static_cast<SerpId>(qi), q, {}};
    for (std::size_t k = 0; k < kSerpSize; ++k) rec.urls.push_back(q * kSerpSize + k);
    const auto urls = rec.urls;
    d.session.events.emplace_back(std::move(rec));
    if (!clicks(rng)) continue;
    ++serps_clicked;
    const int c = n_clicks(rng);
    for (int ci = 0; ci < c; ++ci) {
      const auto wait = 1 + static_cast<std::int64_t>(ci == 0 ? pace(rng) : dwell(rng));
      if (ci == 0 && wait >= kSlowClick) ++slow;
      now += wait;
      const std::size_t pos = position(rng);
      if (pos >= 4) ++deep;
      ++total_clicks;
      d.session.events.emplace_back(ClickRecord{id, now, static_cast<SerpId>(qi), urls[pos]});
    }
  }

  const auto& w = p.weights;
  d.serp_score = w.user * user.propensity + w.rare_query * rare / static_cast<double>(n_queries) +
                 w.deep_click * (total_clicks ? deep / static_cast<double>(total_clicks) : 0.0) +
                 w.no_click * (total_clicks == 0 ? 1.0 : 0.0);
  d.toolbar_score = w.user * user.propensity + w.toolbar * (user.toolbar ? 1.0 : 0.0) +
                    w.slow_click * (serps_clicked ? slow / static_cast<double>(serps_clicked) : 0.0);
  return d;
}

double expected_rate(const std::vector<Drawn>& drawn, double offset) {
  double sum = 0.0;
  for (const auto& d : drawn)
    sum += 1.0 - (1.0 - normal_cdf(d.serp_score + offset)) * (1.0 - normal_cdf(d.toolbar_score + offset));
  return sum / static_cast<double>(drawn.size());
}

double calibrate_offset(const std::vector<Drawn>& drawn, double target) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (expected_rate(drawn, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error(std::string("generator parameter '") + key + "': " + e.what());
  }
}

}  // namespace

void GeneratorParams::validate() const {
  if (n_sessions > 0 && n_users == 0) throw config_error("n_users must be positive");
  if (n_sessions > 0 && n_queries < 5) throw config_error("n_queries must be at least 5");
  if (!(switch_rate > 0.0 && switch_rate < 1.0)) throw config_error("switch_rate must lie in (0, 1)");
  if (!(toolbar_fraction >= 0.0 && toolbar_fraction <= 1.0))
    throw config_error("toolbar_fraction must lie in [0, 1]");
  for (double v : {weights.user, weights.rare_query, weights.deep_click, weights.no_click, weights.toolbar,
                   weights.slow_click})
    if (!std::isfinite(v) || std::abs(v) > 20.0) throw config_error("generator weights must be finite and |w| <= 20");
}

GeneratorParams GeneratorParams::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("generator parameters: ") + e.what());
  }
  if (!j.is_object()) throw config_error("generator parameters must be a JSON object");
  static const std::vector<std::string> known{"n_users",          "n_sessions", "n_queries", "switch_rate",
                                              "toolbar_fraction", "weights",    "seed"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw config_error("unknown generator parameter '" + key + "'");

  GeneratorParams p;
  read_field(j, "n_users", p.n_users);
  read_field(j, "n_sessions", p.n_sessions);
  read_field(j, "n_queries", p.n_queries);
  read_field(j, "switch_rate", p.switch_rate);
  read_field(j, "toolbar_fraction", p.toolbar_fraction);
  read_field(j, "seed", p.seed);
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    if (!w.is_object()) throw config_error("generator weights must be a JSON object");
    static const std::vector<std::string> names{"user", "rare_query", "deep_click", "no_click", "toolbar", "slow_click"};
    for (const auto& [key, value] : w.items())
      if (std::find(names.begin(), names.end(), key) == names.end())
        throw config_error("unknown generator weight '" + key + "'");
    read_field(w, "user", p.weights.user);
    read_field(w, "rare_query", p.weights.rare_query);
    read_field(w, "deep_click", p.weights.deep_click);
    read_field(w, "no_click", p.weights.no_click);
    read_field(w, "toolbar", p.weights.toolbar);
    read_field(w, "slow_click", p.weights.slow_click);
  }
  p.validate();
  return p;
}

std::string GeneratorParams::to_json() const {
  json j{{"n_users", n_users},
         {"n_sessions", n_sessions},
         {"n_queries", n_queries},
         {"switch_rate", switch_rate},
         {"toolbar_fraction", toolbar_fraction},
         {"seed", seed},
         {"weights",
          {{"user", weights.user},
           {"rare_query", weights.rare_query},
           {"deep_click", weights.deep_click},
           {"no_click", weights.no_click},
           {"toolbar", weights.toolbar},
           {"slow_click", weights.slow_click}}}};
  return j.dump(2);
}

SyntheticLog generate_synthetic(const GeneratorParams& p) {
  p.validate();
  SyntheticLog out;
  if (p.n_sessions == 0) return out;

  Rng rng(p.seed);
  const auto users = draw_users(p, rng);

  std::vector<double> activity;
  for (const auto& u : users) activity.push_back(u.activity);
  boost::random::discrete_distribution<std::uint64_t, double> user_dist(activity);

  // Zipf(1) query popularity.
  std::vector<double> zipf(p.n_queries);
  for (std::size_t r = 0; r < zipf.size(); ++r) zipf[r] = 1.0 / static_cast<double>(r + 1);
  boost::random::discrete_distribution<std::uint64_t, double> query_dist(zipf);

  std::vector<Drawn> drawn;
  drawn.reserve(p.n_sessions);
  for (SessionId id = 1; id <= p.n_sessions; ++id) {
    const int day = 1 + static_cast<int>((id - 1) * 30 / p.n_sessions);
    const auto u = user_dist(rng);
    drawn.push_back(draw_session(id, day, u + 1, users[u], p, query_dist, rng));
  }

  out.offset = calibrate_offset(drawn, p.switch_rate);
  out.expected_switch_rate = expected_rate(drawn, out.offset);

  boost::random::normal_distribution<double> noise;
  boost::random::lognormal_distribution<double> switch_delay(std::log(30.0), 0.7);
  out.sessions.reserve(drawn.size());
  out.truth.reserve(drawn.size());
  for (auto& d : drawn) {
    const bool serp = d.serp_score + out.offset + noise(rng) > 0.0;
    const bool toolbar = d.toolbar_score + out.offset + noise(rng) > 0.0;
    const SwitchType type = serp && toolbar ? SwitchType::kBoth
                            : serp          ? SwitchType::kSerp
                            : toolbar       ? SwitchType::kToolbar
                                            : SwitchType::kNone;
    auto& s = d.session;
    s.switch_type = type;
    if (type != SwitchType::kNone) {
      const auto last = time_of(s.events.back());
      s.events.emplace_back(SwitchRecord{s.session_id, last + 1 + static_cast<std::int64_t>(switch_delay(rng))});
    }
    SessionTruth t{s.session_id, type, normal_cdf(d.serp_score + out.offset),
                   normal_cdf(d.toolbar_score + out.offset), 0.0};
    t.p_switch = 1.0 - (1.0 - t.p_serp) * (1.0 - t.p_toolbar);
    out.truth.push_back(t);
    out.sessions.push_back(std::move(s));
  }
  return out;
}

std::string format_log(const std::vector<Session>& sessions) {
  std::string out;
  for (const auto& s : sessions) out += format_session(s);
  return out;
}

std::string format_truth(const std::vector<SessionTruth>& truth) {
  std::string out = "session_id\tswitch_type\tp_serp\tp_toolbar\tp_switch\n";
  for (const auto& t : truth) {
    out += std::to_string(t.session_id);
    out += '\t';
    out += to_char(t.switch_type);
    for (double v : {t.p_serp, t.p_toolbar, t.p_switch}) {
      out += '\t';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string format_generator_report(const GeneratorParams& params, const SyntheticLog& log) {
  std::array<std::uint64_t, 4> counts{};
  for (const auto& t : log.truth) ++counts[index_of(t.switch_type)];
  const double n = log.truth.empty() ? 1.0 : static_cast<double>(log.truth.size());
  json j{{"params", json::parse(params.to_json())},
         {"offset", log.offset},
         {"expected_switch_rate", log.expected_switch_rate},
         {"realized_switch_rate", static_cast<double>(log.truth.size() - counts[0]) / n},
         {"type_counts", {{"N", counts[0]}, {"P", counts[1]}, {"B", counts[2]}, {"H", counts[3]}}}};
  if (log.truth.empty()) j["realized_switch_rate"] = 0.0;
  return j.dump(2) + "\n";
}

}  // namespace swd
