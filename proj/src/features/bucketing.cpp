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

#include "features/bucketing.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "json.hpp"

namespace swd {

BucketingConfig BucketingConfig::defaults() {
  BucketingConfig c;
  c.time_bucket_edges.push_back(0.0);
  for (int k = 0; k <= 14; ++k) c.time_bucket_edges.push_back(std::ldexp(1.0, k));
  c.interval_bucket_edges = c.time_bucket_edges;
  c.popularity_bucket_edges = {0.0, 1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6, 1e7};
  for (int k = 0; k < 10; ++k) c.ratio_bucket_edges.push_back(k / 10.0);
  return c;
}

namespace {

void check_edges(const std::vector<double>& edges, const char* name) {
  if (edges.empty()) throw config_error(std::string(name) + ": no edges");
  if (edges.front() != 0.0) throw config_error(std::string(name) + ": first edge must be 0");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]) || !std::isfinite(edges[i]))
      throw config_error(std::string(name) + ": edges must be finite and strictly ascending");
}

}  // namespace

void BucketingConfig::validate() const {
  check_edges(time_bucket_edges, "time_bucket_edges");
  check_edges(interval_bucket_edges, "interval_bucket_edges");
  check_edges(popularity_bucket_edges, "popularity_bucket_edges");
  check_edges(ratio_bucket_edges, "ratio_bucket_edges");
  if (url_top_k == 0) throw config_error("url_top_k must be >= 1");
  if (action_window <= 0) throw config_error("action_window must be > 0");
  if (action_sequence_cap < 2) throw config_error("action_sequence_cap must be >= 2");
  if (pattern_bins == 0) throw config_error("pattern_bins must be >= 1");
  if (query_count_cap == 0 || duplicate_cap == 0 || position_count_cap == 0)
    throw config_error("count caps must be >= 1");
}

BucketingConfig BucketingConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("bucketing config: ") + e.what());
  }
  if (!j.is_object()) throw config_error("bucketing config: expected a JSON object");

  static const char* const kKnown[] = {
      "time_bucket_edges", "interval_bucket_edges", "popularity_bucket_edges",
      "ratio_bucket_edges", "url_top_k", "action_window", "action_sequence_cap",
      "pattern_bins", "query_count_cap", "duplicate_cap", "position_count_cap"};
  for (const auto& [key, _] : j.items())
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
      throw config_error("bucketing config: unknown key '" + key + "'");

  auto c = defaults();
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("time_bucket_edges", c.time_bucket_edges);
    get("interval_bucket_edges", c.interval_bucket_edges);
    get("popularity_bucket_edges", c.popularity_bucket_edges);
    get("ratio_bucket_edges", c.ratio_bucket_edges);
    get("url_top_k", c.url_top_k);
    get("action_window", c.action_window);
    get("action_sequence_cap", c.action_sequence_cap);
    get("pattern_bins", c.pattern_bins);
    get("query_count_cap", c.query_count_cap);
    get("duplicate_cap", c.duplicate_cap);
    get("position_count_cap", c.position_count_cap);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("bucketing config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string BucketingConfig::to_json() const {
  nlohmann::ordered_json j;
  j["time_bucket_edges"] = time_bucket_edges;
  j["interval_bucket_edges"] = interval_bucket_edges;
  j["popularity_bucket_edges"] = popularity_bucket_edges;
  j["ratio_bucket_edges"] = ratio_bucket_edges;
  j["url_top_k"] = url_top_k;
  j["action_window"] = action_window;
  j["action_sequence_cap"] = action_sequence_cap;
  j["pattern_bins"] = pattern_bins;
  j["query_count_cap"] = query_count_cap;
  j["duplicate_cap"] = duplicate_cap;
  j["position_count_cap"] = position_count_cap;
  return j.dump(2);
}

int bucket_of(double x, const std::vector<double>& edges) noexcept {
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return static_cast<int>(it - edges.begin()) - 1;
}

}  // namespace swd
