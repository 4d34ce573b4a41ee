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

#include "features/extract.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace swd {
namespace {

std::string capped(std::uint64_t n, std::uint64_t cap) {
  return n < cap ? std::to_string(n) : std::to_string(cap) + "+";
}

std::string bucket_token(double x, const std::vector<double>& edges) {
  const int b = bucket_of(x, edges);
  return b < 0 ? "neg" : std::to_string(b);
}

std::string popularity_token(std::uint64_t freq, const BucketingConfig& cfg) {
  if (freq == 0) return "unknown";
  return bucket_token(static_cast<double>(freq), cfg.popularity_bucket_edges);
}

std::vector<const QueryRecord*> queries_of(const Session& s) {
  std::vector<const QueryRecord*> out;
  for (const auto& e : s.events)
    if (const auto* q = std::get_if<QueryRecord>(&e)) out.push_back(q);
  return out;
}

// SERP id -> first query that produced it.
std::unordered_map<SerpId, const QueryRecord*> serp_index(const Session& s) {
  std::unordered_map<SerpId, const QueryRecord*> out;
  for (const auto& e : s.events)
    if (const auto* q = std::get_if<QueryRecord>(&e)) out.try_emplace(q->serp_id, q);
  return out;
}

}  // namespace

Tokens extract_user_features(const Session& s, const StatsLookup& stats, const BucketingConfig& cfg) {
  Tokens out;
  out.push_back({Family::kUserId, std::to_string(s.user_id)});
  const auto counts = stats.user_counts(s.user_id);
  std::uint64_t total = 0;
  if (counts)
    for (auto n : *counts) total += n;
  for (const auto type : kAllSwitchTypes) {
    std::string value(1, to_char(type));
    value += ':';
    if (counts && total > 0) {
      const double ratio = static_cast<double>((*counts)[index_of(type)]) / static_cast<double>(total);
      value += bucket_token(ratio, cfg.ratio_bucket_edges);
    } else {
      value += "unknown";
    }
    out.push_back({Family::kUserSwitchRatio, std::move(value)});
  }
  return out;
}

Tokens extract_query_features(const Session& s, const StatsLookup& stats, const BucketingConfig& cfg) {
  Tokens out;
  const auto queries = queries_of(s);
  std::unordered_map<QueryId, std::uint64_t> repeats;
  std::uint64_t max_repeat = 0;
  for (const auto* q : queries) {
    out.push_back({Family::kQueryId, std::to_string(q->query_id)});
    out.push_back({Family::kQueryIdPopularity, popularity_token(stats.query_frequency(q->query_id), cfg)});
    max_repeat = std::max(max_repeat, ++repeats[q->query_id]);
  }
  out.push_back({Family::kQueryCount, capped(queries.size(), cfg.query_count_cap)});
  out.push_back({Family::kQueryDuplicate, capped(max_repeat, cfg.duplicate_cap)});
  return out;
}

Tokens extract_url_features(const Session& s, const StatsLookup& stats, const BucketingConfig& cfg) {
  Tokens out;
  for (const auto& e : s.events) {
    if (const auto* q = std::get_if<QueryRecord>(&e)) {
      const auto shown = std::min(q->urls.size(), cfg.url_top_k);
      for (std::size_t i = 0; i < shown; ++i) {
        const auto url = q->urls[i];
        out.push_back({Family::kUrlId, std::to_string(url)});
        out.push_back({Family::kQueryUrlList, std::to_string(q->query_id) + ":" +
                                                  std::to_string(url) + ":" + std::to_string(i + 1)});
        out.push_back({Family::kUrlPopularity, popularity_token(stats.url_frequency(url), cfg)});
      }
    } else if (const auto* c = std::get_if<ClickRecord>(&e)) {
      out.push_back({Family::kClickedUrlFiltered, std::to_string(c->url_id)});
    }
  }
  return out;
}

std::string action_string(const Session& s, std::int64_t window) {
  std::string out = "M";
  std::string current;
  std::int64_t current_window = -1;
  for (const auto& e : s.events) {
    const auto w = time_of(e) / window;
    if (w != current_window) {
      out += current;
      current.clear();
      current_window = w;
    }
    current += type_letter(e);
  }
  return out + current;
}

std::string cap_action_sequence(const std::string& seq, std::size_t cap) {
  if (seq.size() <= cap) return seq;
  const auto half = cap / 2;
  return seq.substr(0, half) + "~" + seq.substr(seq.size() - half);
}

std::vector<std::pair<std::string, std::size_t>> normalized_ngrams(std::string_view seq, std::size_t n,
                                                                   std::size_t bins) {
  std::vector<std::pair<std::string, std::size_t>> out;
  if (n == 0 || seq.size() < n) return out;
  std::map<std::string_view, std::uint64_t> counts;
  const auto total = seq.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) ++counts[seq.substr(i, n)];
  for (const auto& [gram, count] : counts) {
    const double freq = static_cast<double>(count) / static_cast<double>(total);
    const auto bin = std::min<std::size_t>(bins - 1, static_cast<std::size_t>(freq * static_cast<double>(bins)));
    out.emplace_back(std::string(gram), bin);
  }
  return out;
}

Tokens extract_sequence_features(const Session& s, const BucketingConfig& cfg) {
  Tokens out;
  const auto seq = action_string(s, cfg.action_window);
  out.push_back({Family::kActionSequence, cap_action_sequence(seq, cfg.action_sequence_cap)});

  constexpr Family kPatternFamilies[] = {Family::kPattern4gram, Family::kPattern5gram,
                                         Family::kPattern6gram, Family::kPattern7gram};
  for (std::size_t n = 4; n <= 7; ++n)
    for (auto& [gram, bin] : normalized_ngrams(seq, n, cfg.pattern_bins))
      out.push_back({kPatternFamilies[n - 4], gram + ":" + std::to_string(bin)});
  return out;
}

Tokens extract_timeline_features(const Session& s, const BucketingConfig& cfg) {
  Tokens out;
  const auto queries = queries_of(s);
  std::unordered_map<SerpId, std::int64_t> first_click, last_click;
  for (const auto& e : s.events) {
    if (const auto* c = std::get_if<ClickRecord>(&e)) {
      first_click.try_emplace(c->serp_id, c->time_passed);
      last_click[c->serp_id] = c->time_passed;
    }
  }

  std::unordered_map<SerpId, bool> seen_serp;
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const auto* q = queries[k];
    out.push_back({Family::kQueryIdTime, bucket_token(static_cast<double>(q->time_passed), cfg.time_bucket_edges)});

    const auto first = first_click.find(q->serp_id);
    if (first != first_click.end() && !seen_serp[q->serp_id])
      out.push_back({Family::kQueryClickInterval,
                     bucket_token(static_cast<double>(first->second - q->time_passed), cfg.interval_bucket_edges)});
    seen_serp[q->serp_id] = true;

    if (k + 1 < queries.size()) {
      const auto last = last_click.find(q->serp_id);
      if (last != last_click.end())
        out.push_back({Family::kClickNextQueryInterval,
                       bucket_token(static_cast<double>(queries[k + 1]->time_passed - last->second),
                                    cfg.interval_bucket_edges)});
    }
  }
  return out;
}

Tokens extract_position_features(const Session& s, const BucketingConfig& cfg,
                                 std::uint64_t* skipped_clicks) {
  Tokens out;
  const auto serps = serp_index(s);
  std::map<SerpId, std::uint64_t> deep_clicks;  // SERPs with at least one valid click
  double reciprocal_sum = 0.0;
  std::uint64_t valid_clicks = 0;

  for (const auto& e : s.events) {
    const auto* c = std::get_if<ClickRecord>(&e);
    if (!c) continue;
    const auto it = serps.find(c->serp_id);
    std::size_t position = 0;
    if (it != serps.end()) {
      const auto& urls = it->second->urls;
      const auto pos = std::find(urls.begin(), urls.end(), c->url_id);
      if (pos != urls.end()) position = static_cast<std::size_t>(pos - urls.begin()) + 1;
    }
    if (position == 0) {
      if (skipped_clicks) ++*skipped_clicks;
      continue;
    }
    auto& deep = deep_clicks[c->serp_id];
    if (position >= 5 && position <= 10) ++deep;
    reciprocal_sum += 1.0 / static_cast<double>(position);
    ++valid_clicks;
  }

  for (const auto& [serp, count] : deep_clicks)
    out.push_back({Family::kClickPositionCount, capped(count, cfg.position_count_cap)});
  if (valid_clicks == 0) {
    out.push_back({Family::kMrr, "no-click"});
  } else {
    const double mrr = reciprocal_sum / static_cast<double>(valid_clicks);
    out.push_back({Family::kMrr, bucket_token(mrr, cfg.ratio_bucket_edges)});
  }
  return out;
}

FeatureVector encode(std::span<const FeatureToken> tokens, FamilySet families) {
  std::vector<FeatureId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens)
    if (families.contains(t.family)) ids.push_back(feature_id(t.family, t.value));
  return FeatureVector(std::move(ids));
}

FeatureExtractor::FeatureExtractor(const CorpusStats& stats, BucketingConfig config, FamilySet families)
    : stats_(stats), config_(std::move(config)), families_(families) {
  config_.validate();
}

Tokens FeatureExtractor::tokens(const Session& s, const StatsContribution* self) const {
  const StatsLookup lookup(stats_, self);
  Tokens out = extract_user_features(s, lookup, config_);
  auto append = [&out](Tokens more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  append(extract_query_features(s, lookup, config_));
  append(extract_url_features(s, lookup, config_));
  append(extract_sequence_features(s, config_));
  append(extract_timeline_features(s, config_));
  append(extract_position_features(s, config_));
  return out;
}

FeatureVector FeatureExtractor::extract(const Session& s) const {
  return encode(tokens(mask_switches(s)), families_);
}

FeatureVector FeatureExtractor::extract_for_training(const Session& s, bool exclude_self) const {
  if (!exclude_self) return extract(s);
  const auto self = StatsContribution::of(s);
  return encode(tokens(mask_switches(s), &self), families_);
}

}  // namespace swd
