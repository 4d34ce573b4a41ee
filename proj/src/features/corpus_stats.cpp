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

#include "features/corpus_stats.hpp"

#include <algorithm>
#include <vector>

#include "common/binary_io.hpp"
#include "common/error.hpp"

namespace swd {

StatsContribution StatsContribution::of(const Session& s) {
  StatsContribution c;
  c.user_id = s.user_id;
  c.switch_type = s.switch_type;
  for (const auto& e : s.events) {
    if (const auto* q = std::get_if<QueryRecord>(&e)) {
      c.queries.insert(q->query_id);
      c.urls.insert(q->urls.begin(), q->urls.end());
    }
  }
  return c;
}

void CorpusStats::add(const Session& s) {
  const auto c = StatsContribution::of(s);
  for (auto q : c.queries) ++query_frequency[q];
  for (auto u : c.urls) ++url_frequency[u];
  if (s.switch_type) ++user_switch_counts[s.user_id][index_of(*s.switch_type)];
  ++sessions;
}

void CorpusStats::merge(const CorpusStats& other) {
  for (const auto& [q, n] : other.query_frequency) query_frequency[q] += n;
  for (const auto& [u, n] : other.url_frequency) url_frequency[u] += n;
  for (const auto& [user, counts] : other.user_switch_counts) {
    auto& mine = user_switch_counts[user];
    for (std::size_t i = 0; i < mine.size(); ++i) mine[i] += counts[i];
  }
  sessions += other.sessions;
}

namespace {

template <typename Map>
std::uint64_t lookup(const Map& m, std::uint64_t key) {
  const auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

std::uint64_t minus_one_if(std::uint64_t n, bool present) { return (present && n > 0) ? n - 1 : n; }

template <typename Map>
auto sorted(const Map& m) {
  std::vector<std::pair<typename Map::key_type, typename Map::mapped_type>> v(m.begin(), m.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

constexpr std::string_view kStatsMagic = "SWDS";
constexpr std::uint32_t kStatsVersion = 1;

}  // namespace

std::uint64_t StatsLookup::query_frequency(QueryId q) const {
  return minus_one_if(lookup(stats_.query_frequency, q), self_ && self_->queries.contains(q));
}

std::uint64_t StatsLookup::url_frequency(UrlId u) const {
  return minus_one_if(lookup(stats_.url_frequency, u), self_ && self_->urls.contains(u));
}

std::optional<SwitchCounts> StatsLookup::user_counts(UserId u) const {
  const auto it = stats_.user_switch_counts.find(u);
  if (it == stats_.user_switch_counts.end()) return std::nullopt;
  SwitchCounts counts = it->second;
  if (self_ && self_->user_id == u && self_->switch_type) {
    auto& n = counts[index_of(*self_->switch_type)];
    if (n > 0) --n;
  }
  std::uint64_t total = 0;
  for (auto n : counts) total += n;
  if (total == 0) return std::nullopt;
  return counts;
}

std::string serialize_corpus_stats(const CorpusStats& stats) {
  ByteWriter w;
  w.put_bytes(kStatsMagic);
  w.put_u32(kStatsVersion);
  w.put_u64(stats.sessions);
  const auto queries = sorted(stats.query_frequency);
  w.put_u64(queries.size());
  for (const auto& [id, n] : queries) {
    w.put_u64(id);
    w.put_u64(n);
  }
  const auto urls = sorted(stats.url_frequency);
  w.put_u64(urls.size());
  for (const auto& [id, n] : urls) {
    w.put_u64(id);
    w.put_u64(n);
  }
  const auto users = sorted(stats.user_switch_counts);
  w.put_u64(users.size());
  for (const auto& [id, counts] : users) {
    w.put_u64(id);
    for (auto n : counts) w.put_u64(n);
  }
  return std::move(w).bytes();
}

CorpusStats deserialize_corpus_stats(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.get_bytes(kStatsMagic.size()) != kStatsMagic) throw format_error("not a corpus stats file");
  if (const auto v = r.get_u32(); v != kStatsVersion)
    throw format_error("unsupported corpus stats version " + std::to_string(v));
  CorpusStats stats;
  stats.sessions = r.get_u64();

  auto read_counts = [&](auto& map) {
    const auto n = r.get_u64();
    if (n > r.remaining() / 16) throw format_error("truncated byte stream");
    map.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto id = r.get_u64();
      if (!map.emplace(id, r.get_u64()).second) throw format_error("duplicate key in corpus stats");
    }
  };
  read_counts(stats.query_frequency);
  read_counts(stats.url_frequency);

  const auto users = r.get_u64();
  if (users > r.remaining() / 40) throw format_error("truncated byte stream");
  stats.user_switch_counts.reserve(users);
  for (std::uint64_t i = 0; i < users; ++i) {
    const auto id = r.get_u64();
    SwitchCounts c{};
    for (auto& n : c) n = r.get_u64();
    if (!stats.user_switch_counts.emplace(id, c).second)
      throw format_error("duplicate user in corpus stats");
  }
  r.expect_end();
  return stats;
}

}  // namespace swd
