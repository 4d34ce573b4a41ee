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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "log/session.hpp"

namespace swd {

/// Per-user session counts indexed by index_of(SwitchType): N, P, B, H.
using SwitchCounts = std::array<std::uint64_t, 4>;

/// Training-period corpus statistics the extractors look up.
struct CorpusStats {
  /// Number of sessions in which the query was issued.
  std::unordered_map<QueryId, std::uint64_t> query_frequency;
  /// Number of sessions in which the URL was shown.
  std::unordered_map<UrlId, std::uint64_t> url_frequency;
  /// Labeled sessions per user and switch type.
  std::unordered_map<UserId, SwitchCounts> user_switch_counts;
  std::uint64_t sessions = 0;

  void add(const Session& s);
  void merge(const CorpusStats& other);

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

template <typename Range>
CorpusStats build_corpus_stats(const Range& sessions) {
  CorpusStats stats;
  for (const Session& s : sessions) stats.add(s);
  return stats;
}

/// What one session added to a CorpusStats. Subtracted at extraction time
/// when that session is itself being featurized, so training features see
/// the same "everyone else" statistics that held-out sessions see.
struct StatsContribution {
  UserId user_id = 0;
  std::optional<SwitchType> switch_type;
  std::unordered_set<QueryId> queries;
  std::unordered_set<UrlId> urls;

  static StatsContribution of(const Session& s);
};

/// Read-only view of CorpusStats with an optional self-contribution removed.
class StatsLookup {
 public:
  explicit StatsLookup(const CorpusStats& stats, const StatsContribution* self = nullptr)
      : stats_(stats), self_(self) {}

  std::uint64_t query_frequency(QueryId q) const;
  std::uint64_t url_frequency(UrlId u) const;
  /// Counts for the user, or nullopt when the user has no labeled sessions.
  std::optional<SwitchCounts> user_counts(UserId u) const;

 private:
  const CorpusStats& stats_;
  const StatsContribution* self_;
};

// Stats file: "SWDS" u32 version(=1) u64 sessions, then three sections, each
// a u64 count followed by entries in ascending key order:
//   queries { u64 id u64 count }, urls { u64 id u64 count },
//   users { u64 id u64 n u64 p u64 b u64 h }.
std::string serialize_corpus_stats(const CorpusStats& stats);
CorpusStats deserialize_corpus_stats(std::string_view bytes);

}  // namespace swd
