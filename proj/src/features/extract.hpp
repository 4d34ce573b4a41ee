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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "features/bucketing.hpp"
#include "features/corpus_stats.hpp"
#include "features/families.hpp"
#include "inference/model.hpp"
#include "log/session.hpp"

namespace swd {

using Tokens = std::vector<FeatureToken>;

// Extractors, grouped as in the feature table. Each family instance emits
// exactly one value token; encode() folds repeated tokens together.

/// UserID; User_switch_ratio as one "T:bucket" token per switch type T, or
/// "T:unknown" for users without labeled history.
Tokens extract_user_features(const Session& s, const StatsLookup& stats, const BucketingConfig& cfg);

/// QueryID and QueryID_Popularity per query; Query_Count and Query_Duplicate
/// once per session.
Tokens extract_query_features(const Session& s, const StatsLookup& stats, const BucketingConfig& cfg);

/// URLID, Query_URLid_List ("query:url:position") and URL_Popularity for the
/// top-K shown URLs of each query; ClickedURL_Filtered per clicked URL.
Tokens extract_url_features(const Session& s, const StatsLookup& stats, const BucketingConfig& cfg);

/// Action_Sequence and the normalized 4- to 7-gram patterns of it.
Tokens extract_sequence_features(const Session& s, const BucketingConfig& cfg);

/// QueryID_Time, Query_Click_Interval, Click_NextQuery_Interval.
Tokens extract_timeline_features(const Session& s, const BucketingConfig& cfg);

/// Click_Position_Count per clicked SERP and the session MRR. Clicks on URLs
/// missing from their SERP are skipped and added to *skipped_clicks.
Tokens extract_position_features(const Session& s, const BucketingConfig& cfg,
                                 std::uint64_t* skipped_clicks = nullptr);

/// "M" followed by the event letters of each non-empty time window, windows
/// in order and letters in time order within a window.
std::string action_string(const Session& s, std::int64_t window);

/// Distinct contiguous n-grams of `seq` with their within-string frequency
/// (count / number of n-grams) mapped to one of `bins` equal-width bins on
/// [0, 1]. Empty when seq is shorter than n.
std::vector<std::pair<std::string, std::size_t>> normalized_ngrams(std::string_view seq, std::size_t n,
                                                                   std::size_t bins);

/// Strings longer than `cap` become head(cap/2) + "~" + tail(cap/2).
std::string cap_action_sequence(const std::string& seq, std::size_t cap);

/// Hashes each enabled token to its feature id (1-in-N coordinates).
FeatureVector encode(std::span<const FeatureToken> tokens, FamilySet families = FamilySet::all());

/// All extractors over one frozen CorpusStats. Safe to share across threads.
class FeatureExtractor {
 public:
  FeatureExtractor(const CorpusStats& stats, BucketingConfig config, FamilySet families);

  const BucketingConfig& config() const noexcept { return config_; }
  FamilySet families() const noexcept { return families_; }

  /// Raw tokens of every family for the session exactly as given.
  Tokens tokens(const Session& s, const StatsContribution* self = nullptr) const;

  /// Prediction path: switches are masked before extraction, so the result
  /// never depends on S records or the switch type.
  FeatureVector extract(const Session& s) const;

  /// Training path: same masked extraction, optionally with the session's
  /// own contribution removed from the corpus statistics.
  FeatureVector extract_for_training(const Session& s, bool exclude_self) const;

 private:
  const CorpusStats& stats_;
  BucketingConfig config_;
  FamilySet families_;
};

}  // namespace swd
