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
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "inference/model.hpp"
#include "log/session.hpp"

namespace swd {

struct ScoredSession {
  SessionId session_id = 0;
  double score = 0.0;

  friend bool operator==(const ScoredSession&, const ScoredSession&) = default;
};

/// Sessions ordered by descending score; rank 1 is the most switch-likely.
/// Equal scores are ordered by ascending session id.
class RankedPrediction {
 public:
  RankedPrediction() = default;
  /// Throws on duplicate session ids or non-finite scores.
  static RankedPrediction from_scores(std::span<const ScoredSession> scores);

  std::span<const ScoredSession> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// 1-based rank; throws invalid_argument for an unknown session.
  std::size_t rank(SessionId id) const;
  bool contains(SessionId id) const noexcept { return rank_.contains(id); }

 private:
  std::vector<ScoredSession> entries_;
  std::unordered_map<SessionId, std::size_t> rank_;
};

/// Harmonic mean of each session's ranks across the inputs, keyed by session.
/// All rankings must cover the same sessions; otherwise throws a format
/// error listing the sessions not present everywhere.
std::unordered_map<SessionId, double> harmonic_rank_scores(std::span<const RankedPrediction> rankings);

/// Fused ranking whose scores are 1 / harmonic-mean rank, so a lower fused
/// rank score comes first.
RankedPrediction rank_fuse(std::span<const RankedPrediction> rankings);

/// Mann-Whitney AUC with ties counted half. Throws numeric_error when either
/// class is empty and invalid_argument on NaN scores or size mismatch.
double auc(std::span<const double> scores, std::span<const Label> labels);

/// Joins scores to labels by session id; every scored session needs a label.
double auc(std::span<const ScoredSession> scores, const std::unordered_map<SessionId, Label>& labels);

/// O(n^2) pair counting. Slow; kept for verification.
double auc_brute_force(std::span<const double> scores, std::span<const Label> labels);

/// Validation membership by session id residue.
bool in_validation(SessionId id, std::uint64_t modulus, std::uint64_t residue);

struct Split {
  std::vector<Session> training;
  std::vector<Session> validation;
};

/// Throws invalid_argument unless modulus >= 2 and residue < modulus.
Split proportional_split(std::vector<Session> sessions, std::uint64_t modulus = 10, std::uint64_t residue = 1);
void validate_split_params(std::uint64_t modulus, std::uint64_t residue);

struct DatasetStats {
  std::uint64_t sessions = 0;
  std::uint64_t users = 0;
  std::uint64_t queries = 0;
  /// Distinct URLs shown or clicked.
  std::uint64_t urls = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

class DatasetStatsBuilder {
 public:
  void add(const Session& s);
  DatasetStats result() const;

 private:
  std::uint64_t sessions_ = 0;
  std::unordered_set<UserId> users_;
  std::unordered_set<QueryId> queries_;
  std::unordered_set<UrlId> urls_;
};

DatasetStats dataset_stats(std::span<const Session> sessions);

}  // namespace swd
