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

#include "eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "common/error.hpp"

namespace swd {

RankedPrediction RankedPrediction::from_scores(std::span<const ScoredSession> scores) {
  RankedPrediction out;
  out.entries_.assign(scores.begin(), scores.end());
  for (const auto& e : out.entries_)
    if (!std::isfinite(e.score))
      throw invalid_argument("session " + std::to_string(e.session_id) + " has a non-finite score");
  std::sort(out.entries_.begin(), out.entries_.end(), [](const ScoredSession& a, const ScoredSession& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.session_id < b.session_id;
  });
  out.rank_.reserve(out.entries_.size());
  for (std::size_t i = 0; i < out.entries_.size(); ++i)
    if (!out.rank_.emplace(out.entries_[i].session_id, i + 1).second)
      throw invalid_argument("duplicate session " + std::to_string(out.entries_[i].session_id) + " in ranking");
  return out;
}

std::size_t RankedPrediction::rank(SessionId id) const {
  const auto it = rank_.find(id);
  if (it == rank_.end()) throw invalid_argument("session " + std::to_string(id) + " is not ranked");
  return it->second;
}

std::unordered_map<SessionId, double> harmonic_rank_scores(std::span<const RankedPrediction> rankings) {
  if (rankings.empty()) throw invalid_argument("rank fusion needs at least one ranking");

  std::set<SessionId> mismatched;
  for (const auto& r : rankings)
    for (const auto& e : r.entries())
      for (const auto& other : rankings)
        if (!other.contains(e.session_id)) mismatched.insert(e.session_id);
  if (!mismatched.empty()) {
    std::string msg = "rankings cover different sessions; not in every input:";
    std::size_t shown = 0;
    for (auto id : mismatched) {
      if (shown++ == 20) {
        msg += " ... (" + std::to_string(mismatched.size()) + " total)";
        break;
      }
      msg += " " + std::to_string(id);
    }
    throw format_error(msg);
  }

  const double k = static_cast<double>(rankings.size());
  std::unordered_map<SessionId, double> out;
  out.reserve(rankings[0].size());
  for (const auto& e : rankings[0].entries()) {
    double inv = 0.0;
    for (const auto& r : rankings) inv += 1.0 / static_cast<double>(r.rank(e.session_id));
    out.emplace(e.session_id, k / inv);
  }
  return out;
}

RankedPrediction rank_fuse(std::span<const RankedPrediction> rankings) {
  const auto scores = harmonic_rank_scores(rankings);
  std::vector<ScoredSession> fused;
  fused.reserve(scores.size());
  for (const auto& [id, rank_score] : scores) fused.push_back({id, 1.0 / rank_score});
  return RankedPrediction::from_scores(fused);
}

namespace {

struct ClassCounts {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

ClassCounts check_auc_inputs(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) throw invalid_argument("scores and labels differ in length");
  ClassCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw invalid_argument("NaN score");
    (labels[i] == Label::kSwitch ? c.pos : c.neg)++;
  }
  if (c.pos == 0 || c.neg == 0) throw numeric_error("AUC is undefined when only one class is present");
  return c;
}

}  // namespace

// Tie-aware rank sums, kept in doubled integers so the numerator is exact:
// a tie group occupying ranks r..r+g-1 gives each member 2r+g-1.
double auc(std::span<const double> scores, std::span<const Label> labels) {
  const auto c = check_auc_inputs(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  unsigned __int128 pos_rank_sum2 = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::uint64_t pos_in_group = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]] == Label::kSwitch) ++pos_in_group;
      ++j;
    }
    const std::uint64_t doubled_mid = 2 * (i + 1) + (j - i) - 1;
    pos_rank_sum2 += static_cast<unsigned __int128>(pos_in_group) * doubled_mid;
    i = j;
  }
  const auto u2 = pos_rank_sum2 - static_cast<unsigned __int128>(c.pos) * (c.pos + 1);
  return static_cast<double>(u2) / (2.0 * static_cast<double>(c.pos) * static_cast<double>(c.neg));
}

double auc(std::span<const ScoredSession> scores, const std::unordered_map<SessionId, Label>& labels) {
  std::vector<double> s;
  std::vector<Label> l;
  s.reserve(scores.size());
  l.reserve(scores.size());
  for (const auto& e : scores) {
    const auto it = labels.find(e.session_id);
    if (it == labels.end()) throw invalid_argument("session " + std::to_string(e.session_id) + " has no label");
    s.push_back(e.score);
    l.push_back(it->second);
  }
  return auc(s, l);
}

double auc_brute_force(std::span<const double> scores, std::span<const Label> labels) {
  const auto c = check_auc_inputs(scores, labels);
  std::uint64_t wins2 = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != Label::kSwitch) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != Label::kNoSwitch) continue;
      if (scores[i] > scores[j]) wins2 += 2;
      else if (scores[i] == scores[j]) wins2 += 1;
    }
  }
  return static_cast<double>(wins2) / (2.0 * static_cast<double>(c.pos) * static_cast<double>(c.neg));
}

void validate_split_params(std::uint64_t modulus, std::uint64_t residue) {
  if (modulus < 2) throw invalid_argument("split modulus must be at least 2");
  if (residue >= modulus) throw invalid_argument("split residue must be below the modulus");
}

bool in_validation(SessionId id, std::uint64_t modulus, std::uint64_t residue) {
  return id % modulus == residue;
}

Split proportional_split(std::vector<Session> sessions, std::uint64_t modulus, std::uint64_t residue) {
  validate_split_params(modulus, residue);
  Split out;
  for (auto& s : sessions)
    (in_validation(s.session_id, modulus, residue) ? out.validation : out.training).push_back(std::move(s));
  return out;
}

void DatasetStatsBuilder::add(const Session& s) {
  ++sessions_;
  users_.insert(s.user_id);
  for (const auto& e : s.events) {
    if (const auto* q = std::get_if<QueryRecord>(&e)) {
      queries_.insert(q->query_id);
      for (auto u : q->urls) urls_.insert(u);
    } else if (const auto* c = std::get_if<ClickRecord>(&e)) {
      urls_.insert(c->url_id);
    }
  }
}

DatasetStats DatasetStatsBuilder::result() const {
  return {sessions_, users_.size(), queries_.size(), urls_.size()};
}

DatasetStats dataset_stats(std::span<const Session> sessions) {
  DatasetStatsBuilder b;
  for (const auto& s : sessions) b.add(s);
  return b.result();
}

}  // namespace swd
