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

#include <algorithm>
#include <map>
#include <set>

#include "common/error.hpp"
#include "doctest.h"
#include "features/bucketing.hpp"
#include "features/corpus_stats.hpp"
#include "features/extract.hpp"
#include "features/families.hpp"
#include "log/session.hpp"

using namespace swd;

namespace {

const BucketingConfig kCfg = BucketingConfig::defaults();

Session make_session(SessionId sid, UserId user, std::optional<SwitchType> type,
                     std::vector<Event> events) {
  Session s{sid, 1, user, type, std::move(events)};
  return s;
}

std::vector<std::string> values(const Tokens& tokens, Family f) {
  std::vector<std::string> out;
  for (const auto& t : tokens)
    if (t.family == f) out.push_back(t.value);
  std::sort(out.begin(), out.end());
  return out;
}

// A session exercising every extractor: three queries (one repeated), deep
// and shallow clicks, a click on a URL missing from its SERP, and a switch.
Session fixture_session() {
  return make_session(1001, 7, SwitchType::kBoth,
                      {
                          QueryRecord{1001, 0, 0, 100, {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}},
                          ClickRecord{1001, 50, 0, 6},
                          ClickRecord{1001, 90, 0, 10},
                          QueryRecord{1001, 400, 1, 200, {21, 22, 23}},
                          ClickRecord{1001, 420, 1, 99},
                          QueryRecord{1001, 1500, 2, 100, {5, 6, 7}},
                          SwitchRecord{1001, 1600},
                      });
}

}  // namespace

TEST_CASE("family table") {
  CHECK(family_name(Family::kUserId) == "UserID");
  CHECK(family_name(Family::kMrr) == "MRR");
  CHECK(family_number(Family::kQueryIdTime) == 16);
  std::set<std::string_view> names;
  for (auto f : all_families()) {
    names.insert(family_name(f));
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK(names.size() == 20);

  const auto base = FamilySet::parse("1,3,7,16");
  CHECK(base.contains(Family::kUserId));
  CHECK(base.contains(Family::kQueryIdTime));
  CHECK_FALSE(base.contains(Family::kMrr));
  CHECK(base.to_string() == "1,3,7,16");
  CHECK(FamilySet::parse("UserID, MRR") == FamilySet{}.with(Family::kUserId).with(Family::kMrr));
  CHECK(FamilySet::parse("all") == FamilySet::all());
  CHECK_THROWS_AS(FamilySet::parse("21"), Error);
  CHECK_THROWS_AS(FamilySet::parse("Nope"), Error);
}

TEST_CASE("bucketing") {
  CHECK(bucket_of(0.0, kCfg.time_bucket_edges) == 0);
  CHECK(bucket_of(1.0, kCfg.time_bucket_edges) == 1);
  CHECK(bucket_of(3.0, kCfg.time_bucket_edges) == 2);
  CHECK(bucket_of(50.0, kCfg.time_bucket_edges) == 6);  // [32, 64)
  CHECK(bucket_of(1e9, kCfg.time_bucket_edges) == 15);
  CHECK(bucket_of(-1.0, kCfg.time_bucket_edges) == -1);
  CHECK(bucket_of(1.0 / 3.0, kCfg.ratio_bucket_edges) == 3);
  CHECK(bucket_of(1.0, kCfg.ratio_bucket_edges) == 9);

  CHECK(BucketingConfig::from_json(kCfg.to_json()) == kCfg);
  const auto custom = BucketingConfig::from_json(R"({"url_top_k": 3, "ratio_bucket_edges": [0, 0.5]})");
  CHECK(custom.url_top_k == 3);
  CHECK(custom.ratio_bucket_edges.size() == 2);
  CHECK(custom.time_bucket_edges == kCfg.time_bucket_edges);
  CHECK_THROWS_AS(BucketingConfig::from_json(R"({"ratio_bucket_edges": [0.1, 0.5]})"), Error);
  CHECK_THROWS_AS(BucketingConfig::from_json(R"({"ratio_bucket_edges": [0, 0.5, 0.5]})"), Error);
  CHECK_THROWS_AS(BucketingConfig::from_json(R"({"bogus": 1})"), Error);
  CHECK_THROWS_AS(BucketingConfig::from_json("not json"), Error);
}

TEST_CASE("build_corpus_stats") {
  std::vector<Session> sessions{
      make_session(1, 7, SwitchType::kNone, {QueryRecord{1, 0, 0, 7, {1, 2}}}),
      make_session(2, 7, SwitchType::kNone, {QueryRecord{2, 0, 0, 7, {2}}, QueryRecord{2, 5, 1, 7, {2}}}),
      make_session(3, 7, SwitchType::kToolbar, {QueryRecord{3, 0, 0, 7, {3}}}),
  };
  const auto stats = build_corpus_stats(sessions);
  CHECK(stats.user_switch_counts.at(7) == SwitchCounts{2, 0, 1, 0});
  CHECK(stats.query_frequency.at(7) == 3);
  CHECK(stats.url_frequency.at(2) == 2);
  CHECK(stats.sessions == 3);

  const auto empty = build_corpus_stats(std::vector<Session>{});
  CHECK(empty.query_frequency.empty());
  CHECK(empty.user_switch_counts.empty());
  CHECK(empty.sessions == 0);

  CorpusStats merged = build_corpus_stats(std::vector<Session>{sessions[0], sessions[1]});
  merged.merge(build_corpus_stats(std::vector<Session>{sessions[2]}));
  CHECK(merged == stats);

  const auto bytes = serialize_corpus_stats(stats);
  CHECK(deserialize_corpus_stats(bytes) == stats);
  CHECK(serialize_corpus_stats(deserialize_corpus_stats(bytes)) == bytes);
  CHECK_THROWS_AS(deserialize_corpus_stats(bytes.substr(0, bytes.size() - 1)), Error);
  CHECK_THROWS_AS(deserialize_corpus_stats("SWDS\x02\0\0\0"), Error);
}

TEST_CASE("user features") {
  CorpusStats stats;
  stats.user_switch_counts[7] = {2, 0, 1, 0};
  stats.user_switch_counts[8] = {5, 0, 0, 0};
  const StatsLookup lookup(stats);

  auto t = extract_user_features(make_session(1, 7, std::nullopt, {}), lookup, kCfg);
  CHECK(values(t, Family::kUserId) == std::vector<std::string>{"7"});
  CHECK(values(t, Family::kUserSwitchRatio) == std::vector<std::string>{"B:3", "H:0", "N:6", "P:0"});

  t = extract_user_features(make_session(1, 99, std::nullopt, {}), lookup, kCfg);
  CHECK(values(t, Family::kUserId) == std::vector<std::string>{"99"});
  CHECK(values(t, Family::kUserSwitchRatio) ==
        std::vector<std::string>{"B:unknown", "H:unknown", "N:unknown", "P:unknown"});

  t = extract_user_features(make_session(1, 8, std::nullopt, {}), lookup, kCfg);
  CHECK(values(t, Family::kUserSwitchRatio) == std::vector<std::string>{"B:0", "H:0", "N:9", "P:0"});
}

TEST_CASE("self exclusion removes the session's own contribution") {
  const auto s = make_session(1, 7, SwitchType::kToolbar, {QueryRecord{1, 0, 0, 42, {3}}});
  const auto stats = build_corpus_stats(std::vector<Session>{s});
  const auto self = StatsContribution::of(s);
  const StatsLookup lookup(stats, &self);
  CHECK_FALSE(lookup.user_counts(7));
  CHECK(lookup.query_frequency(42) == 0);
  CHECK(lookup.url_frequency(3) == 0);
  CHECK(StatsLookup(stats).query_frequency(42) == 1);
}

TEST_CASE("query features") {
  CorpusStats stats;
  stats.query_frequency[1] = 3;
  const StatsLookup lookup(stats);
  auto t = extract_query_features(make_session(1, 7, std::nullopt,
                                               {QueryRecord{1, 0, 0, 1, {1}}, QueryRecord{1, 5, 1, 2, {1}},
                                                QueryRecord{1, 9, 2, 1, {1}}}),
                                  lookup, kCfg);
  CHECK(values(t, Family::kQueryCount) == std::vector<std::string>{"3"});
  CHECK(values(t, Family::kQueryDuplicate) == std::vector<std::string>{"2"});
  CHECK(values(t, Family::kQueryIdPopularity) == std::vector<std::string>{"1", "1", "unknown"});

  t = extract_query_features(make_session(1, 7, std::nullopt, {QueryRecord{1, 0, 0, 5, {1}}}), lookup, kCfg);
  CHECK(values(t, Family::kQueryCount) == std::vector<std::string>{"1"});
  CHECK(values(t, Family::kQueryDuplicate) == std::vector<std::string>{"1"});
  CHECK(values(t, Family::kQueryIdPopularity) == std::vector<std::string>{"unknown"});
}

TEST_CASE("url features") {
  CorpusStats stats;
  const StatsLookup lookup(stats);
  auto t = extract_url_features(
      make_session(1, 7, std::nullopt, {QueryRecord{1, 0, 0, 9, {5, 6}}, ClickRecord{1, 3, 0, 6}}), lookup, kCfg);
  CHECK(values(t, Family::kClickedUrlFiltered) == std::vector<std::string>{"6"});
  CHECK(values(t, Family::kUrlId) == std::vector<std::string>{"5", "6"});
  CHECK(values(t, Family::kQueryUrlList) == std::vector<std::string>{"9:5:1", "9:6:2"});

  t = extract_url_features(make_session(1, 7, std::nullopt, {QueryRecord{1, 0, 0, 9, {5, 6}}}), lookup, kCfg);
  CHECK(values(t, Family::kClickedUrlFiltered).empty());

  // Top-K cap.
  QueryRecord long_list{1, 0, 0, 9, {}};
  for (UrlId u = 1; u <= 15; ++u) long_list.urls.push_back(u);
  t = extract_url_features(make_session(1, 7, std::nullopt, {long_list}), lookup, kCfg);
  CHECK(values(t, Family::kUrlId).size() == 10);

  // Popularity: a URL shown in 10^7 sessions falls in the top decade bucket.
  CorpusStats popular;
  popular.url_frequency[5] = 10'000'000;
  popular.url_frequency[6] = 250;
  t = extract_url_features(make_session(1, 7, std::nullopt, {QueryRecord{1, 0, 0, 9, {5, 6}}}),
                           StatsLookup(popular), kCfg);
  const auto top = std::to_string(kCfg.popularity_bucket_edges.size() - 1);
  CHECK(values(t, Family::kUrlPopularity) == std::vector<std::string>{"3", top});
}

TEST_CASE("normalized n-grams") {
  const auto grams4 = normalized_ngrams("MQCQCQ", 4, 8);
  std::map<std::string, std::size_t> m(grams4.begin(), grams4.end());
  CHECK(m == std::map<std::string, std::size_t>{{"CQCQ", 2}, {"MQCQ", 2}, {"QCQC", 2}});
  CHECK(normalized_ngrams("MQCQCQ", 5, 8).size() == 2);
  CHECK(normalized_ngrams("MQCQCQ", 7, 8).empty());

  const auto single = normalized_ngrams("QQQQ", 4, 8);
  REQUIRE(single.size() == 1);
  CHECK(single[0].first == "QQQQ");
  CHECK(single[0].second == 7);  // frequency 1.0 lands in the last bin

  const auto repeated = normalized_ngrams("QQQQQ", 4, 8);
  REQUIRE(repeated.size() == 1);
  CHECK(repeated[0].second == 7);
}

TEST_CASE("action sequence") {
  const auto s = make_session(1, 7, std::nullopt,
                              {QueryRecord{1, 0, 0, 1, {1}}, ClickRecord{1, 30, 0, 1}, QueryRecord{1, 250, 1, 2, {1}},
                               ClickRecord{1, 260, 1, 1}, QueryRecord{1, 900, 2, 3, {1}}});
  CHECK(action_string(s, 100) == "MQCQCQ");
  const auto t = extract_sequence_features(s, kCfg);
  CHECK(values(t, Family::kActionSequence) == std::vector<std::string>{"MQCQCQ"});
  CHECK(values(t, Family::kPattern4gram) == std::vector<std::string>{"CQCQ:2", "MQCQ:2", "QCQC:2"});
  CHECK(values(t, Family::kPattern6gram) == std::vector<std::string>{"MQCQCQ:7"});
  CHECK(values(t, Family::kPattern7gram).empty());

  const std::string long_seq = "M" + std::string(60, 'Q') + "C";
  const auto capped = cap_action_sequence(long_seq, 50);
  CHECK(capped.size() == 51);
  CHECK(capped.substr(0, 2) == "MQ");
  CHECK(capped[25] == '~');
  CHECK(capped.back() == 'C');
  CHECK(cap_action_sequence("MQC", 50) == "MQC");
}

TEST_CASE("timeline features") {
  auto t = extract_timeline_features(
      make_session(1, 7, std::nullopt,
                   {QueryRecord{1, 0, 0, 1, {1}}, ClickRecord{1, 50, 0, 1}, QueryRecord{1, 400, 1, 2, {1}}}),
      kCfg);
  const auto b50 = std::to_string(bucket_of(50, kCfg.interval_bucket_edges));
  const auto b350 = std::to_string(bucket_of(350, kCfg.interval_bucket_edges));
  CHECK(values(t, Family::kQueryClickInterval) == std::vector<std::string>{b50});
  CHECK(values(t, Family::kClickNextQueryInterval) == std::vector<std::string>{b350});
  CHECK(values(t, Family::kQueryIdTime) ==
        std::vector<std::string>{"0", std::to_string(bucket_of(400, kCfg.time_bucket_edges))});

  t = extract_timeline_features(make_session(1, 7, std::nullopt, {QueryRecord{1, 0, 0, 1, {1}}}), kCfg);
  CHECK(values(t, Family::kQueryClickInterval).empty());
  CHECK(values(t, Family::kClickNextQueryInterval).empty());
}

TEST_CASE("position features") {
  QueryRecord q{1, 0, 0, 1, {}};
  for (UrlId u = 1; u <= 10; ++u) q.urls.push_back(u);

  std::uint64_t skipped = 0;
  auto t = extract_position_features(
      make_session(1, 7, std::nullopt,
                   {q, ClickRecord{1, 1, 0, 1}, ClickRecord{1, 2, 0, 6}, ClickRecord{1, 3, 0, 9}, ClickRecord{1, 4, 0, 77}}),
      kCfg, &skipped);
  CHECK(values(t, Family::kClickPositionCount) == std::vector<std::string>{"2"});
  // MRR = (1 + 1/6 + 1/9) / 3 = 0.4259...
  CHECK(values(t, Family::kMrr) == std::vector<std::string>{"4"});
  CHECK(skipped == 1);

  t = extract_position_features(make_session(1, 7, std::nullopt, {q, ClickRecord{1, 1, 0, 1}}), kCfg);
  CHECK(values(t, Family::kClickPositionCount) == std::vector<std::string>{"0"});
  CHECK(values(t, Family::kMrr) == std::vector<std::string>{"9"});

  t = extract_position_features(make_session(1, 7, std::nullopt, {q}), kCfg);
  CHECK(values(t, Family::kClickPositionCount).empty());
  CHECK(values(t, Family::kMrr) == std::vector<std::string>{"no-click"});
}

TEST_CASE("encode") {
  const Tokens same{{Family::kQueryId, "5"}, {Family::kQueryId, "5"}};
  CHECK(encode(same).size() == 1);
  const Tokens namespaced{{Family::kQueryId, "5"}, {Family::kUrlId, "5"}};
  CHECK(encode(namespaced).size() == 2);
  CHECK(encode(namespaced, FamilySet{}.with(Family::kUrlId)).size() == 1);
  CHECK(feature_id(Family::kQueryId, "5") != feature_id(Family::kUrlId, "5"));
}

TEST_CASE("every family comes from exactly one extractor group") {
  CorpusStats stats;
  stats.add(fixture_session());
  const StatsLookup lookup(stats);
  const auto s = mask_switches(fixture_session());
  const std::vector<Tokens> groups{
      extract_user_features(s, lookup, kCfg),     extract_query_features(s, lookup, kCfg),
      extract_url_features(s, lookup, kCfg),      extract_sequence_features(s, kCfg),
      extract_timeline_features(s, kCfg),         extract_position_features(s, kCfg),
  };
  std::map<Family, int> owner;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (const auto& t : groups[g]) {
      const auto [it, inserted] = owner.emplace(t.family, static_cast<int>(g));
      CHECK(it->second == static_cast<int>(g));
    }
  CHECK(owner.size() == static_cast<std::size_t>(kFamilyCount));
}

TEST_CASE("single-instance families emit exactly one token") {
  CorpusStats stats;
  stats.add(fixture_session());
  FeatureExtractor ex(stats, kCfg, FamilySet::all());
  const auto t = ex.tokens(mask_switches(fixture_session()));
  for (Family f : {Family::kUserId, Family::kQueryCount, Family::kQueryDuplicate, Family::kActionSequence, Family::kMrr})
    CHECK(values(t, f).size() == 1);
  // one ratio instance per switch type, each with a single value
  const auto ratios = values(t, Family::kUserSwitchRatio);
  CHECK(ratios.size() == 4);
  std::set<char> types;
  for (const auto& v : ratios) types.insert(v[0]);
  CHECK(types.size() == 4);
}

TEST_CASE("extraction is deterministic and switch-pure") {
  CorpusStats stats;
  stats.add(fixture_session());
  FeatureExtractor ex(stats, kCfg, FamilySet::all());

  const auto a = ex.extract(fixture_session());
  CHECK(a == ex.extract(fixture_session()));

  auto stripped = fixture_session();
  stripped.switch_type.reset();
  std::erase_if(stripped.events, [](const Event& e) { return std::holds_alternative<SwitchRecord>(e); });
  CHECK(ex.extract(stripped) == a);

  auto relabeled = fixture_session();
  relabeled.switch_type = SwitchType::kNone;
  CHECK(ex.extract(relabeled) == a);

  // Training extraction also ignores S records.
  CHECK(ex.extract_for_training(fixture_session(), false) == a);
}

TEST_CASE("golden feature ids for the fixture session") {
  CorpusStats stats;
  stats.add(fixture_session());
  stats.add(make_session(2, 7, SwitchType::kNone, {QueryRecord{2, 0, 0, 100, {5, 6}}}));
  FeatureExtractor ex(stats, kCfg, FamilySet::all());
  const auto x = ex.extract(fixture_session());

  std::vector<std::uint64_t> ids;
  for (auto id : x.ids()) ids.push_back(id.value);
  // Frozen from the first run; any change means feature ids moved.
  const std::vector<std::uint64_t> golden = {
#include "golden_fixture_ids.inc"
  };
  CHECK(ids == golden);
}
