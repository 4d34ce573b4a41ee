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

#include "features/families.hpp"

#include "common/error.hpp"
#include "common/hash.hpp"
#include "common/text.hpp"

namespace swd {
namespace {

constexpr std::string_view kNames[kFamilyCount + 1] = {
    "",
    "UserID",
    "User_switch_ratio",
    "QueryID",
    "Query_Count",
    "Query_Duplicate",
    "QueryID_Popularity",
    "URLID",
    "Query_URLid_List",
    "URL_Popularity",
    "ClickedURL_Filtered",
    "Action_Sequence",
    "Pattern_4gram_Normed",
    "Pattern_5gram_Normed",
    "Pattern_6gram_Normed",
    "Pattern_7gram_Normed",
    "QueryID_Time",
    "Query_Click_Interval",
    "Click_NextQuery_Interval",
    "Click_Position_Count",
    "MRR",
};

}  // namespace

std::optional<Family> family_from_number(int n) noexcept {
  if (n < 1 || n > kFamilyCount) return std::nullopt;
  return static_cast<Family>(n);
}

std::string_view family_name(Family f) noexcept { return kNames[family_number(f)]; }

std::optional<Family> family_from_name(std::string_view name) noexcept {
  for (int n = 1; n <= kFamilyCount; ++n)
    if (kNames[n] == name) return static_cast<Family>(n);
  return std::nullopt;
}

std::array<Family, kFamilyCount> all_families() noexcept {
  std::array<Family, kFamilyCount> out{};
  for (int n = 1; n <= kFamilyCount; ++n) out[n - 1] = static_cast<Family>(n);
  return out;
}

FeatureId feature_id(Family family, std::string_view value) noexcept {
  return FeatureId{namespaced_hash(family_name(family), value)};
}

FamilySet FamilySet::all() noexcept {
  FamilySet s;
  for (auto f : all_families()) s = s.with(f);
  return s;
}

FamilySet FamilySet::parse(std::string_view spec) {
  if (spec == "all") return all();
  FamilySet s;
  for (auto item : split(spec, ',')) {
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    std::optional<Family> f;
    if (const auto n = parse_u64(item)) {
      if (*n <= static_cast<std::uint64_t>(kFamilyCount)) f = family_from_number(static_cast<int>(*n));
    } else {
      f = family_from_name(item);
    }
    if (!f) throw config_error("unknown feature family '" + std::string(item) + "'");
    s = s.with(*f);
  }
  return s;
}

std::string FamilySet::to_string() const {
  std::string out;
  for (auto f : all_families()) {
    if (!contains(f)) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(family_number(f));
  }
  return out;
}

}  // namespace swd
