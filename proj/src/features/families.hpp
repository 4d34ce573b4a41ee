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

#include "inference/model.hpp"

namespace swd {

// The twenty feature families. Enumerator values are the family numbers used
// on the command line (e.g. `--features 1,3,7,16`).
enum class Family : std::uint8_t {
  kUserId = 1,
  kUserSwitchRatio,
  kQueryId,
  kQueryCount,
  kQueryDuplicate,
  kQueryIdPopularity,
  kUrlId,
  kQueryUrlList,
  kUrlPopularity,
  kClickedUrlFiltered,
  kActionSequence,
  kPattern4gram,
  kPattern5gram,
  kPattern6gram,
  kPattern7gram,
  kQueryIdTime,
  kQueryClickInterval,
  kClickNextQueryInterval,
  kClickPositionCount,
  kMrr,
};

inline constexpr int kFamilyCount = 20;

constexpr int family_number(Family f) noexcept { return static_cast<int>(f); }
std::optional<Family> family_from_number(int n) noexcept;
std::string_view family_name(Family f) noexcept;
std::optional<Family> family_from_name(std::string_view name) noexcept;
std::array<Family, kFamilyCount> all_families() noexcept;

/// One active (family, value) pair before hashing.
struct FeatureToken {
  Family family;
  std::string value;

  friend bool operator==(const FeatureToken&, const FeatureToken&) = default;
};

/// namespaced_hash(family_name(f), value).
FeatureId feature_id(Family family, std::string_view value) noexcept;

/// Subset of families enabled for a model.
class FamilySet {
 public:
  constexpr FamilySet() = default;
  static FamilySet all() noexcept;
  static constexpr FamilySet from_mask(std::uint32_t mask) noexcept { return FamilySet(mask); }

  /// Comma-separated family numbers and/or names ("1,3,QueryID_Time"), or
  /// "all". Throws a config error on an unknown entry.
  static FamilySet parse(std::string_view spec);

  bool contains(Family f) const noexcept { return (mask_ >> family_number(f)) & 1u; }
  FamilySet with(Family f) const noexcept { return FamilySet(mask_ | (1u << family_number(f))); }
  FamilySet without(Family f) const noexcept { return FamilySet(mask_ & ~(1u << family_number(f))); }
  bool empty() const noexcept { return mask_ == 0; }

  /// Bit n set for family number n (bit 0 unused).
  std::uint32_t mask() const noexcept { return mask_; }
  std::string to_string() const;

  friend bool operator==(FamilySet, FamilySet) = default;

 private:
  constexpr explicit FamilySet(std::uint32_t mask) : mask_(mask) {}
  std::uint32_t mask_ = 0;
};

}  // namespace swd
