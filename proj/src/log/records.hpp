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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace swd {

enum class SwitchType : char {
  kNone = 'N',
  kSerp = 'P',
  kToolbar = 'B',
  kBoth = 'H',
};

inline constexpr SwitchType kAllSwitchTypes[] = {SwitchType::kNone, SwitchType::kSerp,
                                                 SwitchType::kToolbar, SwitchType::kBoth};

constexpr char to_char(SwitchType t) noexcept { return static_cast<char>(t); }
std::optional<SwitchType> switch_type_from_char(char c) noexcept;
/// Dense index 0..3 in kAllSwitchTypes order.
std::size_t index_of(SwitchType t) noexcept;

using SessionId = std::uint64_t;
using UserId = std::uint64_t;
using QueryId = std::uint64_t;
using UrlId = std::uint64_t;
using SerpId = std::uint64_t;

// Record layouts mirror the TSV columns. A metadata record without the
// SwitchType column is an unlabeled (test-period) session.
struct MetadataRecord {
  SessionId session_id = 0;
  int day = 1;
  UserId user_id = 0;
  std::optional<SwitchType> switch_type;

  friend bool operator==(const MetadataRecord&, const MetadataRecord&) = default;
};

struct QueryRecord {
  SessionId session_id = 0;
  std::int64_t time_passed = 0;
  SerpId serp_id = 0;
  QueryId query_id = 0;
  std::vector<UrlId> urls;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct ClickRecord {
  SessionId session_id = 0;
  std::int64_t time_passed = 0;
  SerpId serp_id = 0;
  UrlId url_id = 0;

  friend bool operator==(const ClickRecord&, const ClickRecord&) = default;
};

struct SwitchRecord {
  SessionId session_id = 0;
  std::int64_t time_passed = 0;

  friend bool operator==(const SwitchRecord&, const SwitchRecord&) = default;
};

using Event = std::variant<QueryRecord, ClickRecord, SwitchRecord>;
using LogRecord = std::variant<MetadataRecord, QueryRecord, ClickRecord, SwitchRecord>;

/// Parses one TSV line. Throws ParseError (tagged with `line_number`) on a
/// wrong field count, a non-integer field, an out-of-range day, an empty URL
/// list, or an unknown record or switch type.
LogRecord parse_record(std::string_view line, std::uint64_t line_number = 0);

/// Inverse of parse_record for canonical input (no trailing newline).
std::string format_record(const LogRecord& record);

SessionId session_id_of(const LogRecord& record) noexcept;
std::int64_t time_of(const Event& event) noexcept;
/// 'Q', 'C' or 'S'.
char type_letter(const Event& event) noexcept;

}  // namespace swd
