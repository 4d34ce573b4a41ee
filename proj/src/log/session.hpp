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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "inference/model.hpp"
#include "log/records.hpp"

namespace swd {

/// One search session: metadata plus its events in time order (ties keep
/// file order).
struct Session {
  SessionId session_id = 0;
  int day = 1;
  UserId user_id = 0;
  std::optional<SwitchType> switch_type;
  std::vector<Event> events;

  friend bool operator==(const Session&, const Session&) = default;
};

/// Binary switch / no-switch, or one-vs-rest for a single switch type where
/// H counts as both B and P.
class LabelMode {
 public:
  static constexpr LabelMode binary() noexcept { return LabelMode(std::nullopt); }
  static constexpr LabelMode one_vs_rest(SwitchType target) noexcept { return LabelMode(target); }

  std::optional<SwitchType> target() const noexcept { return target_; }

 private:
  constexpr explicit LabelMode(std::optional<SwitchType> t) : target_(t) {}
  std::optional<SwitchType> target_;
};

bool is_positive(SwitchType type, LabelMode mode) noexcept;

/// Throws an invalid-argument error when the session has no switch type.
Label session_label(const Session& s, LabelMode mode);

/// Copy with every Switch event removed and the switch type cleared: what a
/// test-period session looks like.
Session mask_switches(const Session& s);

/// Streaming M-first assembler. Feed records in file order; a completed
/// session is returned each time the next metadata record arrives.
class SessionAssembler {
 public:
  /// Throws AssemblyError when an event arrives without its session's
  /// metadata record immediately preceding the session's block.
  std::optional<Session> push(LogRecord record);
  std::optional<Session> finish();

  std::uint64_t sessions_emitted() const noexcept { return emitted_; }
  /// Clicks whose SERPID matches no earlier query of the session.
  std::uint64_t unmatched_clicks() const noexcept { return unmatched_clicks_; }

 private:
  Session seal();

  std::optional<Session> current_;
  std::uint64_t emitted_ = 0;
  std::uint64_t unmatched_clicks_ = 0;
};

std::vector<Session> assemble_sessions(const std::vector<LogRecord>& records);

struct ReadOptions {
  /// Skip and count malformed lines instead of failing on the first one.
  bool permissive = false;
};

/// Reads plain or gzip-compressed log files line by line.
class LineSource {
 public:
  explicit LineSource(const std::string& path);
  ~LineSource();
  LineSource(const LineSource&) = delete;
  LineSource& operator=(const LineSource&) = delete;

  /// Next line without its terminating LF; false at end of file.
  bool next(std::string& line);
  std::uint64_t line_number() const noexcept { return line_number_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::uint64_t line_number_ = 0;
};

/// Log file -> sessions, streaming.
class SessionReader {
 public:
  SessionReader(const std::string& path, ReadOptions options = {});

  std::optional<Session> next();

  std::uint64_t skipped_lines() const noexcept { return skipped_; }
  std::uint64_t sessions_read() const noexcept { return assembler_.sessions_emitted(); }
  std::uint64_t unmatched_clicks() const noexcept { return assembler_.unmatched_clicks(); }

 private:
  LineSource lines_;
  ReadOptions options_;
  SessionAssembler assembler_;
  std::uint64_t skipped_ = 0;
  bool done_ = false;
};

std::vector<Session> read_sessions(const std::string& path, ReadOptions options = {});

/// Writes the session back as log lines (metadata first, then events).
std::string format_session(const Session& s);

// Session cache: "SWDC" u32 version(=1), then per session a u32 byte length
// followed by the encoded session. Little-endian throughout.
std::string encode_session_cache(const std::vector<Session>& sessions);
std::vector<Session> decode_session_cache(std::string_view bytes);

}  // namespace swd
