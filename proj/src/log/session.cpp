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

#include "log/session.hpp"

#include <zlib.h>

#include <algorithm>
#include <unordered_set>

#include "common/binary_io.hpp"
#include "common/error.hpp"

namespace swd {

bool is_positive(SwitchType type, LabelMode mode) noexcept {
  const auto target = mode.target();
  if (!target) return type != SwitchType::kNone;
  switch (*target) {
    case SwitchType::kToolbar: return type == SwitchType::kToolbar || type == SwitchType::kBoth;
    case SwitchType::kSerp: return type == SwitchType::kSerp || type == SwitchType::kBoth;
    case SwitchType::kBoth: return type == SwitchType::kBoth;
    case SwitchType::kNone: return type == SwitchType::kNone;
  }
  return false;
}

Label session_label(const Session& s, LabelMode mode) {
  if (!s.switch_type)
    throw invalid_argument("session " + std::to_string(s.session_id) + " has no switch type");
  return is_positive(*s.switch_type, mode) ? Label::kSwitch : Label::kNoSwitch;
}

Session mask_switches(const Session& s) {
  Session out{s.session_id, s.day, s.user_id, std::nullopt, {}};
  out.events.reserve(s.events.size());
  for (const auto& e : s.events)
    if (!std::holds_alternative<SwitchRecord>(e)) out.events.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Assembly

std::optional<Session> SessionAssembler::push(LogRecord record) {
  if (auto* m = std::get_if<MetadataRecord>(&record)) {
    std::optional<Session> done;
    if (current_) done = seal();
    current_ = Session{m->session_id, m->day, m->user_id, m->switch_type, {}};
    return done;
  }
  const auto sid = session_id_of(record);
  if (!current_) throw AssemblyError(sid, "event without a preceding metadata record");
  if (current_->session_id != sid)
    throw AssemblyError(sid, "event outside its session's contiguous block (open session " +
                                 std::to_string(current_->session_id) + ")");
  std::visit(
      [&](auto&& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (!std::is_same_v<T, MetadataRecord>) current_->events.emplace_back(std::move(r));
      },
      std::move(record));
  return std::nullopt;
}

std::optional<Session> SessionAssembler::finish() {
  if (!current_) return std::nullopt;
  return seal();
}

Session SessionAssembler::seal() {
  Session s = std::move(*current_);
  current_.reset();
  std::stable_sort(s.events.begin(), s.events.end(),
                   [](const Event& a, const Event& b) { return time_of(a) < time_of(b); });
  std::unordered_set<SerpId> serps;
  for (const auto& e : s.events) {
    if (const auto* q = std::get_if<QueryRecord>(&e)) serps.insert(q->serp_id);
    else if (const auto* c = std::get_if<ClickRecord>(&e); c && !serps.contains(c->serp_id))
      ++unmatched_clicks_;
  }
  ++emitted_;
  return s;
}

std::vector<Session> assemble_sessions(const std::vector<LogRecord>& records) {
  SessionAssembler assembler;
  std::vector<Session> out;
  for (const auto& r : records)
    if (auto s = assembler.push(r)) out.push_back(std::move(*s));
  if (auto s = assembler.finish()) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// File reading

struct LineSource::Impl {
  gzFile file = nullptr;
  std::string path;
};

LineSource::LineSource(const std::string& path) : impl_(std::make_unique<Impl>()) {
  impl_->path = path;
  impl_->file = gzopen(path.c_str(), "rb");
  if (!impl_->file) throw io_error("cannot open log '" + path + "'");
  gzbuffer(impl_->file, 1 << 17);
}

LineSource::~LineSource() {
  if (impl_ && impl_->file) gzclose(impl_->file);
}

bool LineSource::next(std::string& line) {
  line.clear();
  char buf[8192];
  while (true) {
    if (!gzgets(impl_->file, buf, sizeof buf)) {
      int err = 0;
      const char* msg = gzerror(impl_->file, &err);
      if (err != Z_OK && err != Z_BUF_ERROR)
        throw io_error("reading '" + impl_->path + "': " + msg);
      if (line.empty()) return false;
      ++line_number_;
      return true;
    }
    line.append(buf);
    if (!line.empty() && line.back() == '\n') {
      line.pop_back();
      ++line_number_;
      return true;
    }
  }
}

SessionReader::SessionReader(const std::string& path, ReadOptions options)
    : lines_(path), options_(options) {}

std::optional<Session> SessionReader::next() {
  if (done_) return std::nullopt;
  std::string line;
  while (lines_.next(line)) {
    LogRecord record;
    try {
      record = parse_record(line, lines_.line_number());
    } catch (const ParseError&) {
      if (!options_.permissive) throw;
      ++skipped_;
      continue;
    }
    if (auto s = assembler_.push(std::move(record))) return s;
  }
  done_ = true;
  return assembler_.finish();
}

std::vector<Session> read_sessions(const std::string& path, ReadOptions options) {
  SessionReader reader(path, options);
  std::vector<Session> out;
  while (auto s = reader.next()) out.push_back(std::move(*s));
  return out;
}

std::string format_session(const Session& s) {
  std::string out = format_record(MetadataRecord{s.session_id, s.day, s.user_id, s.switch_type});
  out += '\n';
  for (const auto& e : s.events) {
    out += std::visit([](const auto& r) { return format_record(r); }, e);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Session cache

namespace {

constexpr std::string_view kCacheMagic = "SWDC";
constexpr std::uint32_t kCacheVersion = 1;

std::string encode_session(const Session& s) {
  ByteWriter w;
  w.put_u64(s.session_id);
  w.put_u32(static_cast<std::uint32_t>(s.day));
  w.put_u64(s.user_id);
  w.put_u8(s.switch_type ? static_cast<std::uint8_t>(to_char(*s.switch_type)) : 0);
  w.put_u32(static_cast<std::uint32_t>(s.events.size()));
  for (const auto& e : s.events) {
    w.put_u8(static_cast<std::uint8_t>(type_letter(e)));
    w.put_i64(time_of(e));
    if (const auto* q = std::get_if<QueryRecord>(&e)) {
      w.put_u64(q->serp_id);
      w.put_u64(q->query_id);
      w.put_u32(static_cast<std::uint32_t>(q->urls.size()));
      for (auto u : q->urls) w.put_u64(u);
    } else if (const auto* c = std::get_if<ClickRecord>(&e)) {
      w.put_u64(c->serp_id);
      w.put_u64(c->url_id);
    }
  }
  return std::move(w).bytes();
}

Session decode_session(std::string_view bytes) {
  ByteReader r(bytes);
  Session s;
  s.session_id = r.get_u64();
  s.day = static_cast<int>(r.get_u32());
  s.user_id = r.get_u64();
  if (const auto st = r.get_u8(); st != 0) {
    s.switch_type = switch_type_from_char(static_cast<char>(st));
    if (!s.switch_type) throw format_error("session cache: bad switch type");
  }
  const auto n = r.get_u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    const char type = static_cast<char>(r.get_u8());
    const auto t = r.get_i64();
    switch (type) {
      case 'Q': {
        QueryRecord q{s.session_id, t, r.get_u64(), r.get_u64(), {}};
        const auto urls = r.get_u32();
        if (urls > r.remaining() / 8) throw format_error("truncated byte stream");
        q.urls.reserve(urls);
        for (std::uint32_t k = 0; k < urls; ++k) q.urls.push_back(r.get_u64());
        s.events.emplace_back(std::move(q));
        break;
      }
      case 'C': {
        const auto serp = r.get_u64();
        s.events.emplace_back(ClickRecord{s.session_id, t, serp, r.get_u64()});
        break;
      }
      case 'S': s.events.emplace_back(SwitchRecord{s.session_id, t}); break;
      default: throw format_error("session cache: bad event type");
    }
  }
  r.expect_end();
  return s;
}

}  // namespace

std::string encode_session_cache(const std::vector<Session>& sessions) {
  ByteWriter w;
  w.put_bytes(kCacheMagic);
  w.put_u32(kCacheVersion);
  for (const auto& s : sessions) w.put_string(encode_session(s));
  return std::move(w).bytes();
}

std::vector<Session> decode_session_cache(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.get_bytes(kCacheMagic.size()) != kCacheMagic) throw format_error("not a session cache");
  if (r.get_u32() != kCacheVersion) throw format_error("unsupported session cache version");
  std::vector<Session> out;
  while (!r.at_end()) {
    const auto n = r.get_u32();
    out.push_back(decode_session(r.get_bytes(n)));
  }
  return out;
}

}  // namespace swd
