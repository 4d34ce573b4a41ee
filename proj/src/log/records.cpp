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

#include "log/records.hpp"

#include "common/error.hpp"
#include "common/text.hpp"

namespace swd {

std::optional<SwitchType> switch_type_from_char(char c) noexcept {
  switch (c) {
    case 'N': return SwitchType::kNone;
    case 'P': return SwitchType::kSerp;
    case 'B': return SwitchType::kToolbar;
    case 'H': return SwitchType::kBoth;
    default: return std::nullopt;
  }
}

std::size_t index_of(SwitchType t) noexcept {
  switch (t) {
    case SwitchType::kNone: return 0;
    case SwitchType::kSerp: return 1;
    case SwitchType::kToolbar: return 2;
    case SwitchType::kBoth: return 3;
  }
  return 0;
}

namespace {

class FieldParser {
 public:
  FieldParser(std::string_view line, std::uint64_t line_number)
      : fields_(split(line, '\t')), line_(line_number) {}

  std::size_t count() const noexcept { return fields_.size(); }
  std::string_view raw(std::size_t i) const { return fields_[i]; }

  void expect_count(std::size_t n, std::string_view type) const {
    if (fields_.size() != n)
      fail(std::string(type) + " record expects " + std::to_string(n) + " fields, got " +
           std::to_string(fields_.size()));
  }

  std::uint64_t u64(std::size_t i, std::string_view name) const {
    const auto v = parse_u64(fields_[i]);
    if (!v) fail("field " + std::string(name) + " is not a non-negative integer: '" +
                 std::string(fields_[i]) + "'");
    return *v;
  }

  std::int64_t time(std::size_t i) const {
    const auto v = parse_i64(fields_[i]);
    if (!v || *v < 0) fail("field TimePassed is not a non-negative integer: '" +
                           std::string(fields_[i]) + "'");
    return *v;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

 private:
  std::vector<std::string_view> fields_;
  std::uint64_t line_;
};

}  // namespace

LogRecord parse_record(std::string_view line, std::uint64_t line_number) {
  FieldParser f(line, line_number);
  if (f.count() < 3) f.fail("too few fields");
  const auto type = f.raw(2);
  if (type.size() != 1) f.fail("unknown record type '" + std::string(type) + "'");

  const auto session_id = f.u64(0, "SessionID");
  switch (type[0]) {
    case 'M': {
      if (f.count() != 4 && f.count() != 5)
        f.fail("M record expects 5 fields (4 when unlabeled), got " + std::to_string(f.count()));
      MetadataRecord m;
      m.session_id = session_id;
      const auto day = f.u64(1, "Day");
      if (day < 1 || day > 30) f.fail("Day out of range 1-30: " + std::to_string(day));
      m.day = static_cast<int>(day);
      m.user_id = f.u64(3, "UserID");
      if (f.count() == 5) {
        const auto st = f.raw(4);
        const auto parsed = st.size() == 1 ? switch_type_from_char(st[0]) : std::nullopt;
        if (!parsed) f.fail("unknown switch type '" + std::string(st) + "'");
        m.switch_type = parsed;
      }
      return m;
    }
    case 'Q': {
      f.expect_count(6, "Q");
      QueryRecord q;
      q.session_id = session_id;
      q.time_passed = f.time(1);
      q.serp_id = f.u64(3, "SERPID");
      q.query_id = f.u64(4, "QueryID");
      for (const auto url : split(f.raw(5), ',')) {
        const auto id = parse_u64(url);
        if (!id) f.fail("ListOfURLs entry is not a non-negative integer: '" + std::string(url) + "'");
        q.urls.push_back(*id);
      }
      return q;
    }
    case 'C': {
      f.expect_count(5, "C");
      return ClickRecord{session_id, f.time(1), f.u64(3, "SERPID"), f.u64(4, "URLID")};
    }
    case 'S': {
      f.expect_count(3, "S");
      return SwitchRecord{session_id, f.time(1)};
    }
    default:
      f.fail("unknown record type '" + std::string(type) + "'");
  }
}

namespace {

struct Formatter {
  std::string operator()(const MetadataRecord& m) const {
    std::string out = std::to_string(m.session_id) + "\t" + std::to_string(m.day) + "\tM\t" +
                      std::to_string(m.user_id);
    if (m.switch_type) {
      out += '\t';
      out += to_char(*m.switch_type);
    }
    return out;
  }
  std::string operator()(const QueryRecord& q) const {
    std::string out = std::to_string(q.session_id) + "\t" + std::to_string(q.time_passed) +
                      "\tQ\t" + std::to_string(q.serp_id) + "\t" + std::to_string(q.query_id) + "\t";
    for (std::size_t i = 0; i < q.urls.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(q.urls[i]);
    }
    return out;
  }
  std::string operator()(const ClickRecord& c) const {
    return std::to_string(c.session_id) + "\t" + std::to_string(c.time_passed) + "\tC\t" +
           std::to_string(c.serp_id) + "\t" + std::to_string(c.url_id);
  }
  std::string operator()(const SwitchRecord& s) const {
    return std::to_string(s.session_id) + "\t" + std::to_string(s.time_passed) + "\tS";
  }
};

}  // namespace

std::string format_record(const LogRecord& record) { return std::visit(Formatter{}, record); }

SessionId session_id_of(const LogRecord& record) noexcept {
  return std::visit([](const auto& r) { return r.session_id; }, record);
}

std::int64_t time_of(const Event& event) noexcept {
  return std::visit([](const auto& r) { return r.time_passed; }, event);
}

char type_letter(const Event& event) noexcept {
  switch (event.index()) {
    case 0: return 'Q';
    case 1: return 'C';
    default: return 'S';
  }
}

}  // namespace swd
