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
#include <stdexcept>
#include <string>

namespace swd {

// Error categories. The numeric values are the C API status codes and the
// CLI exit codes, so they must stay stable.
enum class ErrorKind : int {
  kInvalidArgument = 2,
  kFormat = 3,
  kConfig = 4,
  kNumeric = 5,
  kIo = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed log line. Carries the 1-based line number (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::uint64_t line, const std::string& what)
      : Error(ErrorKind::kFormat,
              line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::uint64_t line() const noexcept { return line_; }

 private:
  std::uint64_t line_;
};

/// Session stream violates the M-first contiguity rule.
class AssemblyError : public Error {
 public:
  AssemblyError(std::uint64_t session_id, const std::string& what)
      : Error(ErrorKind::kFormat,
              "session " + std::to_string(session_id) + ": " + what),
        session_id_(session_id) {}

  std::uint64_t session_id() const noexcept { return session_id_; }

 private:
  std::uint64_t session_id_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorKind::kInvalidArgument, what);
}
inline Error format_error(const std::string& what) {
  return Error(ErrorKind::kFormat, what);
}
inline Error config_error(const std::string& what) {
  return Error(ErrorKind::kConfig, what);
}
inline Error numeric_error(const std::string& what) {
  return Error(ErrorKind::kNumeric, what);
}
inline Error io_error(const std::string& what) {
  return Error(ErrorKind::kIo, what);
}

}  // namespace swd
