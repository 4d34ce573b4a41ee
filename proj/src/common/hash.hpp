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
#include <string_view>

namespace swd {

// 64-bit FNV-1a followed by the splitmix64 finalizer. Byte-oriented, so the
// result does not depend on host endianness or word size.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (const char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hash of `value` inside the namespace `tag`: mix64(fnv1a64(tag "\x1f" value)).
constexpr std::uint64_t namespaced_hash(std::string_view tag,
                                        std::string_view value) {
  std::uint64_t h = fnv1a64(tag);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  h = fnv1a64(value, h);
  return mix64(h);
}

}  // namespace swd
