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

#include <string>
#include <string_view>

#include "inference/model.hpp"

namespace swd {

// Model file layout, all integers and IEEE-754 doubles little-endian:
//
//   "SWDM"  u32 version(=1)
//   f64 beta  f64 prior_mean  f64 prior_variance
//   u64 observations_seen  u64 variance_clamps  u64 entry_count
//   entry_count x { u64 feature_id  f64 mean  f64 variance }   ascending ids
//
// Doubles are stored as raw bit patterns, so round-trips are bit-exact.
inline constexpr std::string_view kModelMagic = "SWDM";
inline constexpr std::uint32_t kModelVersion = 1;

std::string serialize_model(const ModelState& state);

/// Throws a format error on bad magic, unknown version, truncation, trailing
/// bytes, unsorted ids or invalid beliefs.
ModelState deserialize_model(std::string_view bytes);

}  // namespace swd
