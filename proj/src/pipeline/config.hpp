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
#include <string>
#include <string_view>
#include <vector>

#include "features/families.hpp"
#include "synth/generator.hpp"
#include "task/task.hpp"

namespace swd {

/// Everything the file-level commands need besides paths. Loaded from one
/// JSON file and then overridden key by key (see set()).
struct PipelineConfig {
  TaskSpec task;
  /// Families the ablation baseline starts from.
  FamilySet baseline = FamilySet::parse("1,3,7,16");
  std::uint64_t modulus = 10;
  std::uint64_t residue = 1;
  bool permissive = false;
  GeneratorParams generator;

  /// JSON layout:
  ///   {"task": "binary", "families": "all", "baseline": "1,3,7,16",
  ///    "epochs": 1, "exclude_self": true, "permissive": false,
  ///    "model": {"beta": 5, "prior_mean": 0, "prior_variance": 1},
  ///    "bucketing": {...}, "split": {"modulus": 10, "residue": 1},
  ///    "generator": {...}}
  /// Every key is optional. Throws config_error on unknown keys or bad values.
  static PipelineConfig from_json(const std::string& text);
  static PipelineConfig load(const std::string& path);
  std::string to_json() const;

  /// Flat override, e.g. set("beta", "2.5") or set("task", "4cat"). Keys:
  /// task families baseline epochs exclude_self permissive beta prior_mean
  /// prior_variance bucketing(JSON text) modulus residue seed n_users
  /// n_sessions n_queries switch_rate toolbar_fraction.
  void set(std::string_view key, std::string_view value);

  /// Throws config_error when any part is invalid.
  void validate() const;
};

}  // namespace swd
