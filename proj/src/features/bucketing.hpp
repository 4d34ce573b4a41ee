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
#include <vector>

namespace swd {

/// Discretization parameters for every continuous quantity the extractors
/// see. Edge lists are strictly ascending and start at 0; bucket k covers
/// [edges[k], edges[k+1]) and the last bucket is open-ended.
struct BucketingConfig {
  std::vector<double> time_bucket_edges;
  std::vector<double> interval_bucket_edges;
  std::vector<double> popularity_bucket_edges;
  std::vector<double> ratio_bucket_edges;

  std::size_t url_top_k = 10;
  std::int64_t action_window = 100;
  std::size_t action_sequence_cap = 50;
  std::size_t pattern_bins = 8;
  std::uint64_t query_count_cap = 20;
  std::uint64_t duplicate_cap = 10;
  std::uint64_t position_count_cap = 6;

  /// Powers of two up to 2^14 for times and intervals, decades for
  /// popularity, tenths for ratios.
  static BucketingConfig defaults();

  /// Throws a config error when an invariant does not hold.
  void validate() const;

  /// JSON document with the field names above. Missing keys take defaults.
  static BucketingConfig from_json(const std::string& text);
  std::string to_json() const;

  friend bool operator==(const BucketingConfig&, const BucketingConfig&) = default;
};

/// Bucket index of x, or -1 when x lies below the first edge.
int bucket_of(double x, const std::vector<double>& edges) noexcept;

}  // namespace swd
