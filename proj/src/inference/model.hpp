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

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string_view>
#include <utility>
#include <unordered_map>
#include <vector>

namespace swd {

/// Opaque 64-bit identifier of one active coordinate of the 1-in-N encoding.
struct FeatureId {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(FeatureId, FeatureId) = default;
};

}  // namespace swd

template <>
struct std::hash<swd::FeatureId> {
  std::size_t operator()(swd::FeatureId id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

namespace swd {

/// Posterior belief over one weight.
struct GaussianBelief {
  double mean = 0.0;
  double variance = 1.0;

  friend bool operator==(const GaussianBelief&, const GaussianBelief&) = default;
};

/// Sparse binary feature vector: the set of coordinates equal to 1. Stored
/// sorted and duplicate-free so that equal sets have equal representations.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<FeatureId> ids);
  FeatureVector(std::initializer_list<std::uint64_t> ids);

  std::span<const FeatureId> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(FeatureId id) const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<FeatureId> ids_;
};

enum class Label : int { kNoSwitch = -1, kSwitch = 1 };

constexpr double sign(Label y) noexcept { return y == Label::kSwitch ? 1.0 : -1.0; }

struct ModelConfig {
  double beta = 5.0;
  double prior_mean = 0.0;
  double prior_variance = 1.0;

  /// Throws a config error unless beta > 0 and prior_variance > 0 (both finite).
  void validate() const;

  GaussianBelief prior() const noexcept { return {prior_mean, prior_variance}; }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Lower bound applied to every updated variance.
inline constexpr double kVarianceFloor = 1e-12;

class ModelState {
 public:
  explicit ModelState(ModelConfig config = {});

  const ModelConfig& config() const noexcept { return config_; }

  /// Belief for `id`; the prior when the id has never been updated.
  GaussianBelief belief(FeatureId id) const;

  /// Mutable slot, created at the prior on first access.
  GaussianBelief& belief_slot(FeatureId id);

  std::size_t size() const noexcept { return weights_.size(); }
  std::uint64_t observations_seen() const noexcept { return observations_; }
  std::uint64_t variance_clamps() const noexcept { return clamps_; }

  /// Entries sorted by id (deterministic iteration for serialization).
  std::vector<std::pair<FeatureId, GaussianBelief>> sorted_entries() const;

  /// Rebuilds a state from serialized parts. Throws a format error on
  /// non-positive variances or duplicate ids.
  static ModelState restore(ModelConfig config,
                            std::span<const std::pair<FeatureId, GaussianBelief>> entries,
                            std::uint64_t observations, std::uint64_t clamps);

  friend bool operator==(const ModelState& a, const ModelState& b) {
    return a.config_ == b.config_ && a.observations_ == b.observations_ &&
           a.clamps_ == b.clamps_ && a.weights_ == b.weights_;
  }

 private:
  friend void update(ModelState&, const FeatureVector&, Label);

  ModelConfig config_;
  std::unordered_map<FeatureId, GaussianBelief> weights_;
  std::uint64_t observations_ = 0;
  std::uint64_t clamps_ = 0;
};

/// Mean and variance of the noisy score t = w.x + noise, noise ~ N(0, beta^2).
struct TotalMoments {
  double total_mean = 0.0;
  double total_variance = 0.0;
};

TotalMoments total_moments(const ModelState& state, const FeatureVector& x);

/// Predictive switch probability Phi(U / Sigma).
double predict(const ModelState& state, const FeatureVector& x);

/// One online assumed-density-filtering step for observation (x, y). Throws
/// an invalid-argument error when x is empty.
void update(ModelState& state, const FeatureVector& x, Label y);

}  // namespace swd
