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

#include "inference/model.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "inference/probit.hpp"

namespace swd {

FeatureVector::FeatureVector(std::vector<FeatureId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

FeatureVector::FeatureVector(std::initializer_list<std::uint64_t> ids) {
  std::vector<FeatureId> v;
  v.reserve(ids.size());
  for (auto id : ids) v.push_back(FeatureId{id});
  *this = FeatureVector(std::move(v));
}

bool FeatureVector::contains(FeatureId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

void ModelConfig::validate() const {
  if (!(std::isfinite(beta) && beta > 0.0))
    throw config_error("beta must be finite and > 0");
  if (!(std::isfinite(prior_variance) && prior_variance > 0.0))
    throw config_error("prior variance must be finite and > 0");
  if (!std::isfinite(prior_mean)) throw config_error("prior mean must be finite");
}

ModelState::ModelState(ModelConfig config) : config_(config) { config_.validate(); }

GaussianBelief ModelState::belief(FeatureId id) const {
  const auto it = weights_.find(id);
  return it == weights_.end() ? config_.prior() : it->second;
}

GaussianBelief& ModelState::belief_slot(FeatureId id) {
  return weights_.try_emplace(id, config_.prior()).first->second;
}

std::vector<std::pair<FeatureId, GaussianBelief>> ModelState::sorted_entries() const {
  std::vector<std::pair<FeatureId, GaussianBelief>> out(weights_.begin(), weights_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

ModelState ModelState::restore(ModelConfig config,
                               std::span<const std::pair<FeatureId, GaussianBelief>> entries,
                               std::uint64_t observations, std::uint64_t clamps) {
  ModelState state(config);
  state.weights_.reserve(entries.size());
  for (const auto& [id, b] : entries) {
    if (!(std::isfinite(b.mean) && std::isfinite(b.variance) && b.variance > 0.0))
      throw format_error("model entry with invalid belief");
    if (!state.weights_.emplace(id, b).second)
      throw format_error("duplicate feature id in model");
  }
  state.observations_ = observations;
  state.clamps_ = clamps;
  return state;
}

TotalMoments total_moments(const ModelState& state, const FeatureVector& x) {
  const double beta = state.config().beta;
  TotalMoments m{0.0, 0.0};
  for (const FeatureId id : x.ids()) {
    const auto b = state.belief(id);
    m.total_mean += b.mean;
    m.total_variance += b.variance;
  }
  m.total_variance += beta * beta;
  return m;
}

double predict(const ModelState& state, const FeatureVector& x) {
  const auto m = total_moments(state, x);
  return normal_cdf(m.total_mean / std::sqrt(m.total_variance));
}

void update(ModelState& state, const FeatureVector& x, Label y) {
  if (x.empty()) throw invalid_argument("update: empty feature vector");

  const auto m = total_moments(state, x);
  const double sigma = std::sqrt(m.total_variance);
  const double ys = sign(y);
  const double t = ys * m.total_mean / sigma;
  const double vt = v(t);
  const double wt = w(t);

  for (const FeatureId id : x.ids()) {
    GaussianBelief& b = state.belief_slot(id);
    const double var = b.variance;
    b.mean += ys * (var / sigma) * vt;
    double next = var * (1.0 - (var / m.total_variance) * wt);
    if (!(next >= kVarianceFloor)) {
      next = kVarianceFloor;
      ++state.clamps_;
    }
    b.variance = next;
  }
  ++state.observations_;
}

}  // namespace swd
