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

#include "inference/model_io.hpp"

#include <vector>

#include "common/binary_io.hpp"
#include "common/error.hpp"

namespace swd {

std::string serialize_model(const ModelState& state) {
  ByteWriter out;
  out.put_bytes(kModelMagic);
  out.put_u32(kModelVersion);
  out.put_f64(state.config().beta);
  out.put_f64(state.config().prior_mean);
  out.put_f64(state.config().prior_variance);
  out.put_u64(state.observations_seen());
  out.put_u64(state.variance_clamps());
  const auto entries = state.sorted_entries();
  out.put_u64(entries.size());
  for (const auto& [id, b] : entries) {
    out.put_u64(id.value);
    out.put_f64(b.mean);
    out.put_f64(b.variance);
  }
  return std::move(out).bytes();
}

ModelState deserialize_model(std::string_view bytes) {
  ByteReader in(bytes);
  if (in.get_bytes(kModelMagic.size()) != kModelMagic)
    throw format_error("not a model file (bad magic)");
  if (const auto version = in.get_u32(); version != kModelVersion)
    throw format_error("unsupported model file version " + std::to_string(version));

  ModelConfig config;
  config.beta = in.get_f64();
  config.prior_mean = in.get_f64();
  config.prior_variance = in.get_f64();
  try {
    config.validate();
  } catch (const Error& e) {
    throw format_error(std::string("model header: ") + e.what());
  }
  const auto observations = in.get_u64();
  const auto clamps = in.get_u64();
  const auto count = in.get_u64();
  if (count > in.remaining() / 24) throw format_error("truncated byte stream");

  std::vector<std::pair<FeatureId, GaussianBelief>> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const FeatureId id{in.get_u64()};
    if (!entries.empty() && !(entries.back().first < id))
      throw format_error("model entries not in ascending id order");
    const double mean = in.get_f64();
    const double variance = in.get_f64();
    entries.emplace_back(id, GaussianBelief{mean, variance});
  }
  in.expect_end();
  return ModelState::restore(config, entries, observations, clamps);
}

}  // namespace swd
