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

#include "pipeline/config.hpp"

#include <nlohmann/json.hpp>

#include "common/error.hpp"
#include "common/text.hpp"
#include "eval/metrics.hpp"

namespace swd {

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw config_error("config key '" + std::string(key) + "' has the wrong type");
  }
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw config_error("unknown config key '" + std::string(where) + key + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw config_error("'" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

std::uint64_t parse_count(std::string_view key, std::string_view v) {
  const auto n = parse_u64(v);
  if (!n) throw config_error("'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(v) + "'");
  return *n;
}

double parse_real(std::string_view key, std::string_view v) {
  const auto x = parse_double(v);
  if (!x) throw config_error("'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  return *x;
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config must be a JSON object");
  reject_unknown(j,
                 {"task", "families", "baseline", "epochs", "exclude_self", "permissive", "model", "bucketing",
                  "split", "generator"},
                 "");

  PipelineConfig c;
  if (j.contains("task")) c.task.kind = task_kind_from_name(get_as<std::string>(j["task"], "task"));
  if (j.contains("families")) c.task.families = FamilySet::parse(get_as<std::string>(j["families"], "families"));
  if (j.contains("baseline")) c.baseline = FamilySet::parse(get_as<std::string>(j["baseline"], "baseline"));
  if (j.contains("epochs")) c.task.epochs = get_as<std::uint32_t>(j["epochs"], "epochs");
  if (j.contains("exclude_self")) c.task.exclude_self = get_as<bool>(j["exclude_self"], "exclude_self");
  if (j.contains("permissive")) c.permissive = get_as<bool>(j["permissive"], "permissive");
  if (j.contains("model")) {
    const auto& m = j["model"];
    if (!m.is_object()) throw config_error("config key 'model' must be an object");
    reject_unknown(m, {"beta", "prior_mean", "prior_variance"}, "model.");
    if (m.contains("beta")) c.task.model.beta = get_as<double>(m["beta"], "model.beta");
    if (m.contains("prior_mean")) c.task.model.prior_mean = get_as<double>(m["prior_mean"], "model.prior_mean");
    if (m.contains("prior_variance"))
      c.task.model.prior_variance = get_as<double>(m["prior_variance"], "model.prior_variance");
  }
  if (j.contains("bucketing")) c.task.bucketing = BucketingConfig::from_json(j["bucketing"].dump());
  if (j.contains("split")) {
    const auto& s = j["split"];
    if (!s.is_object()) throw config_error("config key 'split' must be an object");
    reject_unknown(s, {"modulus", "residue"}, "split.");
    if (s.contains("modulus")) c.modulus = get_as<std::uint64_t>(s["modulus"], "split.modulus");
    if (s.contains("residue")) c.residue = get_as<std::uint64_t>(s["residue"], "split.residue");
  }
  if (j.contains("generator")) c.generator = GeneratorParams::from_json(j["generator"].dump());
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) { return from_json(read_file(path)); }

std::string PipelineConfig::to_json() const {
  json j{{"task", std::string(task_kind_name(task.kind))},
         {"families", task.families.to_string()},
         {"baseline", baseline.to_string()},
         {"epochs", task.epochs},
         {"exclude_self", task.exclude_self},
         {"permissive", permissive},
         {"model", {{"beta", task.model.beta}, {"prior_mean", task.model.prior_mean},
                    {"prior_variance", task.model.prior_variance}}},
         {"bucketing", json::parse(task.bucketing.to_json())},
         {"split", {{"modulus", modulus}, {"residue", residue}}},
         {"generator", json::parse(generator.to_json())}};
  return j.dump(2) + "\n";
}

void PipelineConfig::set(std::string_view key, std::string_view value) {
  if (key == "task") task.kind = task_kind_from_name(value);
  else if (key == "families") task.families = FamilySet::parse(value);
  else if (key == "baseline") baseline = FamilySet::parse(value);
  else if (key == "epochs") {
    const auto n = parse_count(key, value);
    if (n > UINT32_MAX) throw config_error("epochs is too large");
    task.epochs = static_cast<std::uint32_t>(n);
  }
  else if (key == "exclude_self") task.exclude_self = parse_bool(key, value);
  else if (key == "permissive") permissive = parse_bool(key, value);
  else if (key == "beta") task.model.beta = parse_real(key, value);
  else if (key == "prior_mean") task.model.prior_mean = parse_real(key, value);
  else if (key == "prior_variance") task.model.prior_variance = parse_real(key, value);
  else if (key == "bucketing") task.bucketing = BucketingConfig::from_json(std::string(value));
  else if (key == "modulus") modulus = parse_count(key, value);
  else if (key == "residue") residue = parse_count(key, value);
  else if (key == "seed") generator.seed = parse_count(key, value);
  else if (key == "n_users") generator.n_users = parse_count(key, value);
  else if (key == "n_sessions") generator.n_sessions = parse_count(key, value);
  else if (key == "n_queries") generator.n_queries = parse_count(key, value);
  else if (key == "switch_rate") generator.switch_rate = parse_real(key, value);
  else if (key == "toolbar_fraction") generator.toolbar_fraction = parse_real(key, value);
  else throw config_error("unknown option '" + std::string(key) + "'");
}

void PipelineConfig::validate() const {
  task.validate();
  generator.validate();
  if (task.families.empty()) throw config_error("feature family set is empty");
  try {
    validate_split_params(modulus, residue);
  } catch (const Error& e) {
    throw config_error(e.what());
  }
}

}  // namespace swd
