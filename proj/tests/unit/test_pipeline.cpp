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

#include <filesystem>

#include "common/error.hpp"
#include "common/text.hpp"
#include "doctest.h"
#include "pipeline/pipeline.hpp"

using namespace swd;
namespace fs = std::filesystem;

namespace {

const std::string kSessions20 = std::string(SWD_FIXTURE_DIR) + "/sessions20.tsv";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

std::vector<SessionId> ids_in(const std::string& path) {
  std::vector<SessionId> out;
  for (const auto& s : read_sessions(path)) out.push_back(s.session_id);
  return out;
}

}  // namespace

TEST_CASE("config file and overrides") {
  auto c = PipelineConfig::from_json(R"({"task": "4cat", "model": {"beta": 2}, "split": {"modulus": 5}})");
  CHECK(c.task.kind == TaskKind::kFourCategory);
  CHECK(c.task.model.beta == 2.0);
  CHECK(c.modulus == 5);
  CHECK(c.residue == 1);
  CHECK(PipelineConfig::from_json(c.to_json()).to_json() == c.to_json());

  c.set("beta", "3.5");
  c.set("families", "1,3");
  c.set("seed", "17");
  CHECK(c.task.model.beta == 3.5);
  CHECK(c.task.families == FamilySet::parse("1,3"));
  CHECK(c.generator.seed == 17);

  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInvalidArgument;
  };
  CHECK(kind_of([] { PipelineConfig::from_json(R"({"tsk": "binary"})"); }) == ErrorKind::kConfig);
  CHECK(kind_of([] { PipelineConfig::from_json(R"({"model": {"beta": 0}})"); }) == ErrorKind::kConfig);
  CHECK(kind_of([] { PipelineConfig::from_json(R"({"split": {"modulus": 1}})"); }) == ErrorKind::kConfig);
  CHECK(kind_of([] { PipelineConfig::from_json("{"); }) == ErrorKind::kConfig);
  CHECK(kind_of([&] { c.set("nope", "1"); }) == ErrorKind::kConfig);
  CHECK(kind_of([&] { c.set("epochs", "x"); }) == ErrorKind::kConfig);
  CHECK(kind_of([] { PipelineConfig::load("/nonexistent/swd.json"); }) == ErrorKind::kIo);
}

TEST_CASE("split fixture") {
  TempDir dir("swd_test_split");
  const PipelineConfig cfg;
  const auto summary = run_split(kSessions20, dir / "train.tsv", dir / "valid.tsv", cfg);
  CHECK(summary.validation == 2);
  CHECK(summary.training == 18);
  CHECK(ids_in(dir / "valid.tsv") == std::vector<SessionId>{1, 11});

  const auto stats = run_stats(kSessions20, cfg);
  CHECK(stats.sessions == 20);
  CHECK(stats.users <= 5);
}

TEST_CASE("model trained on disjoint features predicts one half") {
  TempDir dir("swd_test_fresh");
  PipelineConfig cfg;
  cfg.task.families = FamilySet::parse("UserID,QueryID");
  // Training and prediction logs share no users and no queries.
  write_file(dir / "train.tsv", "1\t1\tM\t1\tP\n1\t0\tQ\t0\t10\t1,2\n2\t1\tM\t2\tN\n2\t0\tQ\t0\t11\t1,2\n");
  write_file(dir / "test.tsv", "5\t28\tM\t8\n5\t0\tQ\t0\t90\t1,2\n6\t28\tM\t9\n6\t0\tQ\t0\t91\t3\n");
  run_build_stats(dir / "train.tsv", dir / "stats.bin", cfg);
  run_train(dir / "train.tsv", dir / "stats.bin", dir / "model.swdt", cfg);
  CHECK(run_predict(dir / "model.swdt", dir / "stats.bin", dir / "test.tsv", dir / "pred.tsv", cfg) == 2);
  for (const auto& [id, p] : parse_prediction_table(read_file(dir / "pred.tsv"))) CHECK(p == 0.5);
}

TEST_CASE("full chain is deterministic and evaluable") {
  auto run_chain = [](const TempDir& dir) {
    PipelineConfig cfg;
    cfg.generator.n_sessions = 3000;
    cfg.generator.n_users = 200;
    cfg.generator.n_queries = 500;
    run_gen_synthetic(dir / "log.tsv", dir / "truth.tsv", dir / "report.json", cfg);
    run_split(dir / "log.tsv", dir / "train.tsv", dir / "valid.tsv", cfg);
    run_build_stats(dir / "train.tsv", dir / "stats.bin", cfg);
    std::vector<std::string> preds;
    for (auto kind : {"binary", "3cat", "4cat"}) {
      cfg.set("task", kind);
      run_train(dir / "train.tsv", dir / "stats.bin", dir / (std::string(kind) + ".swdt"), cfg);
      preds.push_back(dir / (std::string(kind) + ".tsv"));
      run_predict(dir / (std::string(kind) + ".swdt"), dir / "stats.bin", dir / "valid.tsv", preds.back(), cfg);
      const double a = run_evaluate(preds.back(), dir / "valid.tsv", cfg);
      CHECK(a > 0.6);
    }
    CHECK(run_ensemble(preds, dir / "submission.tsv") == 300);
    CHECK(run_evaluate(dir / "submission.tsv", dir / "valid.tsv", cfg) > 0.6);
  };
  TempDir a("swd_test_chain_a"), b("swd_test_chain_b");
  run_chain(a);
  run_chain(b);
  for (const auto& f : fs::directory_iterator(a.path)) {
    const auto name = f.path().filename().string();
    CHECK_MESSAGE(read_file(a / name) == read_file(b / name), name);
  }
}

TEST_CASE("train without a stats file builds them from the log") {
  TempDir dir("swd_test_nostats");
  const PipelineConfig cfg;
  run_build_stats(kSessions20, dir / "stats.bin", cfg);
  run_train(kSessions20, dir / "stats.bin", dir / "a.swdt", cfg);
  run_train(kSessions20, "", dir / "b.swdt", cfg);
  CHECK(read_file(dir / "a.swdt") == read_file(dir / "b.swdt"));
}

TEST_CASE("ensemble input errors") {
  TempDir dir("swd_test_ens");
  write_file(dir / "a.tsv", "session_id\tprobability\n1\t0.5\n2\t0.4\n");
  write_file(dir / "b.tsv", "session_id\tprobability\n1\t0.5\n3\t0.4\n");
  const std::vector<std::string> paths{dir / "a.tsv", dir / "b.tsv"};
  CHECK_THROWS_AS(run_ensemble(paths, dir / "out.tsv"), Error);
  const std::vector<std::string> missing{dir / "a.tsv", dir / "nope.tsv"};
  try {
    run_ensemble(missing, dir / "out.tsv");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
  }
}

TEST_CASE("feature extraction callback sees every session") {
  std::vector<SessionId> seen;
  run_extract(kSessions20, "", PipelineConfig{}, [&](SessionId id, const FeatureVector& x) {
    seen.push_back(id);
    CHECK_FALSE(x.empty());
  });
  CHECK(seen.size() == 20);
}
