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

// swd: command line front end. Talks to the library only through the C API.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "swd/swd.h"

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

class Options {
 public:
  Options() { check(swd_options_create(&handle_)); }
  ~Options() { swd_options_destroy(handle_); }
  Options(const Options&) = delete;
  Options& operator=(const Options&) = delete;

  swd_options* get() const { return handle_; }

  // Failures are reported and turned into the process exit code.
  static void check(swd_status st) {
    if (st != SWD_OK) throw st;
  }

 private:
  swd_options* handle_ = nullptr;
};

// Flags that map one-to-one onto option keys; applied after the config file.
struct Overrides {
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::string> raw;  // --set key=value

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values.emplace_back(key, v); }, help);
  }

  swd_status apply(swd_options* o) const {
    for (const auto& kv : raw) {
      const auto eq = kv.find('=');
      if (auto st = swd_options_set(o, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()); st != SWD_OK) return st;
    }
    for (const auto& [key, value] : values)
      if (auto st = swd_options_set(o, key.c_str(), value.c_str()); st != SWD_OK) return st;
    return SWD_OK;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swd: search engine switch detection (probit regression on search logs)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", swd_version());

  std::string config_path;
  if (const char* env = std::getenv("SWD_CONFIG")) config_path = env;
  app.add_option("-c,--config", config_path, "JSON config file (default: $SWD_CONFIG)");
  Overrides ov;
  app.add_option("--set", ov.raw, "Override one config key, key=value (repeatable)")
      ->check([](const std::string& kv) {
        const auto eq = kv.find('=');
        return eq == std::string::npos || eq == 0 ? std::string("expected key=value") : std::string();
      });
  bool permissive = false;
  app.add_flag("--permissive", permissive, "Skip and count malformed log lines instead of failing");

  std::function<swd_status(swd_options*)> run;

  std::string log, out, stats, model, truth, report, scores, train_log, valid_log, train_out, valid_out;
  std::string candidates = "all";
  std::vector<std::string> predictions;

  auto* cmd = app.add_subcommand("stats", "Count sessions, users, queries and URLs in a log");
  cmd->add_option("log", log, "Log file (plain or .gz)")->required();
  cmd->callback([&] {
    run = [&](swd_options* o) {
      swd_dataset_stats s{};
      if (auto st = swd_run_stats(o, log.c_str(), &s); st != SWD_OK) return st;
      std::printf("sessions\t%llu\nusers\t%llu\nqueries\t%llu\nurls\t%llu\n", (unsigned long long)s.sessions,
                  (unsigned long long)s.users, (unsigned long long)s.queries, (unsigned long long)s.urls);
      return SWD_OK;
    };
  });

  cmd = app.add_subcommand("split", "Split a log into sub-training and validation by session id residue");
  cmd->add_option("log", log, "Log file")->required();
  cmd->add_option("--train-out", train_out, "Sub-training log output")->required();
  cmd->add_option("--valid-out", valid_out, "Validation log output")->required();
  ov.add(cmd, "--modulus", "modulus", "Session id modulus (default 10)");
  ov.add(cmd, "--residue", "residue", "Residue that selects validation (default 1)");
  cmd->callback([&] {
    run = [&](swd_options* o) {
      uint64_t nt = 0, nv = 0;
      if (auto st = swd_run_split(o, log.c_str(), train_out.c_str(), valid_out.c_str(), &nt, &nv); st != SWD_OK)
        return st;
      std::printf("training\t%llu\nvalidation\t%llu\n", (unsigned long long)nt, (unsigned long long)nv);
      return SWD_OK;
    };
  });

  cmd = app.add_subcommand("build-stats", "Build corpus statistics from a training log");
  cmd->add_option("log", log, "Training log")->required();
  cmd->add_option("-o,--out", out, "Statistics file output")->required();
  cmd->callback([&] { run = [&](swd_options* o) { return swd_run_build_stats(o, log.c_str(), out.c_str()); }; });

  cmd = app.add_subcommand("train", "Train a task bundle on a labeled log");
  cmd->add_option("log", log, "Labeled training log")->required();
  cmd->add_option("--stats", stats, "Corpus statistics (default: built from the log)");
  cmd->add_option("-o,--out", out, "Task bundle output")->required();
  ov.add(cmd, "--task", "task", "binary, 3cat or 4cat");
  ov.add(cmd, "--families", "families", "Feature families, e.g. all or 1,3,7,16");
  ov.add(cmd, "--beta", "beta", "Probit noise scale");
  ov.add(cmd, "--epochs", "epochs", "Passes over the log");
  cmd->callback([&] {
    run = [&](swd_options* o) {
      uint64_t n = 0;
      if (auto st = swd_run_train(o, log.c_str(), stats.empty() ? nullptr : stats.c_str(), out.c_str(), &n);
          st != SWD_OK)
        return st;
      std::printf("trained_sessions\t%llu\n", (unsigned long long)n);
      return SWD_OK;
    };
  });

  cmd = app.add_subcommand("predict", "Write switch probabilities for every session of a log");
  cmd->add_option("log", log, "Log to score")->required();
  cmd->add_option("--model", model, "Task bundle")->required();
  cmd->add_option("--stats", stats, "Corpus statistics used at training time")->required();
  cmd->add_option("-o,--out", out, "Prediction table output")->required();
  cmd->callback([&] {
    run = [&](swd_options* o) {
      uint64_t n = 0;
      if (auto st = swd_run_predict(o, model.c_str(), stats.c_str(), log.c_str(), out.c_str(), &n); st != SWD_OK)
        return st;
      std::printf("predictions\t%llu\n", (unsigned long long)n);
      return SWD_OK;
    };
  });

  cmd = app.add_subcommand("ensemble", "Fuse prediction tables by the harmonic mean of their ranks");
  cmd->add_option("predictions", predictions, "Prediction tables")->required();
  cmd->add_option("-o,--out", out, "Submission output")->required();
  cmd->callback([&] {
    run = [&](swd_options*) {
      std::vector<const char*> paths;
      for (const auto& p : predictions) paths.push_back(p.c_str());
      uint64_t n = 0;
      if (auto st = swd_run_ensemble(paths.data(), paths.size(), out.c_str(), &n); st != SWD_OK) return st;
      std::printf("sessions\t%llu\n", (unsigned long long)n);
      return SWD_OK;
    };
  });

  cmd = app.add_subcommand("evaluate", "AUC of a prediction or submission table against a labeled log");
  cmd->add_option("scores", scores, "Prediction or submission table")->required();
  cmd->add_option("--labels", log, "Labeled log")->required();
  cmd->callback([&] {
    run = [&](swd_options* o) {
      double auc = 0;
      if (auto st = swd_run_evaluate(o, scores.c_str(), log.c_str(), &auc); st != SWD_OK) return st;
      std::printf("auc\t%s\n", shortest(auc).c_str());
      return SWD_OK;
    };
  });

  cmd = app.add_subcommand("ablate", "Validation AUC gain of each candidate family over the baseline");
  cmd->add_option("--train", train_log, "Sub-training log")->required();
  cmd->add_option("--valid", valid_log, "Validation log")->required();
  cmd->add_option("--candidates", candidates, "Candidate families (default all)");
  cmd->add_option("-o,--out", out, "Report output")->required();
  ov.add(cmd, "--baseline", "baseline", "Baseline families (default 1,3,7,16)");
  ov.add(cmd, "--task", "task", "binary, 3cat or 4cat");
  ov.add(cmd, "--beta", "beta", "Probit noise scale");
  cmd->callback([&] {
    run = [&](swd_options* o) {
      size_t kept = 0;
      if (auto st = swd_run_ablate(o, train_log.c_str(), valid_log.c_str(), candidates.c_str(), out.c_str(), &kept);
          st != SWD_OK)
        return st;
      std::printf("kept\t%zu\n", kept);
      return SWD_OK;
    };
  });

  cmd = app.add_subcommand("gen-synthetic", "Generate a labeled synthetic log with known ground truth");
  cmd->add_option("-o,--out", out, "Log output")->required();
  cmd->add_option("--truth", truth, "Per-session ground truth TSV output");
  cmd->add_option("--report", report, "Generator parameters and realized rates (JSON) output");
  ov.add(cmd, "--seed", "seed", "Random seed");
  ov.add(cmd, "--n-sessions", "n_sessions", "Number of sessions");
  ov.add(cmd, "--n-users", "n_users", "Number of users");
  ov.add(cmd, "--n-queries", "n_queries", "Query vocabulary size");
  ov.add(cmd, "--switch-rate", "switch_rate", "Target fraction of switching sessions");
  cmd->callback([&] {
    run = [&](swd_options* o) {
      uint64_t n = 0;
      if (auto st = swd_run_gen_synthetic(o, out.c_str(), truth.empty() ? nullptr : truth.c_str(),
                                          report.empty() ? nullptr : report.c_str(), &n);
          st != SWD_OK)
        return st;
      std::printf("sessions\t%llu\n", (unsigned long long)n);
      return SWD_OK;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SWD_ERR_INVALID_ARGUMENT;
  }

  try {
    Options options;
    if (!config_path.empty()) Options::check(swd_options_load(options.get(), config_path.c_str()));
    if (permissive) Options::check(swd_options_set(options.get(), "permissive", "true"));
    Options::check(ov.apply(options.get()));
    Options::check(run(options.get()));
  } catch (swd_status st) {
    std::fprintf(stderr, "swd: %s: %s\n", swd_status_name(st), swd_last_error());
    return st;
  }
  return 0;
}
