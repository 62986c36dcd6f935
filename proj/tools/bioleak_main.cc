// Copyright 2026 The bioleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything goes through the C API in
// libbioleak.
//
// Exit codes: 0 success, 1 other failure, 2 configuration or usage error,
// 3 I/O or file-format error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bioleak/bioleak.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int ExitCodeFor(bl_status status) {
  switch (status) {
    case BL_OK: return kExitOk;
    case BL_ERR_CONFIG: return kExitConfig;
    case BL_ERR_IO:
    case BL_ERR_FORMAT: return kExitIo;
    default: return kExitFailure;
  }
}

// Carries a failed status up to main().
struct Failure {
  bl_status status;
  std::string message;
};

void Check(bl_status status) {
  if (status != BL_OK) throw Failure{status, bl_last_error_message()};
}

[[noreturn]] void ConfigError(const std::string& message) {
  throw Failure{BL_ERR_CONFIG, message};
}

struct ConfigDeleter {
  void operator()(bl_config* c) const { bl_config_destroy(c); }
};
struct VectorsDeleter {
  void operator()(bl_vectors* v) const { bl_vectors_destroy(v); }
};
struct DatabaseDeleter {
  void operator()(bl_database* d) const { bl_database_destroy(d); }
};
using ConfigPtr = std::unique_ptr<bl_config, ConfigDeleter>;
using VectorsPtr = std::unique_ptr<bl_vectors, VectorsDeleter>;
using DatabasePtr = std::unique_ptr<bl_database, DatabaseDeleter>;

std::string TakeString(char* s) {
  std::string out = s ? s : "";
  bl_string_free(s);
  return out;
}

// Options shared by every subcommand. Later sources override earlier ones:
// defaults, --config file, --set, then the dedicated flags.
struct CommonOptions {
  std::string config_file;
  std::vector<std::string> sets;
  std::optional<std::string> seed, users, dim, threads;
  std::string out;

  void Register(CLI::App* app) {
    app->add_option("--config", config_file, "key=value configuration file");
    app->add_option("--set", sets, "Override a config key (key=value)")
        ->take_all();
    app->add_option("--seed", seed, "Root random seed (required for runs)");
    app->add_option("--users", users, "Number of users C");
    app->add_option("--dim", dim, "Feature dimension N");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)");
    app->add_option("--out", out, "Output file (default: stdout)");
  }

  ConfigPtr Build() const {
    bl_config* raw = nullptr;
    Check(bl_config_create(&raw));
    ConfigPtr config(raw);
    if (!config_file.empty()) Check(bl_config_load_file(config.get(), config_file.c_str()));
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) ConfigError("--set expects key=value, got '" + kv + "'");
      Check(bl_config_set(config.get(), kv.substr(0, eq).c_str(),
                          kv.substr(eq + 1).c_str()));
    }
    auto apply = [&](const char* key, const std::optional<std::string>& v) {
      if (v) Check(bl_config_set(config.get(), key, v->c_str()));
    };
    apply("seed", seed);
    apply("users", users);
    apply("dim", dim);
    apply("threads", threads);
    if (!out.empty()) Check(bl_config_set(config.get(), "out", out.c_str()));
    Check(bl_config_validate(config.get()));
    return config;
  }
};

void Emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) {
    throw Failure{BL_ERR_IO, "cannot write " + out_path};
  }
}

std::vector<double> ParseProbe(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      ConfigError("--probe: bad value '" + cell + "'");
    }
  }
  if (values.empty()) ConfigError("--probe: no values");
  return values;
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int RunExperiment(const std::string& name, const CommonOptions& common,
                  const std::string& plot_path) {
  ConfigPtr config = common.Build();
  if (!plot_path.empty() && common.out.empty()) {
    ConfigError("--plot needs --out so the script can reference the CSV");
  }
  char* csv = nullptr;
  Check(bl_run_experiment(config.get(), name.c_str(), nullptr, &csv));
  Emit(common.out, TakeString(csv));
  if (!plot_path.empty()) {
    char* script = nullptr;
    Check(bl_gnuplot_script(name.c_str(), common.out.c_str(), &script));
    Emit(plot_path, TakeString(script));
  }
  return kExitOk;
}

struct EnrollOptions {
  std::string db, scheme, projection, vectors, vectors_out;
};

int RunEnroll(const CommonOptions& common, const EnrollOptions& opts) {
  ConfigPtr config = common.Build();
  if (!opts.scheme.empty()) Check(bl_config_set(config.get(), "scheme", opts.scheme.c_str()));
  if (!opts.projection.empty()) {
    Check(bl_config_set(config.get(), "projection", opts.projection.c_str()));
  }
  Check(bl_config_validate(config.get()));

  bl_vectors* raw = nullptr;
  if (opts.vectors.empty()) {
    Check(bl_vectors_synthetic(config.get(), &raw));
  } else {
    Check(bl_vectors_load_csv(opts.vectors.c_str(), &raw));
  }
  VectorsPtr vectors(raw);
  if (!opts.vectors_out.empty()) {
    Check(bl_vectors_save_csv(vectors.get(), opts.vectors_out.c_str()));
  }
  bl_database* db_raw = nullptr;
  Check(bl_database_create(config.get(), vectors.get(), &db_raw));
  DatabasePtr db(db_raw);
  Check(bl_database_enroll_vectors(db.get(), vectors.get()));
  Check(bl_database_save(db.get(), opts.db.c_str()));
  std::cerr << "enrolled " << bl_database_size(db.get()) << " users into "
            << opts.db << "\n";
  return kExitOk;
}

struct VerifyOptions {
  std::string db, user, probe, vectors;
  std::optional<double> threshold;
};

int RunVerify(const CommonOptions& common, const VerifyOptions& opts) {
  if (opts.probe.empty() == opts.vectors.empty()) {
    ConfigError("verify needs exactly one of --probe or --vectors");
  }
  if (!opts.probe.empty() && opts.user.empty()) ConfigError("--probe needs --user");
  bl_database* db_raw = nullptr;
  Check(bl_database_load(opts.db.c_str(), &db_raw));
  DatabasePtr db(db_raw);

  std::string out = "user_id,score,threshold,accepted\n";
  auto verify_one = [&](const std::string& id, const std::vector<double>& y) {
    bl_verify_result r{};
    Check(bl_database_verify(db.get(), id.c_str(), y.data(), y.size(),
                             opts.threshold.has_value(),
                             opts.threshold.value_or(0.0), &r));
    out += id + "," + FormatNumber(r.score) + "," + FormatNumber(r.threshold) +
           "," + (r.accepted ? "1" : "0") + "\n";
  };
  if (!opts.probe.empty()) {
    verify_one(opts.user, ParseProbe(opts.probe));
  } else {
    bl_vectors* raw = nullptr;
    Check(bl_vectors_load_csv(opts.vectors.c_str(), &raw));
    VectorsPtr probes(raw);
    std::vector<double> y(bl_vectors_dim(probes.get()));
    for (std::size_t i = 0; i < bl_vectors_count(probes.get()); ++i) {
      const char* id = nullptr;
      Check(bl_vectors_row(probes.get(), i, &id, y.data(), y.size()));
      if (!opts.user.empty() && opts.user != id) continue;
      verify_one(id, y);
    }
  }
  Emit(common.out, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bioleak: leakage analysis of biometric template protection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bl_version());

  const std::vector<std::pair<std::string, std::string>> experiments = {
      {"fig5", "Continuum-helper extremeness leakage vs F(-tau)/p0"},
      {"fig6", "Reconstruction error probabilities vs ambiguation ratio"},
      {"fig7", "Normalized leakage of ambiguated sparse codes"},
      {"hds-validate", "Monte-Carlo check of the quantizer leakage formulas"},
      {"com-validate", "Exact code-offset leakage and correction checks"},
      {"attack-demo", "Enumeration attack on overcomplete projections"},
  };
  std::vector<CommonOptions> experiment_opts(experiments.size());
  std::vector<std::string> plot_paths(experiments.size());
  std::vector<CLI::App*> experiment_cmds;
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(experiments[i].first, experiments[i].second);
    experiment_opts[i].Register(cmd);
    cmd->add_option("--plot", plot_paths[i], "Also write a gnuplot script here");
    experiment_cmds.push_back(cmd);
  }

  CommonOptions enroll_common;
  EnrollOptions enroll_opts;
  CLI::App* enroll = app.add_subcommand("enroll", "Build an enrolment database");
  enroll_common.Register(enroll);
  enroll->add_option("--db", enroll_opts.db, "Database file to write")->required();
  enroll->add_option("--scheme", enroll_opts.scheme, "sca or hds");
  enroll->add_option("--projection", enroll_opts.projection,
                     "identity, random or pca");
  enroll->add_option("--vectors", enroll_opts.vectors,
                     "CSV of user_id,x1..xN (default: synthetic users)");
  enroll->add_option("--vectors-out", enroll_opts.vectors_out,
                     "Write the enrolled vectors as CSV");

  CommonOptions verify_common;
  VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "Verify probes against a database");
  verify_common.Register(verify);
  verify->add_option("--db", verify_opts.db, "Database file")->required();
  verify->add_option("--user", verify_opts.user, "Claimed user id");
  verify->add_option("--probe", verify_opts.probe, "Probe vector x1,...,xN");
  verify->add_option("--vectors", verify_opts.vectors,
                     "CSV of user_id,y1..yN probes");
  verify->add_option("--threshold", verify_opts.threshold,
                     "Decision threshold (default per scheme)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    for (std::size_t i = 0; i < experiment_cmds.size(); ++i) {
      if (experiment_cmds[i]->parsed()) {
        return RunExperiment(experiments[i].first, experiment_opts[i], plot_paths[i]);
      }
    }
    if (enroll->parsed()) return RunEnroll(enroll_common, enroll_opts);
    if (verify->parsed()) return RunVerify(verify_common, verify_opts);
  } catch (const Failure& f) {
    std::cerr << "bioleak: " << bl_status_string(f.status) << ": " << f.message
              << "\n";
    return ExitCodeFor(f.status);
  }
  return kExitFailure;
}
