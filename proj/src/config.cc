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

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <type_traits>

#include "bioleak/error.h"
#include "bioleak/harness.h"

namespace bioleak {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void Bad(const std::string& key, const std::string& value,
                      const char* what) {
  throw Error(ErrorCode::kConfig,
              "config key '" + key + "': " + what + " (got '" + value + "')");
}

std::uint64_t ParseU64(const std::string& key, const std::string& raw) {
  const std::string v = Trim(raw);
  if (v.empty() || v[0] == '-' || v[0] == '+') Bad(key, raw, "expected an unsigned integer");
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 0);
  if (errno != 0 || *end != '\0') Bad(key, raw, "expected an unsigned integer");
  return x;
}

double ParseReal(const std::string& key, const std::string& raw) {
  const std::string v = Trim(raw);
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || errno != 0 || *end != '\0' || !std::isfinite(x)) {
    Bad(key, raw, "expected a finite real number");
  }
  return x;
}

std::vector<std::string> SplitList(const std::string& raw) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string Real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string JoinList(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += Real17(xs[i]);
    } else if constexpr (std::is_same_v<T, std::string>) {
      out += xs[i];
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

struct Field {
  std::string name;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field Scalar(const char* name, T ExperimentConfig::*member) {
  Field f;
  f.name = name;
  f.set = [name, member](ExperimentConfig& c, const std::string& v) {
    if constexpr (std::is_same_v<T, double>) {
      c.*member = ParseReal(name, v);
    } else if constexpr (std::is_same_v<T, std::string>) {
      c.*member = Trim(v);
    } else {
      const std::uint64_t x = ParseU64(name, v);
      if (x > std::numeric_limits<T>::max()) Bad(name, v, "value too large");
      c.*member = static_cast<T>(x);
    }
  };
  f.get = [member](const ExperimentConfig& c) {
    if constexpr (std::is_same_v<T, double>) {
      return Real17(c.*member);
    } else if constexpr (std::is_same_v<T, std::string>) {
      return c.*member;
    } else {
      return std::to_string(c.*member);
    }
  };
  return f;
}

template <typename T>
Field List(const char* name, std::vector<T> ExperimentConfig::*member) {
  Field f;
  f.name = name;
  f.set = [name, member](ExperimentConfig& c, const std::string& v) {
    std::vector<T> out;
    for (const std::string& item : SplitList(v)) {
      if constexpr (std::is_same_v<T, double>) {
        out.push_back(ParseReal(name, item));
      } else if constexpr (std::is_same_v<T, std::string>) {
        out.push_back(item);
      } else {
        out.push_back(static_cast<T>(ParseU64(name, item)));
      }
    }
    if (out.empty()) Bad(name, v, "expected a non-empty list");
    c.*member = std::move(out);
  };
  f.get = [member](const ExperimentConfig& c) { return JoinList(c.*member); };
  return f;
}

const std::vector<Field>& Fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back({"seed",
                 [](C& c, const std::string& v) { c.seed = ParseU64("seed", v); },
                 [](const C& c) {
                   return c.seed ? std::to_string(*c.seed) : std::string();
                 }});
    f.push_back(Scalar("users", &C::users));
    f.push_back(Scalar("dim", &C::dim));
    f.push_back(Scalar("output_dim", &C::output_dim));
    f.push_back(Scalar("sigma_x2", &C::sigma_x2));
    f.push_back(Scalar("tau_factor", &C::tau_factor));
    f.push_back(List("sigma_z2_ratios", &C::sigma_z2_ratios));
    f.push_back(List("sparsity_ratios", &C::sparsity_ratios));
    f.push_back(List("ambiguation_grid", &C::ambiguation_grid));
    f.push_back(List("fig7_projections", &C::fig7_projections));
    f.push_back(Scalar("samples", &C::samples));
    f.push_back(Scalar("bins", &C::bins));
    f.push_back(List("fig5_intervals", &C::fig5_intervals));
    f.push_back(Scalar("fig5_steps", &C::fig5_steps));
    f.push_back(List("hds_intervals", &C::hds_intervals));
    f.push_back(List("hds_subdivisions", &C::hds_subdivisions));
    f.push_back(Scalar("thm2_intervals", &C::thm2_intervals));
    f.push_back(List("thm2_subdivisions", &C::thm2_subdivisions));
    f.push_back(List("thm2_tail", &C::thm2_tail));
    f.push_back(Scalar("distribution", &C::distribution));
    f.push_back(List("codes", &C::codes));
    f.push_back(List("com_epsilons", &C::com_epsilons));
    f.push_back(List("com_priors", &C::com_priors));
    f.push_back(Scalar("attack_trials", &C::attack_trials));
    f.push_back(Scalar("attack_l", &C::attack_l));
    f.push_back(Scalar("attack_n", &C::attack_n));
    f.push_back(Scalar("attack_st", &C::attack_st));
    f.push_back(Scalar("attack_sn", &C::attack_sn));
    f.push_back(Scalar("attack_budget", &C::attack_budget));
    f.push_back(Scalar("scheme", &C::scheme));
    f.push_back(Scalar("projection", &C::projection));
    f.push_back(Scalar("sparsity", &C::sparsity));
    f.push_back(Scalar("ambiguation_ratio", &C::ambiguation_ratio));
    f.push_back(Scalar("hds_j", &C::hds_j));
    f.push_back(Scalar("hds_m", &C::hds_m));
    f.push_back(Scalar("code", &C::code));
    f.push_back({"threshold",
                 [](C& c, const std::string& v) {
                   if (Trim(v).empty()) {
                     c.threshold.reset();
                   } else {
                     c.threshold = ParseReal("threshold", v);
                   }
                 },
                 [](const C& c) {
                   return c.threshold ? Real17(*c.threshold) : std::string();
                 }});
    f.push_back(Scalar("threads", &C::threads));
    f.push_back(Scalar("out", &C::out));
    return f;
  }();
  return fields;
}

const Field& FindField(const std::string& key) {
  for (const Field& f : Fields()) {
    if (f.name == key) return f;
  }
  throw Error(ErrorCode::kConfig, "unknown config key '" + key + "'");
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kConfig, what);
}

template <typename T, typename Pred>
bool All(const std::vector<T>& xs, Pred pred) {
  return std::all_of(xs.begin(), xs.end(), pred);
}

}  // namespace

const std::vector<std::string>& ExperimentConfig::Keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const Field& f : Fields()) k.push_back(f.name);
    return k;
  }();
  return keys;
}

void ExperimentConfig::Set(const std::string& key, const std::string& value) {
  FindField(Trim(key)).set(*this, value);
}

std::string ExperimentConfig::Get(const std::string& key) const {
  return FindField(Trim(key)).get(*this);
}

std::string ExperimentConfig::Canonical() const {
  std::string out;
  for (const Field& f : Fields()) {
    if (f.name == "out" || f.name == "threads") continue;
    out += f.name + "=" + f.get(*this) + "\n";
  }
  return out;
}

std::string ExperimentConfig::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : Canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ExperimentConfig::Validate() const {
  auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
  Require(users > 0, "users must be positive");
  Require(dim > 0, "dim must be positive");
  Require(sigma_x2 > 0.0, "sigma_x2 must be positive");
  Require(tau_factor >= 0.0, "tau_factor must be >= 0");
  Require(All(sigma_z2_ratios, [](double x) { return x >= 0.0; }),
          "sigma_z2_ratios must be >= 0");
  Require(All(sparsity_ratios, [](double x) { return x > 0.0 && x <= 1.0; }),
          "sparsity_ratios must lie in (0, 1]");
  Require(All(ambiguation_grid, in01), "ambiguation_grid must lie in [0, 1]");
  Require(All(fig7_projections,
              [](const std::string& p) {
                return p == "identity" || p == "random" || p == "pca";
              }),
          "fig7_projections must be identity, random or pca");
  Require(samples >= kMinMonteCarloSamples, "samples must be >= 10000");
  Require(bins >= 2, "bins must be >= 2");
  Require(All(fig5_intervals, [](std::size_t j) { return j >= 2; }),
          "fig5_intervals must be >= 2");
  Require(fig5_steps >= 1, "fig5_steps must be >= 1");
  Require(All(hds_intervals, [](std::size_t j) { return j >= 2; }),
          "hds_intervals must be >= 2");
  Require(All(hds_subdivisions, [](std::size_t m) { return m >= 1; }),
          "hds_subdivisions must be >= 1");
  Require(thm2_intervals >= 2, "thm2_intervals must be >= 2");
  Require(All(thm2_subdivisions, [](std::size_t m) { return m >= 2; }),
          "thm2_subdivisions must be >= 2");
  Require(All(thm2_tail, [](double f) { return f > 0.0 && f < 0.5; }),
          "thm2_tail must lie in (0, 1/2)");
  Require(distribution == "gaussian" || distribution == "laplace",
          "distribution must be gaussian or laplace");
  Require(All(com_epsilons, [](double e) { return e >= 0.0 && e <= 0.5; }),
          "com_epsilons must lie in [0, 1/2]");
  Require(All(com_priors, [](double p) { return p > 0.0 && p < 1.0; }),
          "com_priors must lie in (0, 1)");
  Require(attack_trials > 0, "attack_trials must be positive");
  Require(attack_n > 0 && attack_l > 0, "attack dimensions must be positive");
  Require(attack_st >= 1 && attack_st <= attack_l, "attack_st out of range");
  Require(attack_sn <= attack_l - attack_st, "attack_sn out of range");
  Require(scheme == "sca" || scheme == "hds", "scheme must be sca or hds");
  Require(projection == "identity" || projection == "random" ||
              projection == "pca",
          "projection must be identity, random or pca");
  Require(sparsity > 0.0 && sparsity <= 1.0, "sparsity must lie in (0, 1]");
  Require(in01(ambiguation_ratio), "ambiguation_ratio must lie in [0, 1]");
  Require(hds_j >= 2, "hds_j must be >= 2");
  Require(hds_m >= 1 && hds_m <= 65535, "hds_m must lie in [1, 65535]");
}

std::uint64_t ExperimentConfig::RequireSeed() const {
  if (!seed) throw Error(ErrorCode::kConfig, "a seed is required");
  return *seed;
}

double ExperimentConfig::sigma_x() const { return std::sqrt(sigma_x2); }

SymmetricDistribution ExperimentConfig::Source() const {
  return distribution == "laplace" ? LaplaceDistribution(sigma_x())
                                   : GaussianDistribution(sigma_x());
}

void ApplyConfigText(ExperimentConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  "config line " + std::to_string(number) + ": expected key=value");
    }
    config.Set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void ApplyConfigFile(ExperimentConfig& config, const std::string& path) {
  ApplyConfigText(config, ReadTextFile(path));
}

LinearCode MakeCode(const std::string& spec) {
  if (spec == "hamming74") return LinearCode::Hamming74();
  if (spec.rfind("repetition:", 0) == 0) {
    const std::uint64_t n = ParseU64("code", spec.substr(11));
    if (n < 2 || n > kMaxCodeLength) {
      throw Error(ErrorCode::kConfig, "repetition length must lie in [2, 20]");
    }
    return LinearCode::Repetition(static_cast<std::size_t>(n));
  }
  if (spec.find('\n') != std::string::npos) return ParseParityCheck(spec);
  return LoadParityCheck(spec);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  return buf.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

}  // namespace bioleak
