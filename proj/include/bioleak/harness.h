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

// Experiment configuration and the experiment runners behind the CLI.

#ifndef BIOLEAK_HARNESS_H_
#define BIOLEAK_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bioleak/code_offset.h"
#include "bioleak/core_math.h"
#include "bioleak/leakage.h"
#include "bioleak/sparse_sca.h"

namespace bioleak {

// Flat key=value configuration. Every field has a key of the same name;
// see ExperimentConfig::Keys().
struct ExperimentConfig {
  std::optional<std::uint64_t> seed;  // mandatory for every run
  std::size_t users = 5000;
  std::size_t dim = 256;         // N
  std::size_t output_dim = 0;    // L for random projections; 0 means N
  double sigma_x2 = 0.5;
  double tau_factor = 1.0;       // tau = tau_factor * sigma_x
  std::vector<double> sigma_z2_ratios = {0.4, 0.8};  // sigma_z^2 / sigma_x^2
  std::vector<double> sparsity_ratios = {0.025, 0.1, 0.3, 0.5};
  std::vector<double> ambiguation_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<std::string> fig7_projections = {"identity", "pca"};
  std::uint64_t samples = 1'000'000;
  std::size_t bins = 64;
  std::vector<std::size_t> fig5_intervals = {2, 3, 4};  // p0 = 1/J
  std::size_t fig5_steps = 16;  // F(-tau)/p0 = k/steps, k = 1..steps
  std::vector<std::size_t> hds_intervals = {2, 3, 4, 5, 6};
  std::vector<std::size_t> hds_subdivisions = {1, 2, 3, 4};
  std::size_t thm2_intervals = 4;
  std::vector<std::size_t> thm2_subdivisions = {2, 3, 4, 8};
  std::vector<double> thm2_tail = {0.002, 0.01, 0.02};
  std::string distribution = "gaussian";  // gaussian | laplace
  std::vector<std::string> codes = {"hamming74", "repetition:5"};
  std::vector<double> com_epsilons = {0.05, 0.1, 0.2, 0.45};
  std::vector<double> com_priors = {0.5, 0.3};
  std::size_t attack_trials = 200;
  std::size_t attack_l = 12;
  std::size_t attack_n = 6;
  std::size_t attack_st = 2;
  std::size_t attack_sn = 3;
  std::uint64_t attack_budget = 1'000'000;
  // Enrolment database.
  std::string scheme = "sca";          // sca | hds
  std::string projection = "identity";  // identity | random | pca
  double sparsity = 0.1;               // alpha_t for enrolment
  double ambiguation_ratio = 0.5;
  std::size_t hds_j = 4;
  std::size_t hds_m = 2;
  std::string code = "hamming74";  // hamming74 | repetition:<n> | file path
  std::optional<double> threshold;
  // Not part of the config hash.
  unsigned threads = 0;  // 0 = hardware concurrency
  std::string out;

  static const std::vector<std::string>& Keys();
  // Throws kConfig for an unknown key or a malformed value.
  void Set(const std::string& key, const std::string& value);
  std::string Get(const std::string& key) const;
  // "key=value" lines in Keys() order, excluding out and threads.
  std::string Canonical() const;
  // 16 hex digits of FNV-1a over Canonical().
  std::string Hash() const;
  // Range checks; throws kConfig. Does not require the seed.
  void Validate() const;
  // Throws kConfig when the seed is missing.
  std::uint64_t RequireSeed() const;

  double sigma_x() const;
  double tau() const { return tau_factor * sigma_x(); }
  SymmetricDistribution Source() const;
};

// Lines of key=value; '#' starts a comment; blank lines ignored.
void ApplyConfigText(ExperimentConfig& config, const std::string& text);
// Throws kIo if the file cannot be read.
void ApplyConfigFile(ExperimentConfig& config, const std::string& path);

// "hamming74", "repetition:<n>", inline parity-check text, or a file path.
LinearCode MakeCode(const std::string& spec);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string ToString() const;
  // Index of a header column; throws kInvalidArgument if absent.
  std::size_t Column(const std::string& name) const;
};

// Six significant digits.
std::string FormatReal(double value);
// Throws kIo.
void WriteTextFile(const std::string& path, const std::string& text);
std::string ReadTextFile(const std::string& path);

struct Fig5Row {
  std::size_t intervals = 0;
  double p0 = 0.0;
  double ratio = 0.0;  // F(-tau)/p0
  double f_neg_tau = 0.0;
  double tau = 0.0;
  double analytic_normalized = 0.0;
  LeakageReport mc;
};

struct Fig6Row {
  double alpha_t = 0.0;
  std::size_t s_t = 0;
  double sigma_z2_ratio = 0.0;
  double ratio = 0.0;
  double mean_noise_count = 0.0;
  ErrorRateEstimate h0;
  ErrorRateEstimate h1;
};

struct Fig7Row {
  std::string projection;
  ScaLeakagePoint point;
};

struct HdsRow {
  TargetBit target = TargetBit::kSign;
  std::size_t intervals = 0;
  std::size_t m = 0;
  double f_neg_tau = 0.0;  // extremeness rows only
  LeakageReport report;
};

struct ComRow {
  std::string check;  // marginal | noisy | correction
  std::string code;
  std::size_t n = 0, k = 0, r = 0;
  double parameter = 0.0;  // prior p1, epsilon, or error weight
  std::size_t index = 0;   // bit index for marginal rows
  double exact = 0.0;   // exact leakage
  double bound = 0.0;   // closed form (noisy rows)
  double approx = 0.0;  // small-leakage form (noisy rows)
  std::uint64_t cases = 0;     // correction rows
  std::uint64_t failures = 0;  // correction rows
};

struct AttackRow {
  std::size_t trial = 0;
  std::uint64_t candidates = 0;
  std::size_t true_rank = 0;  // 1-based
  double true_residual = 0.0;
  double best_residual = 0.0;
};

std::vector<Fig5Row> RunFig5(const ExperimentConfig& config);
std::vector<Fig6Row> RunFig6(const ExperimentConfig& config);
std::vector<Fig7Row> RunFig7(const ExperimentConfig& config);
std::vector<HdsRow> RunHdsValidate(const ExperimentConfig& config);
std::vector<ComRow> RunComValidate(const ExperimentConfig& config);
std::vector<AttackRow> RunAttackDemo(const ExperimentConfig& config);

CsvTable ToCsv(const ExperimentConfig& config, const std::vector<Fig5Row>& rows);
CsvTable ToCsv(const ExperimentConfig& config, const std::vector<Fig6Row>& rows);
CsvTable ToCsv(const ExperimentConfig& config, const std::vector<Fig7Row>& rows);
CsvTable ToCsv(const ExperimentConfig& config, const std::vector<HdsRow>& rows);
CsvTable ToCsv(const ExperimentConfig& config, const std::vector<ComRow>& rows);
CsvTable ToCsv(const ExperimentConfig& config, const std::vector<AttackRow>& rows);

// fig5 | fig6 | fig7 | hds-validate | com-validate | attack-demo.
const std::vector<std::string>& ExperimentNames();
// Throws kConfig for an unknown name or a missing seed.
CsvTable RunExperiment(const std::string& name, const ExperimentConfig& config);
// gnuplot script plotting the experiment's CSV.
std::string GnuplotScript(const std::string& name, const std::string& csv_path);

}  // namespace bioleak

#endif  // BIOLEAK_HARNESS_H_
