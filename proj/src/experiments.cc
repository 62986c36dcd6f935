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
#include <bit>
#include <cmath>
#include <cstdio>

#include "bioleak/error.h"
#include "bioleak/harness.h"

namespace bioleak {
namespace {

// Experiment tags for DeriveSeed paths.
enum : std::uint64_t {
  kTagThm1 = 1,
  kTagThm2 = 2,
  kTagFig5 = 5,
  kTagFig6 = 6,
  kTagFig7 = 7,
};

std::string Int(std::uint64_t v) { return std::to_string(v); }

CsvTable NewTable(std::vector<std::string> columns) {
  CsvTable t;
  t.header = {"config_hash", "seed"};
  t.header.insert(t.header.end(), columns.begin(), columns.end());
  return t;
}

void AddRow(CsvTable& t, const ExperimentConfig& config,
            std::vector<std::string> cells) {
  std::vector<std::string> row = {config.Hash(),
                                  config.seed ? Int(*config.seed) : ""};
  row.insert(row.end(), cells.begin(), cells.end());
  t.rows.push_back(std::move(row));
}

std::string Optional(const std::optional<double>& v) {
  return v ? FormatReal(*v) : "";
}

Projection MakeFig7Projection(const std::string& kind, const Cohort& base,
                              const ExperimentConfig& config,
                              std::uint64_t seed) {
  if (kind == "identity") return Projection::Identity(config.dim);
  if (kind == "random") {
    const std::size_t l = config.output_dim ? config.output_dim : config.dim;
    return Projection::RandomGaussian(
        l, config.dim, DeriveSeed(seed, StreamLabel::kProjection, {kTagFig7}));
  }
  // One column per user.
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      x(base.vectors().data(), static_cast<Eigen::Index>(base.users()),
        static_cast<Eigen::Index>(base.dim()));
  return PcaProjection(x.transpose());
}

}  // namespace

std::string FormatReal(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string CsvTable::ToString() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::size_t CsvTable::Column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(ErrorCode::kInvalidArgument, "no CSV column '" + name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<Fig5Row> RunFig5(const ExperimentConfig& config) {
  config.Validate();
  const std::uint64_t seed = config.RequireSeed();
  const SymmetricDistribution source = config.Source();
  std::vector<Fig5Row> rows;
  for (std::size_t ji = 0; ji < config.fig5_intervals.size(); ++ji) {
    const std::size_t j = config.fig5_intervals[ji];
    const QuantizerSpec spec = MakeEquiprobableQuantizer(source, j, 1);
    const double p0 = spec.probabilities()[0];
    for (std::size_t k = 1; k <= config.fig5_steps; ++k) {
      Fig5Row row;
      row.intervals = j;
      row.p0 = p0;
      row.ratio = static_cast<double>(k) / static_cast<double>(config.fig5_steps);
      row.f_neg_tau = k == config.fig5_steps ? p0 : row.ratio * p0;
      row.tau = std::max(0.0, -source.Quantile(row.f_neg_tau));
      row.analytic_normalized = NormalizedLeakage(
          ExtremenessEntropy(row.f_neg_tau),
          Thm3ExtremenessEntropyContinuum(p0, row.f_neg_tau));
      HdsLeakageParams params;
      params.target = TargetBit::kExtremeness;
      params.tau = row.tau;
      params.observable = HelperObservable::kContinuumBinned;
      params.bins = config.bins;
      params.samples = config.samples;
      params.seed = DeriveSeed(seed, StreamLabel::kExperiment, {kTagFig5, ji, k});
      params.threads = config.threads;
      row.mc = MonteCarloHdsLeakage(spec, params);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

CsvTable ToCsv(const ExperimentConfig& config, const std::vector<Fig5Row>& rows) {
  CsvTable t = NewTable({"intervals", "p0", "ratio", "f_neg_tau", "tau",
                         "analytic_normalized", "mc_normalized", "mc_std_error",
                         "mc_target_entropy", "mc_conditional_entropy",
                         "samples", "bins"});
  for (const auto& r : rows) {
    const double h = r.mc.target_entropy;
    AddRow(t, config,
           {Int(r.intervals), FormatReal(r.p0), FormatReal(r.ratio),
            FormatReal(r.f_neg_tau), FormatReal(r.tau),
            FormatReal(r.analytic_normalized), FormatReal(r.mc.normalized),
            FormatReal(h > 0.0 ? r.mc.leakage_std_error / h : 0.0),
            FormatReal(h), FormatReal(r.mc.empirical_conditional_entropy),
            Int(r.mc.sample_count), Int(r.mc.bins)});
  }
  return t;
}

std::vector<Fig6Row> RunFig6(const ExperimentConfig& config) {
  config.Validate();
  const std::uint64_t seed = config.RequireSeed();
  const std::size_t l = config.dim;
  const double tau = config.tau();
  std::vector<Fig6Row> rows;
  for (std::size_t ai = 0; ai < config.sparsity_ratios.size(); ++ai) {
    const double alpha = config.sparsity_ratios[ai];
    const std::size_t s_t = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(alpha * static_cast<double>(l))), 1, l);
    const Cohort cohort = Cohort::Generate(
        Projection::Identity(config.dim), config.users, config.dim,
        config.sigma_x(), TernaryRule::TopK(s_t),
        DeriveSeed(seed, StreamLabel::kExperiment, {kTagFig6, ai}),
        config.threads);
    std::vector<ErrorRateEstimate> h0(config.ambiguation_grid.size());
    for (std::size_t gi = 0; gi < h0.size(); ++gi) {
      ReconstructionParams p;
      p.ambiguation_ratio = config.ambiguation_grid[gi];
      p.probe_lambda = tau;
      p.seed = DeriveSeed(seed, StreamLabel::kExperiment, {kTagFig6, ai, 0});
      p.threads = config.threads;
      h0[gi] = ReconstructionErrorRate(cohort, Hypothesis::kH0, tau, p);
    }
    for (std::size_t zi = 0; zi < config.sigma_z2_ratios.size(); ++zi) {
      const double zr = config.sigma_z2_ratios[zi];
      for (std::size_t gi = 0; gi < h0.size(); ++gi) {
        ReconstructionParams p;
        p.ambiguation_ratio = config.ambiguation_grid[gi];
        p.probe_lambda = tau;
        p.sigma_noise = std::sqrt(zr * config.sigma_x2);
        p.seed = DeriveSeed(seed, StreamLabel::kExperiment, {kTagFig6, ai, 1, zi});
        p.threads = config.threads;
        Fig6Row row;
        row.alpha_t = alpha;
        row.s_t = s_t;
        row.sigma_z2_ratio = zr;
        row.ratio = p.ambiguation_ratio;
        row.mean_noise_count =
            static_cast<double>(AmbiguationCount(l, s_t, p.ambiguation_ratio));
        row.h0 = h0[gi];
        row.h1 = ReconstructionErrorRate(cohort, Hypothesis::kH1, tau, p);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

CsvTable ToCsv(const ExperimentConfig& config, const std::vector<Fig6Row>& rows) {
  CsvTable t = NewTable({"alpha_t", "s_t", "sigma_z2_ratio", "ratio", "s_n",
                         "pe_h0", "pe_h0_std_error", "pe_h1",
                         "pe_h1_std_error", "users", "dim"});
  for (const auto& r : rows) {
    AddRow(t, config,
           {FormatReal(r.alpha_t), Int(r.s_t), FormatReal(r.sigma_z2_ratio),
            FormatReal(r.ratio), FormatReal(r.mean_noise_count),
            FormatReal(r.h0.rate), FormatReal(r.h0.std_error),
            FormatReal(r.h1.rate), FormatReal(r.h1.std_error),
            Int(config.users), Int(config.dim)});
  }
  return t;
}

std::vector<Fig7Row> RunFig7(const ExperimentConfig& config) {
  config.Validate();
  const std::uint64_t seed = config.RequireSeed();
  const double tau = config.tau();
  const TernaryRule rule = TernaryRule::Threshold(tau);
  const std::uint64_t cohort_seed =
      DeriveSeed(seed, StreamLabel::kExperiment, {kTagFig7});
  const Cohort base =
      Cohort::Generate(Projection::Identity(config.dim), config.users,
                       config.dim, config.sigma_x(), rule, cohort_seed,
                       config.threads);
  std::vector<Fig7Row> rows;
  for (const std::string& kind : config.fig7_projections) {
    std::vector<ScaLeakagePoint> points;
    if (kind == "identity") {
      points = ScaLeakageCurve(base, tau, config.ambiguation_grid, config.threads);
    } else {
      const Cohort cohort = Cohort::FromVectors(
          MakeFig7Projection(kind, base, config, seed),
          std::vector<double>(base.vectors().begin(), base.vectors().end()),
          base.users(), base.sigma_x(), rule, cohort_seed);
      points = ScaLeakageCurve(cohort, tau, config.ambiguation_grid, config.threads);
    }
    for (auto& p : points) rows.push_back({kind, std::move(p)});
  }
  return rows;
}

CsvTable ToCsv(const ExperimentConfig& config, const std::vector<Fig7Row>& rows) {
  CsvTable t = NewTable(
      {"projection", "ratio", "s_n", "ternary_component",
       "ternary_component_std_error", "binary_component",
       "binary_component_std_error", "ternary_reconstruction",
       "ternary_reconstruction_std_error", "binary_reconstruction",
       "binary_reconstruction_std_error", "target_entropy", "samples"});
  auto norm = [](const std::optional<LeakageReport>& r) {
    return r ? FormatReal(r->normalized) : std::string();
  };
  auto norm_se = [](const std::optional<LeakageReport>& r) {
    if (!r || r->target_entropy <= 0.0) return r ? FormatReal(0.0) : std::string();
    return FormatReal(r->leakage_std_error / r->target_entropy);
  };
  for (const auto& row : rows) {
    const ScaLeakagePoint& p = row.point;
    const std::optional<LeakageReport> tr = p.ternary_reconstruction;
    const std::optional<LeakageReport> br = p.binary_reconstruction;
    AddRow(t, config,
           {row.projection, FormatReal(p.ratio), FormatReal(p.mean_noise_count),
            norm(p.ternary_component), norm_se(p.ternary_component),
            norm(p.binary_component), norm_se(p.binary_component), norm(tr),
            norm_se(tr), norm(br), norm_se(br), FormatReal(tr->target_entropy),
            Int(tr->sample_count)});
  }
  return t;
}

std::vector<HdsRow> RunHdsValidate(const ExperimentConfig& config) {
  config.Validate();
  const std::uint64_t seed = config.RequireSeed();
  const SymmetricDistribution source = config.Source();
  std::vector<HdsRow> rows;
  std::uint64_t index = 0;
  for (std::size_t j : config.hds_intervals) {
    for (std::size_t m : config.hds_subdivisions) {
      HdsRow row;
      row.target = TargetBit::kSign;
      row.intervals = j;
      row.m = m;
      HdsLeakageParams params;
      params.target = TargetBit::kSign;
      params.samples = config.samples;
      params.seed = DeriveSeed(seed, StreamLabel::kExperiment, {kTagThm1, index++});
      params.threads = config.threads;
      row.report =
          MonteCarloHdsLeakage(MakeEquiprobableQuantizer(source, j, m), params);
      rows.push_back(std::move(row));
    }
  }
  index = 0;
  for (std::size_t m : config.thm2_subdivisions) {
    const QuantizerSpec spec =
        MakeEquiprobableQuantizer(source, config.thm2_intervals, m);
    for (double f : config.thm2_tail) {
      HdsRow row;
      row.target = TargetBit::kExtremeness;
      row.intervals = config.thm2_intervals;
      row.m = m;
      row.f_neg_tau = f;
      HdsLeakageParams params;
      params.target = TargetBit::kExtremeness;
      params.tau = -source.Quantile(f);
      params.samples = config.samples;
      params.seed = DeriveSeed(seed, StreamLabel::kExperiment, {kTagThm2, index++});
      params.threads = config.threads;
      row.report = MonteCarloHdsLeakage(spec, params);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

CsvTable ToCsv(const ExperimentConfig& config, const std::vector<HdsRow>& rows) {
  CsvTable t = NewTable({"target", "intervals", "m", "f_neg_tau", "in_regime",
                         "analytic_conditional_entropy",
                         "empirical_conditional_entropy",
                         "conditional_entropy_std_error", "empirical_leakage",
                         "leakage_std_error", "target_entropy", "samples"});
  for (const auto& r : rows) {
    const LeakageReport& rep = r.report;
    AddRow(t, config,
           {r.target == TargetBit::kSign ? "sign" : "extremeness", Int(r.intervals), Int(r.m),
            FormatReal(r.f_neg_tau), rep.in_regime ? "1" : "0",
            Optional(rep.analytic_conditional_entropy),
            FormatReal(rep.empirical_conditional_entropy),
            FormatReal(rep.conditional_entropy_std_error),
            FormatReal(rep.empirical_leakage), FormatReal(rep.leakage_std_error),
            FormatReal(rep.target_entropy), Int(rep.sample_count)});
  }
  return t;
}

std::vector<ComRow> RunComValidate(const ExperimentConfig& config) {
  config.Validate();
  config.RequireSeed();
  std::vector<ComRow> rows;
  for (const std::string& name : config.codes) {
    const LinearCode code = MakeCode(name);
    const std::size_t n = code.n(), k = code.k(), r = code.row_weight();
    auto base = [&](const char* check, double parameter) {
      ComRow row;
      row.check = check;
      row.code = name;
      row.n = n;
      row.k = k;
      row.r = r;
      row.parameter = parameter;
      return row;
    };
    for (double p : config.com_priors) {
      for (std::size_t i = 0; i < n; ++i) {
        ComRow row = base("marginal", p);
        row.index = i;
        row.exact = MarginalBitLeakage(code, i, p);
        rows.push_back(row);
      }
    }
    if (n <= 16) {
      for (double eps : config.com_epsilons) {
        ComRow row = base("noisy", eps);
        row.exact = ExactNoisyEnrollmentLeakage(code, eps);
        row.bound = NoisyEnrollmentLeakageBound(n, k, r, eps);
        row.approx = NoisyEnrollmentLeakageApprox(n, k, r, eps);
        rows.push_back(row);
      }
    }
    // Exhaustive over every enrolment word and every error pattern of the
    // given weight.
    if (n <= 12) {
      const std::uint32_t words = 1u << n;
      for (std::size_t w = 1; w <= code.correction_radius() + 1 && w <= n; ++w) {
        ComRow row = base("correction", static_cast<double>(w));
        for (std::uint32_t e = 0; e < words; ++e) {
          if (static_cast<std::size_t>(std::popcount(e)) != w) continue;
          const Bits error = UnpackBits(e, n);
          for (std::uint32_t x = 0; x < words; ++x) {
            const Bits psi_x = UnpackBits(x, n);
            Bits psi_y = psi_x;
            for (std::size_t i = 0; i < n; ++i) psi_y[i] ^= error[i];
            ++row.cases;
            if (ComReconstruct(code, psi_y, ComGen(code, psi_x)) != psi_x) {
              ++row.failures;
            }
          }
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

CsvTable ToCsv(const ExperimentConfig& config, const std::vector<ComRow>& rows) {
  CsvTable t = NewTable({"check", "code", "n", "k", "r", "parameter",
                         "bit_index", "exact", "bound", "approx", "cases",
                         "failures"});
  for (const auto& r : rows) {
    const bool noisy = r.check == "noisy";
    const bool marginal = r.check == "marginal";
    const bool correction = r.check == "correction";
    AddRow(t, config,
           {r.check, r.code, Int(r.n), Int(r.k), Int(r.r), FormatReal(r.parameter),
            marginal ? Int(r.index) : "", correction ? "" : FormatReal(r.exact),
            noisy ? FormatReal(r.bound) : "", noisy ? FormatReal(r.approx) : "",
            correction ? Int(r.cases) : "", correction ? Int(r.failures) : ""});
  }
  return t;
}

std::vector<AttackRow> RunAttackDemo(const ExperimentConfig& config) {
  config.Validate();
  const std::uint64_t seed = config.RequireSeed();
  std::vector<AttackRow> rows(config.attack_trials);
  // Trials are tiny; the per-trial streams keep them order independent.
  for (std::size_t t = 0; t < config.attack_trials; ++t) {
    Rng rng = MakeStream(seed, StreamLabel::kAttack, {t});
    const Projection proj = Projection::RandomGaussian(
        config.attack_l, config.attack_n,
        DeriveSeed(seed, StreamLabel::kAttack, {t, 1}));
    std::normal_distribution<double> normal(0.0, config.sigma_x());
    std::vector<double> x(config.attack_n);
    for (double& xi : x) xi = normal(rng);
    const TernaryCodeword v = StcEncode(proj, x, config.attack_st);
    const TernaryCodeword u = Ambiguate(v, config.attack_sn, rng);
    const auto candidates =
        EnumerationAttack(u, proj, config.attack_st, config.attack_budget);
    AttackRow& row = rows[t];
    row.trial = t;
    row.candidates = candidates.size();
    row.best_residual = candidates.front().residual;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i].codeword == v) {
        row.true_rank = i + 1;
        row.true_residual = candidates[i].residual;
        break;
      }
    }
  }
  return rows;
}

CsvTable ToCsv(const ExperimentConfig& config,
               const std::vector<AttackRow>& rows) {
  CsvTable t = NewTable({"trial", "l", "n", "s_t", "s_n", "candidates",
                         "true_rank", "true_residual", "best_residual"});
  for (const auto& r : rows) {
    AddRow(t, config,
           {Int(r.trial), Int(config.attack_l), Int(config.attack_n),
            Int(config.attack_st), Int(config.attack_sn), Int(r.candidates),
            Int(r.true_rank), FormatReal(r.true_residual),
            FormatReal(r.best_residual)});
  }
  return t;
}

const std::vector<std::string>& ExperimentNames() {
  static const std::vector<std::string> names = {
      "fig5", "fig6", "fig7", "hds-validate", "com-validate", "attack-demo"};
  return names;
}

CsvTable RunExperiment(const std::string& name, const ExperimentConfig& config) {
  if (name == "fig5") return ToCsv(config, RunFig5(config));
  if (name == "fig6") return ToCsv(config, RunFig6(config));
  if (name == "fig7") return ToCsv(config, RunFig7(config));
  if (name == "hds-validate") return ToCsv(config, RunHdsValidate(config));
  if (name == "com-validate") return ToCsv(config, RunComValidate(config));
  if (name == "attack-demo") return ToCsv(config, RunAttackDemo(config));
  throw Error(ErrorCode::kConfig, "unknown experiment '" + name + "'");
}

std::string GnuplotScript(const std::string& name, const std::string& csv_path) {
  std::string s =
      "set datafile separator ','\n"
      "set key outside right\n"
      "set grid\n"
      "file = '" + csv_path + "'\n";
  if (name == "fig5") {
    s += "set xlabel 'F(-tau)/p0'\nset ylabel 'normalized leakage'\n"
         "plot for [J in '2 3 4'] file using (column('ratio')):"
         "(column('intervals') == J+0 ? column('analytic_normalized') : 1/0) "
         "with lines title 'analytic p0=1/'.J, \\\n"
         "     for [J in '2 3 4'] file using (column('ratio')):"
         "(column('intervals') == J+0 ? column('mc_normalized') : 1/0) "
         "with points title 'Monte Carlo p0=1/'.J\n";
  } else if (name == "fig6") {
    s += "set xlabel 'ambiguation ratio'\nset ylabel 'error probability'\n"
         "plot file using (column('ratio')):(column('pe_h0')) with points "
         "title 'H0', \\\n"
         "     file using (column('ratio')):(column('pe_h1')) with points "
         "title 'H1'\n";
  } else if (name == "fig7") {
    s += "set xlabel 'ambiguation ratio'\nset ylabel 'normalized leakage'\n"
         "set logscale y\n"
         "plot file using (column('ratio')):(column('ternary_component')) "
         "with points title 'ternary', \\\n"
         "     file using (column('ratio')):(column('binary_component')) "
         "with points title 'binary'\n";
  } else if (name == "hds-validate") {
    s += "set xlabel 'closed form (bits)'\nset ylabel 'Monte Carlo (bits)'\n"
         "plot file using (column('analytic_conditional_entropy')):"
         "(column('empirical_conditional_entropy')) with points title "
         "'H(bit|helper)', x with lines title 'y = x'\n";
  } else if (name == "com-validate") {
    s += "set xlabel 'epsilon'\nset ylabel 'I(B;U) (bits)'\n"
         "plot file using (stringcolumn('check') eq 'noisy' ? "
         "column('parameter') : 1/0):(column('exact')) with points title "
         "'exact', \\\n"
         "     file using (stringcolumn('check') eq 'noisy' ? "
         "column('parameter') : 1/0):(column('bound')) with points title "
         "'closed form'\n";
  } else if (name == "attack-demo") {
    s += "set xlabel 'rank of the true codeword'\nset ylabel 'trials'\n"
         "set boxwidth 0.8\nset style fill solid 0.5\n"
         "plot file using (column('true_rank')):(1) smooth frequency "
         "with boxes title 'trials'\n";
  } else {
    throw Error(ErrorCode::kConfig, "unknown experiment '" + name + "'");
  }
  return s;
}

}  // namespace bioleak
