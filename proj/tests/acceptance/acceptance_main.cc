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

// Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines, and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "bioleak/code_offset.h"
#include "bioleak/core_math.h"
#include "bioleak/harness.h"
#include "bioleak/leakage.h"

namespace {

using bioleak::ExperimentConfig;
using bioleak::LinearCode;

constexpr std::uint64_t kSeed = 20260101;

// Collects failure notes for one criterion.
class Check {
 public:
  void Expect(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    if (ok) return;
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    failures_.emplace_back(buf);
  }
  void Note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    notes_.emplace_back(buf);
  }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ExperimentConfig BaseConfig() {
  ExperimentConfig c;
  c.seed = kSeed;
  c.threads = 0;
  return c;
}

// Failure lists at most this many entries before summarising.
constexpr std::size_t kMaxListed = 8;

void Criterion1(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig c = BaseConfig();
  c.samples = 1'000'000;
  c.hds_intervals = {2, 3, 4, 5, 6};
  c.hds_subdivisions = {1, 2, 3, 4};
  c.thm2_subdivisions = {};
  c.thm2_tail = {};
  const auto rows = bioleak::RunHdsValidate(c);
  const double elapsed = Seconds(start);
  std::size_t checked = 0;
  double worst = 0.0, worst_even_mi = 0.0;
  for (const auto& row : rows) {
    if (row.target != bioleak::TargetBit::kSign) continue;
    ++checked;
    const auto& r = row.report;
    check.Expect(r.analytic_conditional_entropy.has_value(),
                 "J=%zu m=%zu has no closed form", row.intervals, row.m);
    if (!r.analytic_conditional_entropy) continue;
    const double diff =
        std::abs(*r.analytic_conditional_entropy - r.empirical_conditional_entropy);
    worst = std::max(worst, diff);
    check.Expect(diff <= 0.01, "J=%zu m=%zu: |%.6f - %.6f| > 0.01", row.intervals,
                 row.m, r.empirical_conditional_entropy,
                 *r.analytic_conditional_entropy);
    if (row.intervals % 2 == 0) {
      worst_even_mi = std::max(worst_even_mi, r.empirical_leakage);
      check.Expect(r.empirical_leakage < 0.003, "J=%zu m=%zu: I(U;V) = %.6f",
                   row.intervals, row.m, r.empirical_leakage);
    }
    check.Expect(r.sample_count == 1'000'000, "J=%zu m=%zu used %llu samples",
                 row.intervals, row.m,
                 static_cast<unsigned long long>(r.sample_count));
  }
  check.Expect(checked == 20, "expected 20 grid points, got %zu", checked);
  check.Expect(elapsed < 60.0, "runtime %.1f s exceeds 60 s", elapsed);
  check.Note("%zu grid points, max |H diff| %.6f, max even-J MI %.2e, %.1f s",
             checked, worst, worst_even_mi, elapsed);
}

void Criterion2(Check& check) {
  ExperimentConfig c = BaseConfig();
  c.samples = 1'000'000;
  c.hds_intervals = {};
  c.hds_subdivisions = {};
  c.thm2_intervals = 4;
  c.thm2_subdivisions = {2, 3, 4, 8};
  c.thm2_tail = {0.002, 0.01, 0.02};
  const auto rows = bioleak::RunHdsValidate(c);
  std::size_t checked = 0;
  double worst = 0.0, worst_m2_mi = 0.0;
  for (const auto& row : rows) {
    if (row.target != bioleak::TargetBit::kExtremeness) continue;
    ++checked;
    const auto& r = row.report;
    const double expected =
        2.0 / row.m * bioleak::BinaryEntropy(row.m * row.f_neg_tau);
    const double diff = std::abs(expected - r.empirical_conditional_entropy);
    worst = std::max(worst, diff);
    check.Expect(diff <= 0.01, "m=%zu F=%.3f: |%.6f - %.6f| > 0.01", row.m,
                 row.f_neg_tau, r.empirical_conditional_entropy, expected);
    if (row.m == 2) {
      worst_m2_mi = std::max(worst_m2_mi, r.empirical_leakage);
      check.Expect(r.empirical_leakage < 0.003, "m=2 F=%.3f: I(U;Z) = %.6f",
                   row.f_neg_tau, r.empirical_leakage);
    }
  }
  check.Expect(checked == 12, "expected 12 grid points, got %zu", checked);
  check.Note("%zu grid points, max |H diff| %.6f, max m=2 MI %.2e", checked, worst,
             worst_m2_mi);
}

double AnalyticNormalized(double p0, double ratio) {
  const double f = ratio * p0;
  return bioleak::NormalizedLeakage(bioleak::ExtremenessEntropy(f),
                                    bioleak::Thm3ExtremenessEntropyContinuum(p0, f));
}

void Criterion3(Check& check) {
  const std::vector<std::size_t> intervals = {2, 3, 4};
  for (std::size_t j : intervals) {
    const double p0 = 1.0 / j;
    for (double ratio : {0.5, 1.0}) {
      const double v = AnalyticNormalized(p0, ratio);
      check.Expect(v == 0.0, "p0=1/%zu ratio %.1f: analytic %.3g is not 0", j,
                   ratio, v);
    }
    const double near_zero = AnalyticNormalized(p0, 1e-3);
    check.Note("p0=1/%zu: analytic at ratio 1e-3 is %.6f", j, near_zero);
    check.Expect(near_zero > 0.9, "p0=1/%zu: analytic at ratio 1e-3 is %.6f <= 0.9",
                 j, near_zero);
  }
  const double a2 = AnalyticNormalized(0.5, 0.25);
  const double a3 = AnalyticNormalized(1.0 / 3, 0.25);
  const double a4 = AnalyticNormalized(0.25, 0.25);
  check.Expect(a2 > a3 && a3 > a4, "ordering at 0.25 violated: %.6f, %.6f, %.6f",
               a2, a3, a4);
  check.Note("ratio 0.25: p0=1/2 %.6f > p0=1/3 %.6f > p0=1/4 %.6f", a2, a3, a4);

  ExperimentConfig c = BaseConfig();
  c.samples = 1'000'000;
  c.bins = 64;
  c.fig5_intervals = intervals;
  const auto rows = bioleak::RunFig5(c);
  double worst = 0.0;
  std::size_t listed = 0;
  for (const auto& row : rows) {
    const double diff = std::abs(row.mc.normalized - row.analytic_normalized);
    worst = std::max(worst, diff);
    if (diff > 0.02 && listed++ < kMaxListed) {
      check.Expect(false, "p0=%.4f ratio %.4f: MC %.4f vs analytic %.4f",
                   row.p0, row.ratio, row.mc.normalized, row.analytic_normalized);
    }
  }
  check.Expect(listed <= kMaxListed, "%zu MC points outside +-0.02", listed);
  check.Note("MC: %zu points, max |MC - analytic| %.4f", rows.size(), worst);
}

void Criterion4(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<const char*, LinearCode>> codes = {
      {"hamming74", LinearCode::Hamming74()},
      {"repetition5", LinearCode::Repetition(5)}};
  for (const auto& [name, code] : codes) {
    for (std::size_t i = 0; i < code.n(); ++i) {
      const double v = bioleak::MarginalBitLeakage(code, i, 0.5);
      check.Expect(v == 0.0, "%s bit %zu: leakage %.3g", name, i, v);
    }
  }
  const double elapsed = Seconds(start);
  check.Expect(elapsed < 1.0, "runtime %.3f s exceeds 1 s", elapsed);
  check.Note("12 bit positions exactly 0, %.4f s", elapsed);
}

void Criterion5(Check& check) {
  const LinearCode code = LinearCode::Hamming74();
  const std::size_t n = code.n();
  std::uint64_t cases = 0, failures = 0;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    const bioleak::Bits psi_x = bioleak::UnpackBits(x, n);
    const auto sketch = bioleak::ComGen(code, psi_x);
    for (std::size_t i = 0; i < n; ++i) {
      ++cases;
      const auto psi_y = bioleak::UnpackBits(x ^ (1u << i), n);
      if (bioleak::ComReconstruct(code, psi_y, sketch) != psi_x) ++failures;
    }
  }
  check.Expect(cases == 896 && failures == 0, "%llu of %llu single flips failed",
               static_cast<unsigned long long>(failures),
               static_cast<unsigned long long>(cases));

  bool exhibited = false;
  const bioleak::Bits zero(n, 0);
  const auto sketch = bioleak::ComGen(code, zero);
  for (std::size_t i = 0; i < n && !exhibited; ++i) {
    for (std::size_t j = i + 1; j < n && !exhibited; ++j) {
      const auto psi_y = bioleak::UnpackBits((1u << i) | (1u << j), n);
      const auto rec = bioleak::ComReconstruct(code, psi_y, sketch);
      if (rec != zero) {
        exhibited = true;
        check.Note("double flip at positions %zu,%zu of the all-zero word "
                   "reconstructs to %07x",
                   i, j, static_cast<unsigned>(bioleak::PackBits(rec)));
      }
    }
  }
  check.Expect(exhibited, "no failing double flip found");
  check.Note("%llu single-flip cases, %llu failures",
             static_cast<unsigned long long>(cases),
             static_cast<unsigned long long>(failures));
}

void Criterion6(Check& check) {
  const LinearCode code = LinearCode::Repetition(5);
  const std::size_t n = code.n(), k = code.k(), r = code.row_weight();
  for (double eps : {0.05, 0.1, 0.2}) {
    const double exact = bioleak::ExactNoisyEnrollmentLeakage(code, eps);
    const double bound = bioleak::NoisyEnrollmentLeakageBound(n, k, r, eps);
    const double rel = std::abs(exact - bound) / bound;
    check.Note("eps %.2f: exact %.6f, bound %.6f, relative gap %.1f%%", eps, exact,
               bound, 100 * rel);
    check.Expect(rel <= 0.15, "eps %.2f: relative gap %.1f%% > 15%%", eps,
                 100 * rel);
  }
  const double exact = bioleak::ExactNoisyEnrollmentLeakage(code, 0.45);
  const double bound = bioleak::NoisyEnrollmentLeakageBound(n, k, r, 0.45);
  const double limit = 0.02 * static_cast<double>(n - k);
  check.Expect(exact < limit && bound < limit,
               "eps 0.45: exact %.6f, bound %.6f, limit %.3f", exact, bound, limit);
  check.Note("eps 0.45: exact %.6f, bound %.6f < %.3f (row weight %zu)", exact,
             bound, limit, r);
}

void Criterion7(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig c = BaseConfig();
  c.users = 5000;
  c.dim = 256;
  c.sigma_x2 = 0.5;
  c.tau_factor = 1.0;
  c.sparsity_ratios = {0.1, 0.5};
  c.sigma_z2_ratios = {0.4, 0.8};
  c.ambiguation_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto rows = bioleak::RunFig6(c);
  const double elapsed = Seconds(start);
  check.Expect(rows.size() == 20, "expected 20 rows, got %zu", rows.size());

  for (const auto& row : rows) {
    if (row.ratio == 1.0) {
      check.Note("alpha %.2f sigma_z2 %.1f: H0 at ratio 1 = %.4f", row.alpha_t,
                 row.sigma_z2_ratio, row.h0.rate);
      check.Expect(std::abs(row.h0.rate - 0.4333) <= 0.02,
                   "alpha %.2f sigma_z2 %.1f: H0 endpoint %.4f", row.alpha_t,
                   row.sigma_z2_ratio, row.h0.rate);
    }
    if (row.sigma_z2_ratio == 0.4) {
      check.Expect(row.h1.rate < row.h0.rate,
                   "alpha %.2f ratio %.2f: H1 %.4f >= H0 %.4f", row.alpha_t,
                   row.ratio, row.h1.rate, row.h0.rate);
    }
  }
  // Rows are ordered by ratio within each (alpha, sigma_z2) series.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    if (a.alpha_t != b.alpha_t || a.sigma_z2_ratio != b.sigma_z2_ratio) continue;
    const double slack = 3.0 * std::hypot(a.h0.std_error, b.h0.std_error);
    check.Expect(b.h0.rate + slack >= a.h0.rate,
                 "alpha %.2f sigma_z2 %.1f: H0 drops from %.4f to %.4f", a.alpha_t,
                 a.sigma_z2_ratio, a.h0.rate, b.h0.rate);
  }
  check.Expect(elapsed < 600.0, "runtime %.1f s exceeds 600 s", elapsed);
  check.Note("%zu rows, %.1f s", rows.size(), elapsed);
}

void Criterion8(Check& check) {
  ExperimentConfig c = BaseConfig();
  c.fig7_projections = {"identity", "pca"};
  c.ambiguation_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto rows = bioleak::RunFig7(c);

  auto find = [&](const std::string& projection, double ratio) {
    for (const auto& row : rows) {
      if (row.projection == projection && row.point.ratio == ratio) return &row;
    }
    return static_cast<const bioleak::Fig7Row*>(nullptr);
  };
  auto component = [](const bioleak::Fig7Row& row, bool binary) {
    const auto& report =
        binary ? row.point.binary_component : row.point.ternary_component;
    return report ? report->normalized : std::nan("");
  };

  const auto* id0 = find("identity", 0.0);
  const auto* id1 = find("identity", 1.0);
  check.Expect(id0 && id1, "identity endpoints missing");
  if (id0 && id1) {
    const double at0 = component(*id0, false);
    const double at1 = component(*id1, false);
    check.Expect(at0 > 0.98, "identity at ratio 0: %.6f", at0);
    check.Expect(at1 < 0.01, "identity at ratio 1: %.6f", at1);
    check.Note("identity: %.6f at ratio 0, %.2e at ratio 1", at0, at1);
  }
  for (double ratio : {0.25, 0.5, 0.75}) {
    const auto* id = find("identity", ratio);
    const auto* pca = find("pca", ratio);
    check.Expect(id && pca, "missing interior point %.2f", ratio);
    if (!id || !pca) continue;
    for (bool binary : {false, true}) {
      const double a = component(*id, binary);
      const double b = component(*pca, binary);
      check.Expect(b <= a / 10.0, "ratio %.2f %s: PCA %.3g > identity %.3g / 10",
                   ratio, binary ? "binary" : "ternary", b, a);
      check.Note("ratio %.2f %s: identity %.3g, PCA %.3g", ratio,
                 binary ? "binary" : "ternary", a, b);
    }
  }
  auto binary_le_ternary = [&](const bioleak::LeakageReport& bin,
                               const bioleak::LeakageReport& ter,
                               const std::string& what) {
    const double slack = std::hypot(bin.leakage_std_error, ter.leakage_std_error);
    check.Expect(bin.empirical_leakage <= ter.empirical_leakage + slack,
                 "%s: binary %.3g > ternary %.3g + %.2g", what.c_str(),
                 bin.empirical_leakage, ter.empirical_leakage, slack);
  };
  for (const auto& row : rows) {
    const std::string where =
        row.projection + " ratio " + bioleak::FormatReal(row.point.ratio);
    if (row.point.binary_component && row.point.ternary_component) {
      binary_le_ternary(*row.point.binary_component, *row.point.ternary_component,
                        where + " component");
    }
    binary_le_ternary(row.point.binary_reconstruction,
                      row.point.ternary_reconstruction, where + " reconstruction");
  }
}

void Criterion9(Check& check) {
  ExperimentConfig c = BaseConfig();
  c.attack_trials = 200;
  c.attack_l = 12;
  c.attack_n = 6;
  c.attack_st = 2;
  c.attack_sn = 3;
  const auto rows = bioleak::RunAttackDemo(c);
  std::size_t first = 0;
  for (const auto& row : rows) {
    if (row.true_rank == 1) ++first;
    check.Expect(row.candidates == 10, "trial %zu: %llu candidates", row.trial,
                 static_cast<unsigned long long>(row.candidates));
  }
  const double share = rows.empty() ? 0.0 : double(first) / double(rows.size());
  check.Expect(rows.size() == 200, "expected 200 trials, got %zu", rows.size());
  check.Expect(share >= 0.9, "true codeword ranked first in %zu of %zu trials "
               "(%.1f%% < 90%%)", first, rows.size(), 100 * share);
  check.Note("rank 1 in %zu of %zu trials (%.1f%%)", first, rows.size(),
             100 * share);
}

void Criterion10(Check& check) {
  for (const auto& name : bioleak::ExperimentNames()) {
    ExperimentConfig c = BaseConfig();
    c.threads = 1;
    const std::string single = bioleak::RunExperiment(name, c).ToString();
    const std::string single_again = bioleak::RunExperiment(name, c).ToString();
    c.threads = 4;
    const std::string multi = bioleak::RunExperiment(name, c).ToString();
    const std::string multi_again = bioleak::RunExperiment(name, c).ToString();
    check.Expect(single == single_again, "%s: single-threaded reruns differ",
                 name.c_str());
    check.Expect(multi == multi_again, "%s: multi-threaded reruns differ",
                 name.c_str());
    check.Expect(single == multi, "%s: 1 and 4 threads differ", name.c_str());
    check.Note("%s: %zu bytes", name.c_str(), single.size());
  }
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "sign-bit entropy matches closed form over J x m grid", Criterion1},
      {2, "extremeness-bit entropy matches closed form for m in {2,3,4,8}",
       Criterion2},
      {3, "continuum-helper leakage curves and Monte-Carlo tracking", Criterion3},
      {4, "code-offset marginal leakage is exactly zero for uniform inputs",
       Criterion4},
      {5, "Hamming(7,4) corrects every single flip; a double flip fails",
       Criterion5},
      {6, "noisy-enrollment bound within 15% of exact leakage", Criterion6},
      {7, "reconstruction error probabilities at desk scale", Criterion7},
      {8, "ambiguated sparse-code leakage at desk scale", Criterion8},
      {9, "enumeration attack ranks the true codeword first", Criterion9},
      {10, "experiments are byte-identical on rerun and across thread counts",
       Criterion10},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, "exception: %s", e.what());
    }
    const bool pass = check.failures().empty();
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL",
                criterion.number, criterion.title, Seconds(start));
    for (const auto& note : check.notes()) std::printf("    %s\n", note.c_str());
    for (const auto& f : check.failures()) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
