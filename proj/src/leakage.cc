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

#include "bioleak/leakage.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bioleak/core_math.h"
#include "bioleak/error.h"
#include "bioleak/parallel.h"

namespace bioleak {

double Thm1SignEntropyGivenHelper(std::size_t intervals, std::size_t m,
                                  double p_middle) {
  if (intervals < 2) throw Error(ErrorCode::kDomain, "J must be >= 2");
  if (m < 1) throw Error(ErrorCode::kDomain, "m must be >= 1");
  if (intervals % 2 == 0) return 1.0;
  if (!(p_middle > 0.0 && p_middle < 1.0)) {
    throw Error(ErrorCode::kDomain, "middle interval probability outside (0,1)");
  }
  const double h = BinaryEntropy((1.0 - p_middle) / 2.0);
  if (m % 2 == 0) return h;
  const double md = static_cast<double>(m);
  return (md - 1.0) / md * h + 1.0 / md;
}

double Thm2ExtremenessEntropyGivenHelper(std::size_t m, double f_neg_tau,
                                         double p0) {
  if (m < 2) {
    throw Error(ErrorCode::kPrecondition,
                "extremeness closed form needs m >= 2");
  }
  if (!(p0 > 0.0 && p0 <= 0.5)) {
    throw Error(ErrorCode::kPrecondition, "p0 outside (0, 1/2]");
  }
  const double md = static_cast<double>(m);
  if (!(f_neg_tau > 0.0 && f_neg_tau < p0 / md)) {
    throw Error(ErrorCode::kPrecondition, "F(-tau) outside (0, p0/m)");
  }
  return 2.0 / md * BinaryEntropy(md * f_neg_tau);
}

double Thm3ExtremenessEntropyContinuum(double p0, double f_neg_tau) {
  if (!(f_neg_tau > 0.0 && f_neg_tau <= p0 && p0 <= 0.5)) {
    throw Error(ErrorCode::kDomain, "need 0 < F(-tau) <= p0 <= 1/2");
  }
  if (f_neg_tau <= p0 / 2.0) {
    return 2.0 * f_neg_tau / p0 * BinaryEntropy(p0);
  }
  return (2.0 * p0 - 2.0 * f_neg_tau) / p0 * BinaryEntropy(p0) +
         (2.0 * f_neg_tau - p0) / p0 * BinaryEntropy(2.0 * p0);
}

double ExtremenessEntropy(double f_neg_tau) {
  if (!(f_neg_tau >= 0.0 && f_neg_tau <= 0.5)) {
    throw Error(ErrorCode::kDomain, "F(-tau) outside [0, 1/2]");
  }
  return BinaryEntropy(2.0 * f_neg_tau);
}

double NormalizedLeakage(double target_entropy, double conditional_entropy) {
  if (target_entropy <= 0.0) return 0.0;
  return (target_entropy - conditional_entropy) / target_entropy;
}

namespace {

void FillEmpirical(const JointCounts& counts, LeakageReport& r) {
  r.sample_count = counts.total();
  r.bins = counts.alphabet_b();
  r.target_entropy = EmpiricalEntropyA(counts);
  r.empirical_conditional_entropy = EmpiricalConditionalEntropy(counts);
  r.empirical_leakage = EmpiricalMutualInformation(counts);
  r.normalized =
      r.target_entropy > 0.0 ? r.empirical_leakage / r.target_entropy : 0.0;
  r.conditional_entropy_std_error = ConditionalEntropyStdError(counts);
  r.leakage_std_error = MutualInformationStdError(counts);
}

bool IsSymmetric(std::span<const double> probs) {
  const std::size_t j = probs.size();
  for (std::size_t s = 0; s < j; ++s) {
    if (std::abs(probs[s] - probs[j - 1 - s]) > 1e-12) return false;
  }
  return true;
}

std::string Format(const char* fmt, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace

LeakageReport MonteCarloHdsLeakage(const QuantizerSpec& spec,
                                   const HdsLeakageParams& params) {
  if (params.samples < kMinMonteCarloSamples) {
    throw Error(ErrorCode::kPrecondition, "need at least 10^4 samples");
  }
  const bool continuum = params.observable == HelperObservable::kContinuumBinned;
  if (continuum && params.bins < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 2 bins");
  }
  const bool sign = params.target == TargetBit::kSign;
  if (!sign && !(params.tau >= 0.0)) {
    throw Error(ErrorCode::kDomain, "tau must be >= 0");
  }
  const std::size_t j = spec.intervals();
  const std::size_t m = spec.subdivisions();
  const std::size_t alphabet = continuum ? params.bins : m;

  const std::uint64_t shards =
      (params.samples + kMonteCarloShard - 1) / kMonteCarloShard;
  std::vector<JointCounts> partial(shards, JointCounts(2, alphabet));
  ParallelChunks(
      static_cast<std::size_t>(shards), 1, params.threads,
      [&](std::size_t shard, std::size_t, std::size_t) {
        Rng rng = MakeStream(params.seed, StreamLabel::kMonteCarlo, {shard});
        const std::uint64_t begin = shard * kMonteCarloShard;
        const std::uint64_t end =
            std::min(params.samples, begin + kMonteCarloShard);
        const double bins = static_cast<double>(params.bins);
        JointCounts& counts = partial[shard];
        for (std::uint64_t i = begin; i < end; ++i) {
          const double x = spec.source().Sample(rng);
          const std::size_t a =
              sign ? (x < 0.0 ? 0 : 1) : (std::abs(x) > params.tau ? 1 : 0);
          std::size_t b;
          if (continuum) {
            const double q = GenContinuum(x, spec).quantile;
            b = std::min(static_cast<std::size_t>(q * bins), params.bins - 1);
          } else {
            b = Gen(x, spec).helper;
          }
          counts.Add(a, b);
        }
      });
  JointCounts counts(2, alphabet);
  for (const auto& c : partial) counts.Merge(c);

  LeakageReport r;
  FillEmpirical(counts, r);
  const auto probs = spec.probabilities();
  const bool symmetric = IsSymmetric(probs);
  if (sign) {
    r.scenario = Format("hds sign %s J=%zu m=%zu", continuum ? "continuum" : "discrete",
                        j, continuum ? params.bins : m);
    if (symmetric && (!continuum || params.bins % 2 == 0)) {
      const double p_mid = j % 2 ? probs[j / 2] : 0.5;
      // Binned continuum helper with an even bin count behaves like an even m.
      r.analytic_conditional_entropy =
          Thm1SignEntropyGivenHelper(j, continuum ? params.bins : m, p_mid);
      r.analytic_target_entropy = 1.0;
      r.in_regime = true;
    }
  } else {
    const double f = spec.source().Cdf(-params.tau);
    const double p0 = probs[0];
    r.scenario = Format("hds extremeness %s J=%zu m=%zu F(-tau)=%.6g",
                        continuum ? "continuum" : "discrete", j,
                        continuum ? params.bins : m, f);
    r.analytic_target_entropy = ExtremenessEntropy(f);
    if (symmetric && p0 <= 0.5 && f > 0.0) {
      if (continuum && f <= p0) {
        r.analytic_conditional_entropy = Thm3ExtremenessEntropyContinuum(p0, f);
        r.in_regime = true;
      } else if (!continuum && m >= 2 && f < p0 / static_cast<double>(m)) {
        r.analytic_conditional_entropy =
            Thm2ExtremenessEntropyGivenHelper(m, f, p0);
        r.in_regime = true;
      }
    }
  }
  if (r.analytic_conditional_entropy && r.analytic_target_entropy) {
    r.analytic_normalized = NormalizedLeakage(*r.analytic_target_entropy,
                                              *r.analytic_conditional_entropy);
  }
  return r;
}

std::vector<ScaLeakagePoint> ScaLeakageCurve(const Cohort& cohort, double tau,
                                             const std::vector<double>& ratios,
                                             unsigned threads) {
  if (cohort.users() == 0) throw Error(ErrorCode::kEmptySample, "empty cohort");
  if (!(tau >= 0.0)) throw Error(ErrorCode::kDomain, "tau must be >= 0");
  for (double r : ratios) AmbiguationCount(1, 0, r);  // validates the range

  const Projection& proj = cohort.projection();
  const std::size_t n = cohort.dim();
  const std::size_t l = proj.output_dim();
  const bool component = l == n;
  const std::size_t nr = ratios.size();
  constexpr std::size_t kUsersPerChunk = 64;
  const std::size_t chunks = (cohort.users() + kUsersPerChunk - 1) / kUsersPerChunk;

  struct Partial {
    std::vector<JointCounts> ternary, binary, ternary_rec, binary_rec;
    std::vector<std::uint64_t> noise;
  };
  std::vector<Partial> partial(chunks);

  ParallelChunks(
      cohort.users(), kUsersPerChunk, threads,
      [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Partial& p = partial[chunk];
        p.ternary.assign(nr, JointCounts(2, 3));
        p.binary.assign(nr, JointCounts(2, 2));
        p.ternary_rec.assign(nr, JointCounts(2, 2));
        p.binary_rec.assign(nr, JointCounts(2, 2));
        p.noise.assign(nr, 0);
        std::vector<std::uint8_t> z(n);
        std::vector<std::int8_t> b(l);
        std::vector<double> rec(n);
        for (std::size_t c = begin; c < end; ++c) {
          const auto x = cohort.vector(c);
          for (std::size_t i = 0; i < n; ++i) z[i] = std::abs(x[i]) > tau;
          const TernaryCodeword& v = cohort.clean(c);
          for (std::size_t r = 0; r < nr; ++r) {
            const std::size_t s_n = AmbiguationCount(l, v.sparsity(), ratios[r]);
            p.noise[r] += s_n;
            const TernaryCodeword u = cohort.plan(c).Apply(v, s_n);
            for (std::size_t i = 0; i < l; ++i) b[i] = u[i] != 0;
            if (component) {
              for (std::size_t i = 0; i < n; ++i) {
                p.ternary[r].Add(z[i], static_cast<std::size_t>(u[i] + 1));
                p.binary[r].Add(z[i], static_cast<std::size_t>(b[i]));
              }
            }
            proj.BackProject(u.values(), rec);
            for (std::size_t i = 0; i < n; ++i) {
              p.ternary_rec[r].Add(z[i], std::abs(rec[i]) > tau);
            }
            proj.BackProject(b, rec);
            for (std::size_t i = 0; i < n; ++i) {
              p.binary_rec[r].Add(z[i], std::abs(rec[i]) > tau);
            }
          }
        }
      });

  std::vector<ScaLeakagePoint> out(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    JointCounts ternary(2, 3), binary(2, 2), ternary_rec(2, 2), binary_rec(2, 2);
    std::uint64_t noise = 0;
    for (const Partial& p : partial) {
      ternary.Merge(p.ternary[r]);
      binary.Merge(p.binary[r]);
      ternary_rec.Merge(p.ternary_rec[r]);
      binary_rec.Merge(p.binary_rec[r]);
      noise += p.noise[r];
    }
    ScaLeakagePoint& pt = out[r];
    pt.ratio = ratios[r];
    pt.mean_noise_count =
        static_cast<double>(noise) / static_cast<double>(cohort.users());
    const char* kind = ProjectionKindName(proj.kind());
    auto report = [&](const JointCounts& counts, const char* what) {
      LeakageReport rep;
      FillEmpirical(counts, rep);
      rep.scenario = Format("sca %s %s ratio=%.6g", kind, what, ratios[r]);
      return rep;
    };
    if (component) {
      pt.ternary_component = report(ternary, "ternary component");
      pt.binary_component = report(binary, "binary component");
    }
    pt.ternary_reconstruction = report(ternary_rec, "ternary reconstruction");
    pt.binary_reconstruction = report(binary_rec, "binary reconstruction");
  }
  return out;
}

}  // namespace bioleak
