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

// Closed-form leakage of the zero-leakage quantizer about the sign bit V and
// the extremeness bit Z, plus Monte-Carlo estimators for the quantizer and
// for ambiguated sparse ternary templates.

#ifndef BIOLEAK_LEAKAGE_H_
#define BIOLEAK_LEAKAGE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bioleak/sparse_sca.h"
#include "bioleak/zl_hds.h"

namespace bioleak {

struct LeakageReport {
  std::string scenario;
  bool in_regime = false;  // an analytic value applies
  std::optional<double> analytic_conditional_entropy;
  std::optional<double> analytic_target_entropy;
  std::optional<double> analytic_normalized;
  double target_entropy = 0.0;                 // empirical H(bit)
  double empirical_conditional_entropy = 0.0;  // H(bit | observable)
  double empirical_leakage = 0.0;              // I(bit; observable)
  double normalized = 0.0;                     // leakage / H(bit), 0 if H = 0
  double conditional_entropy_std_error = 0.0;
  double leakage_std_error = 0.0;
  std::uint64_t sample_count = 0;
  std::size_t bins = 0;  // observable alphabet size
};

// H(V | U). J even gives 1; for odd J, p_t is the probability of the middle
// interval. Throws kDomain for J < 2, m < 1 or p_t outside (0, 1) when J
// is odd.
double Thm1SignEntropyGivenHelper(std::size_t intervals, std::size_t m,
                                  double p_middle);

// H(Z | U) = (2/m) h(m F(-tau)). Requires m >= 2, 0 < p0 <= 1/2 and
// 0 < F(-tau) < p0/m, else kPrecondition.
double Thm2ExtremenessEntropyGivenHelper(std::size_t m, double f_neg_tau,
                                         double p0);

// H(Z | U~) for continuum helper data. Requires 0 < F(-tau) <= p0 <= 1/2,
// else kDomain.
double Thm3ExtremenessEntropyContinuum(double p0, double f_neg_tau);

// H(Z) = h(2 F(-tau)) for a symmetric source.
double ExtremenessEntropy(double f_neg_tau);

// Normalized leakage (H - H_cond) / H, 0 when H = 0.
double NormalizedLeakage(double target_entropy, double conditional_entropy);

enum class TargetBit { kSign, kExtremeness };
enum class HelperObservable { kDiscrete, kContinuumBinned };

struct HdsLeakageParams {
  TargetBit target = TargetBit::kSign;
  double tau = 0.0;  // extremeness threshold
  HelperObservable observable = HelperObservable::kDiscrete;
  std::size_t bins = 64;  // continuum u~ bins
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

inline constexpr std::uint64_t kMonteCarloShard = 65536;
inline constexpr std::uint64_t kMinMonteCarloSamples = 10'000;

// Samples x from the quantizer's source and estimates H(bit | helper). The
// analytic fields are filled when a closed form covers the parameters;
// otherwise in_regime is false and the report is still returned. Throws
// kPrecondition for fewer than 10^4 samples.
LeakageReport MonteCarloHdsLeakage(const QuantizerSpec& spec,
                                   const HdsLeakageParams& params);

struct ScaLeakagePoint {
  double ratio = 0.0;
  double mean_noise_count = 0.0;  // average S_n over users
  // Observable is the stored symbol u_n (ternary) or b_n = |u_n| (binary).
  // Only defined when L = N.
  std::optional<LeakageReport> ternary_component;
  std::optional<LeakageReport> binary_component;
  // Observable is sbc_tau((W^dagger u)_n), resp. sbc_tau((W^dagger b)_n).
  LeakageReport ternary_reconstruction;
  LeakageReport binary_reconstruction;
};

// I(observable; Z) pooled over users and components, Z = sbc_tau(x_n).
// The cohort's clean codewords are the enrolment codes; each ratio applies
// the first S_n positions of the cohort's ambiguation plans.
std::vector<ScaLeakagePoint> ScaLeakageCurve(const Cohort& cohort, double tau,
                                             const std::vector<double>& ratios,
                                             unsigned threads = 1);

}  // namespace bioleak

#endif  // BIOLEAK_LEAKAGE_H_
