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

#include "bioleak/core_math.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bioleak/error.h"

namespace bioleak {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kPrecondition: return "precondition violated";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kEmptySample: return "empty sample";
    case ErrorCode::kSizeLimit: return "size limit exceeded";
    case ErrorCode::kBudgetExceeded: return "budget exceeded";
    case ErrorCode::kRankDeficient: return "rank deficient";
    case ErrorCode::kUnknownUser: return "unknown user";
    case ErrorCode::kDuplicateUser: return "duplicate user";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kIo: return "I/O error";
  }
  return "unknown error";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// p log2(1/p) with the 0 log(1/0) = 0 convention.
double SelfInformationTerm(double p) {
  return p > 0.0 ? -p * std::log2(p) : 0.0;
}

double StandardNormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Lower-half standard normal quantile, 0 < p <= 0.5.
double LowerStandardNormalQuantile(double p) {
  // Abramowitz & Stegun 26.2.23 start (|error| < 4.5e-4), then Newton on
  // the erfc-based cdf.
  const double t = std::sqrt(-2.0 * std::log(p));
  double x = -(t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                       (1.0 + 1.432788 * t + 0.189269 * t * t +
                        0.001308 * t * t * t));
  for (int iter = 0; iter < 100; ++iter) {
    const double density = StandardNormalPdf(x);
    if (density == 0.0) break;
    const double step = (StandardNormalCdf(x) - p) / density;
    x -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

double BinaryEntropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kDomain,
                "binary entropy argument outside [0,1]: " + std::to_string(p));
  }
  return SelfInformationTerm(p) + SelfInformationTerm(1.0 - p);
}

double Entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) h += SelfInformationTerm(p);
  return h;
}

double StandardNormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

SymmetricDistribution GaussianDistribution(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kDomain, "gaussian sigma must be positive");
  }
  return SymmetricDistribution(SymmetricDistribution::Family::kGaussian,
                               sigma);
}

SymmetricDistribution LaplaceDistribution(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kDomain, "laplace sigma must be positive");
  }
  return SymmetricDistribution(SymmetricDistribution::Family::kLaplace,
                               sigma);
}

double SymmetricDistribution::Pdf(double x) const {
  switch (family_) {
    case Family::kGaussian:
      return StandardNormalPdf(x / sigma_) / sigma_;
    case Family::kLaplace: {
      const double b = sigma_ / std::numbers::sqrt2;
      return std::exp(-std::abs(x) / b) / (2.0 * b);
    }
  }
  return 0.0;
}

double SymmetricDistribution::Cdf(double x) const {
  switch (family_) {
    case Family::kGaussian:
      return StandardNormalCdf(x / sigma_);
    case Family::kLaplace: {
      if (x == 0.0) return 0.5;
      const double b = sigma_ / std::numbers::sqrt2;
      return x < 0.0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
    }
  }
  return 0.0;
}

double SymmetricDistribution::Quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kDomain, "quantile argument outside [0,1]");
  }
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  if (p == 0.5) return 0.0;
  switch (family_) {
    case Family::kGaussian:
      // 1 - p is exact for p in [0.5, 1].
      return p < 0.5 ? sigma_ * LowerStandardNormalQuantile(p)
                     : -sigma_ * LowerStandardNormalQuantile(1.0 - p);
    case Family::kLaplace: {
      const double b = sigma_ / std::numbers::sqrt2;
      return p < 0.5 ? b * std::log(2.0 * p) : -b * std::log(2.0 * (1.0 - p));
    }
  }
  return 0.0;
}

double SymmetricDistribution::Sample(Rng& rng) const {
  switch (family_) {
    case Family::kGaussian:
      return std::normal_distribution<double>(0.0, sigma_)(rng);
    case Family::kLaplace: {
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      double u = 0.0;
      do u = uniform(rng); while (u == 0.0);
      return Quantile(u);
    }
  }
  return 0.0;
}

JointCounts::JointCounts(std::size_t alphabet_a, std::size_t alphabet_b)
    : alphabet_a_(alphabet_a),
      alphabet_b_(alphabet_b),
      counts_(alphabet_a * alphabet_b, 0) {
  if (alphabet_a == 0 || alphabet_b == 0) {
    throw Error(ErrorCode::kInvalidArgument, "alphabets must be non-empty");
  }
}

void JointCounts::AddChecked(std::size_t a, std::size_t b) {
  if (a >= alphabet_a_ || b >= alphabet_b_) {
    throw Error(ErrorCode::kInvalidArgument, "symbol outside alphabet");
  }
  Add(a, b);
}

void JointCounts::Merge(const JointCounts& other) {
  if (other.alphabet_a_ != alphabet_a_ || other.alphabet_b_ != alphabet_b_) {
    throw Error(ErrorCode::kLengthMismatch, "merging mismatched alphabets");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

std::vector<double> JointCounts::Probabilities() const {
  if (total_ == 0) throw Error(ErrorCode::kEmptySample, "no samples");
  std::vector<double> p(counts_.size());
  const double n = static_cast<double>(total_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    p[i] = static_cast<double>(counts_[i]) / n;
  }
  return p;
}

JointCounts DiscreteJointSample::ToCounts() const {
  if (pairs.empty()) throw Error(ErrorCode::kEmptySample, "no samples");
  JointCounts counts(alphabet_a, alphabet_b);
  for (const auto& [a, b] : pairs) counts.AddChecked(a, b);
  return counts;
}

namespace {

std::vector<double> MarginalA(std::span<const double> joint, std::size_t size_a,
                              std::size_t size_b) {
  std::vector<double> m(size_a, 0.0);
  for (std::size_t a = 0; a < size_a; ++a)
    for (std::size_t b = 0; b < size_b; ++b) m[a] += joint[a * size_b + b];
  return m;
}

std::vector<double> MarginalB(std::span<const double> joint, std::size_t size_a,
                              std::size_t size_b) {
  std::vector<double> m(size_b, 0.0);
  for (std::size_t a = 0; a < size_a; ++a)
    for (std::size_t b = 0; b < size_b; ++b) m[b] += joint[a * size_b + b];
  return m;
}

void CheckTable(std::span<const double> joint, std::size_t size_a,
                std::size_t size_b) {
  if (joint.size() != size_a * size_b) {
    throw Error(ErrorCode::kLengthMismatch, "joint table size mismatch");
  }
}

}  // namespace

double MarginalEntropyA(std::span<const double> joint, std::size_t size_a,
                        std::size_t size_b) {
  CheckTable(joint, size_a, size_b);
  return Entropy(MarginalA(joint, size_a, size_b));
}

double MarginalEntropyB(std::span<const double> joint, std::size_t size_a,
                        std::size_t size_b) {
  CheckTable(joint, size_a, size_b);
  return Entropy(MarginalB(joint, size_a, size_b));
}

double ConditionalEntropyAGivenB(std::span<const double> joint,
                                 std::size_t size_a, std::size_t size_b) {
  CheckTable(joint, size_a, size_b);
  const std::vector<double> pb = MarginalB(joint, size_a, size_b);
  double h = 0.0;
  for (std::size_t a = 0; a < size_a; ++a) {
    for (std::size_t b = 0; b < size_b; ++b) {
      const double pab = joint[a * size_b + b];
      if (pab > 0.0) h += pab * std::log2(pb[b] / pab);
    }
  }
  return h;
}

double MutualInformation(std::span<const double> joint, std::size_t size_a,
                         std::size_t size_b) {
  const double mi = MarginalEntropyA(joint, size_a, size_b) -
                    ConditionalEntropyAGivenB(joint, size_a, size_b);
  return mi > 0.0 ? mi : 0.0;
}

// The empirical estimators work on integer marginals so that a degenerate
// marginal gives exactly zero entropy rather than rounding residue.
double EmpiricalEntropyA(const JointCounts& counts) {
  if (counts.total() == 0) throw Error(ErrorCode::kEmptySample, "no samples");
  const double n = static_cast<double>(counts.total());
  double h = 0.0;
  for (std::size_t a = 0; a < counts.alphabet_a(); ++a) {
    std::uint64_t ca = 0;
    for (std::size_t b = 0; b < counts.alphabet_b(); ++b) ca += counts.count(a, b);
    if (ca > 0) h += static_cast<double>(ca) / n * std::log2(n / static_cast<double>(ca));
  }
  return h;
}

double EmpiricalConditionalEntropy(const JointCounts& counts) {
  if (counts.total() == 0) throw Error(ErrorCode::kEmptySample, "no samples");
  const double n = static_cast<double>(counts.total());
  double h = 0.0;
  for (std::size_t b = 0; b < counts.alphabet_b(); ++b) {
    std::uint64_t cb = 0;
    for (std::size_t a = 0; a < counts.alphabet_a(); ++a) cb += counts.count(a, b);
    for (std::size_t a = 0; a < counts.alphabet_a(); ++a) {
      const std::uint64_t cab = counts.count(a, b);
      if (cab > 0 && cab < cb) {
        h += static_cast<double>(cab) / n *
             std::log2(static_cast<double>(cb) / static_cast<double>(cab));
      }
    }
  }
  return h;
}

double EmpiricalMutualInformation(const JointCounts& counts) {
  const double mi = EmpiricalEntropyA(counts) - EmpiricalConditionalEntropy(counts);
  return mi > 0.0 ? mi : 0.0;
}

double EmpiricalConditionalEntropy(const DiscreteJointSample& samples) {
  return EmpiricalConditionalEntropy(samples.ToCounts());
}

double EmpiricalMutualInformation(const DiscreteJointSample& samples) {
  return EmpiricalMutualInformation(samples.ToCounts());
}

double MutualInformationStdError(const JointCounts& counts) {
  const auto p = counts.Probabilities();
  const std::size_t na = counts.alphabet_a(), nb = counts.alphabet_b();
  const auto pa = MarginalA(p, na, nb);
  const auto pb = MarginalB(p, na, nb);
  double first = 0.0, second = 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      const double pab = p[a * nb + b];
      if (pab <= 0.0) continue;
      const double l = std::log2(pab / (pa[a] * pb[b]));
      first += pab * l;
      second += pab * l * l;
    }
  }
  const double var =
      (second - first * first) / static_cast<double>(counts.total());
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

double ConditionalEntropyStdError(const JointCounts& counts) {
  const auto p = counts.Probabilities();
  const std::size_t na = counts.alphabet_a(), nb = counts.alphabet_b();
  const auto pb = MarginalB(p, na, nb);
  double first = 0.0, second = 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      const double pab = p[a * nb + b];
      if (pab <= 0.0) continue;
      const double l = std::log2(pb[b] / pab);
      first += pab * l;
      second += pab * l * l;
    }
  }
  const double var =
      (second - first * first) / static_cast<double>(counts.total());
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace bioleak
