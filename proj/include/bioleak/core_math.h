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

// Distributions, entropies and plug-in mutual information. All logarithms
// are base 2; entropies are in bits with the convention 0 log(1/0) = 0.

#ifndef BIOLEAK_CORE_MATH_H_
#define BIOLEAK_CORE_MATH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bioleak/random.h"

namespace bioleak {

// h(p) = p log(1/p) + (1-p) log(1/(1-p)). Throws kDomain outside [0, 1].
double BinaryEntropy(double p);

// Shannon entropy of a probability vector. Entries must be >= 0; they are
// not renormalized.
double Entropy(std::span<const double> probabilities);

// Standard normal cdf, Phi(x), accurate in both tails.
double StandardNormalCdf(double x);

// A zero-mean distribution with an even density. Immutable value type.
class SymmetricDistribution {
 public:
  enum class Family { kGaussian, kLaplace };

  Family family() const { return family_; }
  // Standard deviation.
  double sigma() const { return sigma_; }
  double variance() const { return sigma_ * sigma_; }

  double Pdf(double x) const;
  double Cdf(double x) const;
  // Inverse of Cdf on (0, 1); returns -inf / +inf at 0 / 1.
  double Quantile(double p) const;
  double Sample(Rng& rng) const;

 private:
  friend SymmetricDistribution GaussianDistribution(double sigma);
  friend SymmetricDistribution LaplaceDistribution(double sigma);
  SymmetricDistribution(Family family, double sigma)
      : family_(family), sigma_(sigma) {}

  Family family_;
  double sigma_;
};

// Zero-mean Gaussian with standard deviation sigma. Throws kDomain when
// sigma <= 0.
SymmetricDistribution GaussianDistribution(double sigma);
// Zero-mean Laplace with standard deviation sigma (scale sigma/sqrt 2).
SymmetricDistribution LaplaceDistribution(double sigma);

// Joint frequency table over a finite alphabet pair. Merging is plain
// count addition, so shards can be reduced in any order.
class JointCounts {
 public:
  JointCounts(std::size_t alphabet_a, std::size_t alphabet_b);

  std::size_t alphabet_a() const { return alphabet_a_; }
  std::size_t alphabet_b() const { return alphabet_b_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t count(std::size_t a, std::size_t b) const {
    return counts_[a * alphabet_b_ + b];
  }

  void Add(std::size_t a, std::size_t b, std::uint64_t times = 1) {
    counts_[a * alphabet_b_ + b] += times;
    total_ += times;
  }
  // Bounds-checked Add.
  void AddChecked(std::size_t a, std::size_t b);
  void Merge(const JointCounts& other);

  // Empirical joint distribution, row-major over (a, b).
  std::vector<double> Probabilities() const;

 private:
  std::size_t alphabet_a_;
  std::size_t alphabet_b_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Explicit list of symbol pairs; converted to JointCounts for estimation.
struct DiscreteJointSample {
  std::size_t alphabet_a = 0;
  std::size_t alphabet_b = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

  JointCounts ToCounts() const;
};

// Information quantities of an exact joint probability table (row-major,
// size_a x size_b). MutualInformation is computed as H(A) - H(A|B) and
// clamped at 0 against rounding.
double MarginalEntropyA(std::span<const double> joint, std::size_t size_a,
                        std::size_t size_b);
double MarginalEntropyB(std::span<const double> joint, std::size_t size_a,
                        std::size_t size_b);
double ConditionalEntropyAGivenB(std::span<const double> joint,
                                 std::size_t size_a, std::size_t size_b);
double MutualInformation(std::span<const double> joint, std::size_t size_a,
                         std::size_t size_b);

// Plug-in (maximum-likelihood histogram) estimators. No bias correction.
// Throw kEmptySample when there are no samples.
double EmpiricalEntropyA(const JointCounts& counts);
double EmpiricalConditionalEntropy(const JointCounts& counts);  // H(A|B)
double EmpiricalMutualInformation(const JointCounts& counts);
double EmpiricalConditionalEntropy(const DiscreteJointSample& samples);
double EmpiricalMutualInformation(const DiscreteJointSample& samples);

// Delta-method standard errors of the plug-in estimates, in bits.
double MutualInformationStdError(const JointCounts& counts);
double ConditionalEntropyStdError(const JointCounts& counts);

}  // namespace bioleak

#endif  // BIOLEAK_CORE_MATH_H_
