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

// Zero-leakage quantizing helper data system for a scalar source.
//
// The real line is cut into J intervals with probabilities p_0..p_{J-1};
// interval s starts at q_s (q_0 = -inf). Each interval is split into m
// equiprobable sub-intervals and the helper data is the sub-interval index,
// so U is uniform within every interval and carries no information on S.

#ifndef BIOLEAK_ZL_HDS_H_
#define BIOLEAK_ZL_HDS_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bioleak/core_math.h"
#include "bioleak/random.h"

namespace bioleak {

class QuantizerSpec {
 public:
  std::size_t intervals() const { return probs_.size(); }  // J
  std::size_t subdivisions() const { return m_; }           // m
  const SymmetricDistribution& source() const { return source_; }
  std::span<const double> probabilities() const { return probs_; }
  // Left boundaries; boundaries()[0] is -inf.
  std::span<const double> boundaries() const { return boundaries_; }
  // F(q_s) = sum_{i<s} p_i.
  double CumulativeAt(std::size_t s) const { return cumulative_[s]; }
  // Sub-interval centre quantile(F(q_s) + (u + 1/2) p_s / m).
  double Representative(std::size_t s, std::size_t u) const {
    return representatives_[s * m_ + u];
  }

 private:
  friend QuantizerSpec MakeQuantizer(const SymmetricDistribution&,
                                     std::span<const double>, std::size_t);
  QuantizerSpec(SymmetricDistribution source, std::vector<double> probs,
                std::size_t m);

  SymmetricDistribution source_;
  std::vector<double> probs_;
  std::size_t m_;
  std::vector<double> cumulative_;
  std::vector<double> boundaries_;
  std::vector<double> representatives_;
};

// Throws kInvalidArgument when J < 2, m < 1, a probability is not positive,
// or the probabilities do not sum to 1 within 1e-12.
QuantizerSpec MakeQuantizer(const SymmetricDistribution& source,
                            std::span<const double> interval_probs,
                            std::size_t m);
QuantizerSpec MakeEquiprobableQuantizer(const SymmetricDistribution& source,
                                        std::size_t intervals, std::size_t m);

struct HelperPair {
  std::size_t secret = 0;  // s in [0, J)
  std::size_t helper = 0;  // u in [0, m)
};

struct ContinuumHelperPair {
  std::size_t secret = 0;  // s in [0, J)
  double quantile = 0.0;   // u~ in [0, 1)
};

// s = max{t | q_t <= x}.
std::size_t SecretIndex(double x, const QuantizerSpec& spec);

HelperPair Gen(double x, const QuantizerSpec& spec);
ContinuumHelperPair GenContinuum(double x, const QuantizerSpec& spec);

// Nearest sub-interval representative among x^(s, u), s = 0..J-1; ties go
// to the smaller s. Throws kInvalidArgument when u >= m.
std::size_t ReconstructSecret(double y, std::size_t helper,
                              const QuantizerSpec& spec);

// x from the source, y = x + N(0, sigma_noise^2).
std::pair<double, double> SampleNoisyPair(const QuantizerSpec& spec,
                                          double sigma_noise, Rng& rng);

}  // namespace bioleak

#endif  // BIOLEAK_ZL_HDS_H_
