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

#include "bioleak/zl_hds.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bioleak/error.h"

namespace bioleak {

QuantizerSpec::QuantizerSpec(SymmetricDistribution source,
                             std::vector<double> probs, std::size_t m)
    : source_(source), probs_(std::move(probs)), m_(m) {
  const std::size_t j = probs_.size();
  cumulative_.resize(j);
  boundaries_.resize(j);
  double acc = 0.0;
  for (std::size_t s = 0; s < j; ++s) {
    cumulative_[s] = acc;
    boundaries_[s] =
        s == 0 ? -std::numeric_limits<double>::infinity() : source_.Quantile(acc);
    acc += probs_[s];
  }
  representatives_.resize(j * m_);
  for (std::size_t s = 0; s < j; ++s) {
    for (std::size_t u = 0; u < m_; ++u) {
      const double f = cumulative_[s] +
                       (static_cast<double>(u) + 0.5) * probs_[s] /
                           static_cast<double>(m_);
      representatives_[s * m_ + u] = source_.Quantile(f);
    }
  }
}

QuantizerSpec MakeQuantizer(const SymmetricDistribution& source,
                            std::span<const double> interval_probs,
                            std::size_t m) {
  if (interval_probs.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two intervals");
  }
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  double sum = 0.0;
  for (double p : interval_probs) {
    if (!(p > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "interval probabilities must be positive");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument,
                "interval probabilities must sum to 1");
  }
  return QuantizerSpec(source,
                       std::vector<double>(interval_probs.begin(),
                                           interval_probs.end()),
                       m);
}

QuantizerSpec MakeEquiprobableQuantizer(const SymmetricDistribution& source,
                                        std::size_t intervals, std::size_t m) {
  if (intervals < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two intervals");
  }
  std::vector<double> probs(intervals, 1.0 / static_cast<double>(intervals));
  // Absorb the rounding residue so the sum is 1 to the last bit.
  double rest = 1.0;
  for (std::size_t s = 0; s + 1 < intervals; ++s) rest -= probs[s];
  probs.back() = rest;
  return MakeQuantizer(source, probs, m);
}

std::size_t SecretIndex(double x, const QuantizerSpec& spec) {
  const auto q = spec.boundaries();
  const auto it = std::upper_bound(q.begin(), q.end(), x);
  return static_cast<std::size_t>(it - q.begin()) - 1;
}

HelperPair Gen(double x, const QuantizerSpec& spec) {
  const std::size_t s = SecretIndex(x, spec);
  const double m = static_cast<double>(spec.subdivisions());
  const double offset = spec.source().Cdf(x) - spec.CumulativeAt(s);
  const double raw = std::floor(m * offset / spec.probabilities()[s]);
  // Clamp covers F(x) - F(q_s) = p_s and rounding at the left boundary.
  const double u = std::clamp(raw, 0.0, m - 1.0);
  return {s, static_cast<std::size_t>(u)};
}

ContinuumHelperPair GenContinuum(double x, const QuantizerSpec& spec) {
  const std::size_t s = SecretIndex(x, spec);
  const double offset = spec.source().Cdf(x) - spec.CumulativeAt(s);
  const double q = std::clamp(offset / spec.probabilities()[s], 0.0,
                              std::nextafter(1.0, 0.0));
  return {s, q};
}

std::size_t ReconstructSecret(double y, std::size_t helper,
                              const QuantizerSpec& spec) {
  if (helper >= spec.subdivisions()) {
    throw Error(ErrorCode::kInvalidArgument, "helper data out of range");
  }
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < spec.intervals(); ++s) {
    const double d = std::abs(y - spec.Representative(s, helper));
    if (d < best_distance) {
      best_distance = d;
      best = s;
    }
  }
  return best;
}

std::pair<double, double> SampleNoisyPair(const QuantizerSpec& spec,
                                          double sigma_noise, Rng& rng) {
  if (!(sigma_noise >= 0.0)) {
    throw Error(ErrorCode::kDomain, "noise sigma must be >= 0");
  }
  const double x = spec.source().Sample(rng);
  if (sigma_noise == 0.0) return {x, x};
  return {x, x + std::normal_distribution<double>(0.0, sigma_noise)(rng)};
}

}  // namespace bioleak
