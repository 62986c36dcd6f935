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

// Reference computations used only by tests. Nothing here calls into the
// library, so expected values do not share code paths with what they check.

#ifndef BIOLEAK_TESTS_ORACLES_H_
#define BIOLEAK_TESTS_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace bioleak::oracle {

// erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)).
// All terms are positive, so the series is stable for moderate |x|.
inline long double Erf(long double x) {
  if (x < 0) return -Erf(-x);
  long double term = x;
  long double sum = x;
  for (int n = 1; n < 2000; ++n) {
    term *= 2.0L * x * x / (2.0L * n + 1.0L);
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  const long double pi = 3.141592653589793238462643383279502884L;
  return 2.0L / std::sqrt(pi) * std::exp(-x * x) * sum;
}

// Phi(-t) = phi(t) / (t + 1/(t + 2/(t + 3/(t + ...)))), evaluated from the
// tail of the fraction. Used for t >= 3, where 1 - erf cancels.
inline long double UpperTail(long double t) {
  long double frac = t;
  for (int k = 4000; k >= 1; --k) frac = t + k / frac;
  const long double pi = 3.141592653589793238462643383279502884L;
  return std::exp(-0.5L * t * t) / std::sqrt(2.0L * pi) / frac;
}

inline double NormalCdf(double x, double sigma = 1.0) {
  const long double z = static_cast<long double>(x) / sigma;
  if (z <= -3.0L) return static_cast<double>(UpperTail(-z));
  if (z >= 3.0L) return static_cast<double>(1.0L - UpperTail(z));
  return static_cast<double>(0.5L * (1.0L + Erf(z / std::sqrt(2.0L))));
}

// Root of cdf(x) = p by bisection on [lo, hi].
inline double BisectQuantile(const std::function<double(double)>& cdf, double p,
                             double lo = -40.0, double hi = 40.0) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double H2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) / std::log(2.0) -
         (1 - p) * std::log(1 - p) / std::log(2.0);
}

// Parity of the bitwise AND of a GF(2) row mask and a word.
inline int DotGf2(std::uint32_t row, std::uint32_t word) {
  std::uint32_t v = row & word;
  int parity = 0;
  while (v) {
    parity ^= 1;
    v &= v - 1;
  }
  return parity;
}

// Syndrome as a bit mask, bit i = row i.
inline std::uint32_t Syndrome(const std::vector<std::uint32_t>& rows,
                              std::uint32_t word) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s |= static_cast<std::uint32_t>(DotGf2(rows[i], word)) << i;
  }
  return s;
}

inline int Weight(std::uint32_t w) {
  int c = 0;
  for (; w; w &= w - 1) ++c;
  return c;
}

// Minimum weight among all words with the given syndrome, by scanning 2^n.
inline int MinCosetWeight(const std::vector<std::uint32_t>& rows, std::size_t n,
                          std::uint32_t syndrome) {
  int best = 1 << 30;
  for (std::uint32_t w = 0; w < (1u << n); ++w) {
    if (Syndrome(rows, w) == syndrome) best = std::min(best, Weight(w));
  }
  return best;
}

// I(B_i ; Syn B) for iid Bernoulli(p1) bits, from the full joint table.
inline double MarginalLeakage(const std::vector<std::uint32_t>& rows,
                              std::size_t n, std::size_t bit, double p1) {
  const std::size_t syndromes = std::size_t{1} << rows.size();
  std::vector<double> joint(2 * syndromes, 0.0);
  for (std::uint32_t w = 0; w < (1u << n); ++w) {
    const int ones = Weight(w);
    const double pw = std::pow(p1, ones) * std::pow(1 - p1, int(n) - ones);
    joint[((w >> bit) & 1u) * syndromes + Syndrome(rows, w)] += pw;
  }
  double mi = 0.0;
  for (std::size_t b = 0; b < 2; ++b) {
    const double pb = b ? p1 : 1 - p1;
    for (std::size_t s = 0; s < syndromes; ++s) {
      const double ps = joint[s] + joint[syndromes + s];
      const double p = joint[b * syndromes + s];
      if (p > 0) mi += p * std::log2(p / (pb * ps));
    }
  }
  return mi;
}

}  // namespace bioleak::oracle

#endif  // BIOLEAK_TESTS_ORACLES_H_
