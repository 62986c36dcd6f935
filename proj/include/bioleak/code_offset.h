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

// Code Offset Method secure sketch over short binary linear codes.
//
// Codes are limited to n <= 20 so that the syndrome table and every
// leakage quantity can be obtained by exhaustive enumeration.

#ifndef BIOLEAK_CODE_OFFSET_H_
#define BIOLEAK_CODE_OFFSET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bioleak {

// One bit per element, values 0 or 1. Index 0 is the first code position.
using Bits = std::vector<std::uint8_t>;

inline constexpr std::size_t kMaxCodeLength = 20;

class LinearCode {
 public:
  // `rows` holds the n-k parity-check rows as bit masks (bit j = position
  // j). Throws kSizeLimit for n > 20, kInvalidArgument for k outside
  // [1, n) or stray bits, kRankDeficient when the rows are dependent.
  LinearCode(std::size_t n, std::size_t k, std::vector<std::uint32_t> rows);
  // Same, from explicit 0/1 rows.
  static LinearCode FromMatrix(std::size_t n, std::size_t k,
                               const std::vector<Bits>& rows);

  // Columns of H are the binary expansions of 1..7.
  static LinearCode Hamming74();
  // Rows e_0 + e_{i+1}, i = 0..n-2 (row weight 2).
  static LinearCode Repetition(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t redundancy() const { return n_ - k_; }
  // Largest number of ones in a parity-check row.
  std::size_t row_weight() const { return row_weight_; }
  // Largest t such that every error of weight <= t is its coset's unique
  // leader.
  std::size_t correction_radius() const { return radius_; }
  std::span<const std::uint32_t> parity_rows() const { return rows_; }

  std::uint32_t SyndromeOf(std::uint32_t word) const;
  // Minimum-weight coset leader; ties resolved toward the lexicographically
  // smallest support.
  std::uint32_t CosetLeader(std::uint32_t syndrome) const {
    return leaders_[syndrome];
  }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<std::uint32_t> rows_;
  std::size_t row_weight_ = 0;
  std::size_t radius_ = 0;
  std::vector<std::uint32_t> leaders_;
};

// Helper data of the code offset method, u = Syn(psi(x)).
struct Sketch {
  Bits bits;  // length n - k
};

std::uint32_t PackBits(std::span<const std::uint8_t> bits);
Bits UnpackBits(std::uint32_t word, std::size_t length);

// Throw kLengthMismatch on wrong word lengths.
Bits Syndrome(const LinearCode& code, std::span<const std::uint8_t> word);
Sketch ComGen(const LinearCode& code, std::span<const std::uint8_t> psi_x);
// psi(y) XOR SynDec(u XOR Syn psi(y)).
Bits ComReconstruct(const LinearCode& code, std::span<const std::uint8_t> psi_y,
                    const Sketch& sketch);

// Exact I(psi(X)_i ; Syn psi(X)) for iid Bernoulli(p1) input bits, by
// summing over all 2^n words. p1 = Pr[bit = 1].
double MarginalBitLeakage(const LinearCode& code, std::size_t bit_index,
                          double p1);

// (n-k) [1 - h(1/2 - 1/2 (1-2 eps)^r)].
double NoisyEnrollmentLeakageBound(std::size_t n, std::size_t k, std::size_t r,
                                   double epsilon);
// Small-leakage form (n-k) (1-2 eps)^{2r} / (2 ln 2).
double NoisyEnrollmentLeakageApprox(std::size_t n, std::size_t k,
                                    std::size_t r, double epsilon);
// Exact I(B; Syn(B xor G)) with B iid Bernoulli(prior_p1) and G iid
// Bernoulli(epsilon), by enumeration (n <= 16).
double ExactNoisyEnrollmentLeakage(const LinearCode& code, double epsilon,
                                   double prior_p1 = 0.5);

// Plain-text parity-check format: "n k" then n-k lines of n characters
// from {0,1}. Parse failures throw kFormat; unreadable files throw kIo.
LinearCode ParseParityCheck(const std::string& text);
LinearCode LoadParityCheck(const std::string& path);
std::string FormatParityCheck(const LinearCode& code);

}  // namespace bioleak

#endif  // BIOLEAK_CODE_OFFSET_H_
