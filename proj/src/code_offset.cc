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

#include "bioleak/code_offset.h"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bioleak/core_math.h"
#include "bioleak/error.h"

namespace bioleak {
namespace {

constexpr std::uint32_t kNoLeader = ~std::uint32_t{0};

std::size_t Gf2Rank(std::vector<std::uint32_t> rows) {
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < 32 && rank < rows.size(); ++bit) {
    const std::uint32_t mask = std::uint32_t{1} << bit;
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

// Advances `pos` (sorted, distinct, < n) to the next combination in
// lexicographic order. Returns false after the last one.
bool NextCombination(std::vector<std::size_t>& pos, std::size_t n) {
  const std::size_t w = pos.size();
  for (std::size_t i = w; i-- > 0;) {
    if (pos[i] < n - w + i) {
      ++pos[i];
      for (std::size_t j = i + 1; j < w; ++j) pos[j] = pos[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// In-place Walsh-Hadamard transform (unnormalized).
void Hadamard(std::vector<double>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j], b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

std::vector<double> WeightProbabilities(std::size_t n, double p1) {
  std::vector<double> w(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    w[i] = std::pow(p1, static_cast<double>(i)) *
           std::pow(1.0 - p1, static_cast<double>(n - i));
  }
  return w;
}

// Distribution of Syn(X) for X with iid Bernoulli(p1) bits.
std::vector<double> SyndromeDistribution(const LinearCode& code, double p1) {
  const auto weight_prob = WeightProbabilities(code.n(), p1);
  std::vector<double> dist(std::size_t{1} << code.redundancy(), 0.0);
  const std::uint32_t words = std::uint32_t{1} << code.n();
  for (std::uint32_t x = 0; x < words; ++x) {
    dist[code.SyndromeOf(x)] += weight_prob[std::popcount(x)];
  }
  return dist;
}

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kDomain, std::string(what) + " outside [0,1]");
  }
}

}  // namespace

LinearCode::LinearCode(std::size_t n, std::size_t k,
                       std::vector<std::uint32_t> rows)
    : n_(n), k_(k), rows_(std::move(rows)) {
  if (n > kMaxCodeLength) {
    throw Error(ErrorCode::kSizeLimit, "code length above 20");
  }
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kInvalidArgument, "need 1 <= k < n");
  }
  if (rows_.size() != n - k) {
    throw Error(ErrorCode::kInvalidArgument, "parity check needs n-k rows");
  }
  const std::uint32_t valid = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t row : rows_) {
    if (row & ~valid) {
      throw Error(ErrorCode::kInvalidArgument, "parity row wider than n");
    }
    row_weight_ = std::max<std::size_t>(row_weight_, std::popcount(row));
  }
  if (Gf2Rank(rows_) != n - k) {
    throw Error(ErrorCode::kRankDeficient, "parity check not full row rank");
  }

  const std::size_t syndromes = std::size_t{1} << (n - k);
  leaders_.assign(syndromes, kNoLeader);
  std::size_t filled = 0;
  for (std::size_t w = 0; w <= n && filled < syndromes; ++w) {
    std::vector<std::size_t> pos(w);
    for (std::size_t i = 0; i < w; ++i) pos[i] = i;
    do {
      std::uint32_t e = 0;
      for (std::size_t p : pos) e |= std::uint32_t{1} << p;
      std::uint32_t& slot = leaders_[SyndromeOf(e)];
      if (slot == kNoLeader) {
        slot = e;
        ++filled;
      }
    } while (NextCombination(pos, n));
  }

  std::size_t min_distance = n + 1;
  for (std::uint32_t c = 1; c <= valid; ++c) {
    if (SyndromeOf(c) == 0) {
      min_distance = std::min<std::size_t>(min_distance, std::popcount(c));
    }
  }
  radius_ = (min_distance - 1) / 2;
}

LinearCode LinearCode::FromMatrix(std::size_t n, std::size_t k,
                                  const std::vector<Bits>& rows) {
  std::vector<std::uint32_t> masks;
  masks.reserve(rows.size());
  for (const Bits& row : rows) {
    if (row.size() != n) {
      throw Error(ErrorCode::kLengthMismatch, "parity row length != n");
    }
    if (n > kMaxCodeLength) {
      throw Error(ErrorCode::kSizeLimit, "code length above 20");
    }
    masks.push_back(PackBits(row));
  }
  return LinearCode(n, k, std::move(masks));
}

LinearCode LinearCode::Hamming74() {
  std::vector<std::uint32_t> rows(3, 0);
  for (std::uint32_t j = 0; j < 7; ++j) {
    for (std::size_t r = 0; r < 3; ++r) {
      if (((j + 1) >> r) & 1u) rows[r] |= std::uint32_t{1} << j;
    }
  }
  return LinearCode(7, 4, std::move(rows));
}

LinearCode LinearCode::Repetition(std::size_t n) {
  if (n < 2 || n > kMaxCodeLength) {
    throw Error(ErrorCode::kInvalidArgument, "repetition length out of range");
  }
  std::vector<std::uint32_t> rows;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    rows.push_back(1u | (std::uint32_t{1} << (i + 1)));
  }
  return LinearCode(n, 1, std::move(rows));
}

std::uint32_t LinearCode::SyndromeOf(std::uint32_t word) const {
  std::uint32_t s = 0;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    s |= static_cast<std::uint32_t>(std::popcount(rows_[r] & word) & 1) << r;
  }
  return s;
}

std::uint32_t PackBits(std::span<const std::uint8_t> bits) {
  if (bits.size() > 32) {
    throw Error(ErrorCode::kSizeLimit, "bit string longer than 32");
  }
  std::uint32_t w = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw Error(ErrorCode::kInvalidArgument, "bit not 0/1");
    w |= static_cast<std::uint32_t>(bits[i]) << i;
  }
  return w;
}

Bits UnpackBits(std::uint32_t word, std::size_t length) {
  Bits b(length);
  for (std::size_t i = 0; i < length; ++i) b[i] = (word >> i) & 1u;
  return b;
}

Bits Syndrome(const LinearCode& code, std::span<const std::uint8_t> word) {
  if (word.size() != code.n()) {
    throw Error(ErrorCode::kLengthMismatch, "word length != n");
  }
  return UnpackBits(code.SyndromeOf(PackBits(word)), code.redundancy());
}

Sketch ComGen(const LinearCode& code, std::span<const std::uint8_t> psi_x) {
  return Sketch{Syndrome(code, psi_x)};
}

Bits ComReconstruct(const LinearCode& code, std::span<const std::uint8_t> psi_y,
                    const Sketch& sketch) {
  if (psi_y.size() != code.n() || sketch.bits.size() != code.redundancy()) {
    throw Error(ErrorCode::kLengthMismatch, "sketch/word length mismatch");
  }
  const std::uint32_t y = PackBits(psi_y);
  const std::uint32_t diff = PackBits(sketch.bits) ^ code.SyndromeOf(y);
  return UnpackBits(y ^ code.CosetLeader(diff), code.n());
}

double MarginalBitLeakage(const LinearCode& code, std::size_t bit_index,
                          double p1) {
  if (bit_index >= code.n()) {
    throw Error(ErrorCode::kInvalidArgument, "bit index out of range");
  }
  if (!(p1 > 0.0 && p1 < 1.0)) {
    throw Error(ErrorCode::kDomain, "bit prior must lie in (0,1)");
  }
  const auto weight_prob = WeightProbabilities(code.n(), p1);
  const std::size_t syndromes = std::size_t{1} << code.redundancy();
  std::vector<double> joint(2 * syndromes, 0.0);
  const std::uint32_t words = std::uint32_t{1} << code.n();
  for (std::uint32_t x = 0; x < words; ++x) {
    const std::size_t bit = (x >> bit_index) & 1u;
    joint[bit * syndromes + code.SyndromeOf(x)] += weight_prob[std::popcount(x)];
  }
  return MutualInformation(joint, 2, syndromes);
}

double NoisyEnrollmentLeakageBound(std::size_t n, std::size_t k, std::size_t r,
                                   double epsilon) {
  if (k >= n) throw Error(ErrorCode::kDomain, "need k < n");
  if (r < 1) throw Error(ErrorCode::kDomain, "row weight must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
    throw Error(ErrorCode::kDomain, "bit error rate outside [0, 1/2]");
  }
  const double alpha =
      0.5 - 0.5 * std::pow(1.0 - 2.0 * epsilon, static_cast<double>(r));
  return static_cast<double>(n - k) * (1.0 - BinaryEntropy(alpha));
}

double NoisyEnrollmentLeakageApprox(std::size_t n, std::size_t k,
                                    std::size_t r, double epsilon) {
  if (k >= n) throw Error(ErrorCode::kDomain, "need k < n");
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
    throw Error(ErrorCode::kDomain, "bit error rate outside [0, 1/2]");
  }
  return static_cast<double>(n - k) *
         std::pow(1.0 - 2.0 * epsilon, 2.0 * static_cast<double>(r)) /
         (2.0 * std::numbers::ln2);
}

double ExactNoisyEnrollmentLeakage(const LinearCode& code, double epsilon,
                                   double prior_p1) {
  if (code.n() > 16) {
    throw Error(ErrorCode::kSizeLimit, "exact leakage limited to n <= 16");
  }
  CheckProbability(epsilon, "bit error rate");
  CheckProbability(prior_p1, "bit prior");
  std::vector<double> noise = SyndromeDistribution(code, epsilon);
  std::vector<double> base = SyndromeDistribution(code, prior_p1);
  const double h_noise = Entropy(noise);
  // U = Syn B xor Syn G: xor-convolution via the Hadamard transform.
  Hadamard(noise);
  Hadamard(base);
  for (std::size_t i = 0; i < base.size(); ++i) base[i] *= noise[i];
  Hadamard(base);
  const double scale = 1.0 / static_cast<double>(base.size());
  for (double& v : base) v = std::max(0.0, v * scale);
  const double leak = Entropy(base) - h_noise;
  return leak > 0.0 ? leak : 0.0;
}

LinearCode ParseParityCheck(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      while (!out.empty() && (out.back() == '\r' || out.back() == ' ' ||
                              out.back() == '\t')) {
        out.pop_back();
      }
      if (!out.empty()) return true;
    }
    return false;
  };
  if (!next_line(line)) throw Error(ErrorCode::kFormat, "empty parity file");
  std::istringstream header(line);
  long long n = 0, k = 0;
  if (!(header >> n >> k) || n <= 0 || k < 0 || k >= n) {
    throw Error(ErrorCode::kFormat, "bad parity header: '" + line + "'");
  }
  std::vector<Bits> rows;
  for (long long r = 0; r < n - k; ++r) {
    if (!next_line(line)) {
      throw Error(ErrorCode::kFormat, "missing parity-check rows");
    }
    if (line.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::kFormat, "parity row length != n");
    }
    Bits row;
    for (char c : line) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::kFormat, "parity rows must be 0/1");
      }
      row.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    rows.push_back(std::move(row));
  }
  if (next_line(line)) {
    throw Error(ErrorCode::kFormat, "trailing data after parity rows");
  }
  return LinearCode::FromMatrix(static_cast<std::size_t>(n),
                                static_cast<std::size_t>(k), rows);
}

LinearCode LoadParityCheck(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open parity file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseParityCheck(buf.str());
}

std::string FormatParityCheck(const LinearCode& code) {
  std::string out = std::to_string(code.n()) + " " + std::to_string(code.k()) +
                    "\n";
  for (std::uint32_t row : code.parity_rows()) {
    for (std::size_t j = 0; j < code.n(); ++j) out += ((row >> j) & 1u) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace bioleak
