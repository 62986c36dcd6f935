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

// Sparse ternary / sparse binary / binary coding, ambiguation, verification
// scoring and purification-based reconstruction.

#ifndef BIOLEAK_SPARSE_SCA_H_
#define BIOLEAK_SPARSE_SCA_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bioleak/random.h"

namespace bioleak {

enum class ProjectionKind : std::uint8_t {
  kIdentity = 0,
  kRandomGaussian = 1,
  kPca = 2,
};

const char* ProjectionKindName(ProjectionKind kind);

// W (L x N) together with its Moore-Penrose pseudo-inverse (N x L).
class Projection {
 public:
  static Projection Identity(std::size_t n);
  // iid N(0, 1/N) entries, so (Wx)_l has the per-component variance of x.
  static Projection RandomGaussian(std::size_t l, std::size_t n,
                                   std::uint64_t seed);
  // Pseudo-inverse via SVD. Identity kind requires W = I.
  static Projection FromMatrix(Eigen::MatrixXd w, ProjectionKind kind);

  ProjectionKind kind() const { return kind_; }
  std::size_t output_dim() const { return static_cast<std::size_t>(w_.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(w_.cols()); }
  const Eigen::MatrixXd& matrix() const { return w_; }
  const Eigen::MatrixXd& pseudo_inverse() const { return pinv_; }

  // out = W x. Sizes are checked.
  void Apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> Apply(std::span<const double> x) const;
  // out = W^dagger v for a ternary (or binary) vector.
  void BackProject(std::span<const std::int8_t> v, std::span<double> out) const;
  std::vector<double> BackProject(std::span<const std::int8_t> v) const;

 private:
  Projection(Eigen::MatrixXd w, Eigen::MatrixXd pinv, ProjectionKind kind)
      : w_(std::move(w)), pinv_(std::move(pinv)), kind_(kind) {}

  Eigen::MatrixXd w_;
  Eigen::MatrixXd pinv_;
  ProjectionKind kind_;
};

// Rows are unit eigenvectors of (1/C) X X^T for `data` = X (N x C, one user
// per column), by descending eigenvalue; each row's largest-magnitude
// entry is positive. Throws kRankDeficient for C < N or a singular
// covariance.
Projection PcaProjection(const Eigen::MatrixXd& data);

class TernaryCodeword {
 public:
  TernaryCodeword() = default;
  // Throws kInvalidArgument for values outside {-1, 0, +1}.
  explicit TernaryCodeword(std::vector<std::int8_t> values);

  std::size_t size() const { return values_.size(); }
  std::size_t sparsity() const { return sparsity_; }
  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  std::span<const std::int8_t> values() const { return values_; }
  // Inner product.
  std::int64_t Dot(const TernaryCodeword& other) const;

  friend bool operator==(const TernaryCodeword&,
                         const TernaryCodeword&) = default;

 private:
  std::vector<std::int8_t> values_;
  std::size_t sparsity_ = 0;
};

// How the ternary code is sparsified: keep the top-k magnitudes (ties to
// the lowest index), or threshold at a fixed lambda.
struct TernaryRule {
  enum class Kind : std::uint8_t { kTopK = 0, kThreshold = 1 };
  Kind kind = Kind::kTopK;
  std::size_t top_k = 0;
  double lambda = 0.0;

  static TernaryRule TopK(std::size_t k) { return {Kind::kTopK, k, 0.0}; }
  static TernaryRule Threshold(double lambda) {
    return {Kind::kThreshold, 0, lambda};
  }
};

// Exactly S_t nonzeros: the S_t largest |(Wx)_l|, value sign((Wx)_l) with
// sign(0) = +1. Throws kInvalidArgument unless 0 < S_t <= L.
TernaryCodeword StcEncode(const Projection& proj, std::span<const double> x,
                          std::size_t s_t);
// v_l = sign(q_l) Theta(|q_l| - lambda); |q_l| == lambda maps to 0.
TernaryCodeword StcThresholdEncode(const Projection& proj,
                                   std::span<const double> x, double lambda);
TernaryCodeword StcEncode(const Projection& proj, std::span<const double> x,
                          const TernaryRule& rule);
// Same two rules applied directly to an already projected vector q.
TernaryCodeword TernarizeTopK(std::span<const double> q, std::size_t s_t);
TernaryCodeword TernarizeThreshold(std::span<const double> q, double lambda);

// bit n = 1 iff |x_n| > tau.
std::vector<std::uint8_t> SbcEncode(std::span<const double> x, double tau);
// sign(x) in {-1, +1}; exact zeros map to +1.
std::vector<std::int8_t> BcEncode(std::span<const double> x);

// Random choice of which zero positions of v receive noise, and the noise
// signs. Taking a prefix of `positions` gives a uniform subset of every
// size, so one plan serves a whole ambiguation-ratio sweep with nested
// supports.
struct AmbiguationPlan {
  std::vector<std::uint32_t> positions;  // all zero positions of v, shuffled
  std::vector<std::int8_t> signs;        // uniform +-1, one per position

  // u = v with the first s_n planned positions set to their signs. Throws
  // kInvalidArgument when s_n exceeds the number of zeros.
  TernaryCodeword Apply(const TernaryCodeword& v, std::size_t s_n) const;
  // Binary analogue: the first s_n planned positions are set to 1.
  std::vector<std::uint8_t> ApplyBinary(std::span<const std::uint8_t> bits,
                                        std::size_t s_n) const;
};

AmbiguationPlan PlanAmbiguation(const TernaryCodeword& v, Rng& rng);
// S_n randomly chosen zeros of v become independent uniform +-1.
TernaryCodeword Ambiguate(const TernaryCodeword& v, std::size_t s_n, Rng& rng);
// S_n = round(ratio * (L - S_t)).
std::size_t AmbiguationCount(std::size_t length, std::size_t sparsity,
                             double ratio);

// u . psi(W y) with the probe encoded by `rule`.
std::int64_t VerifyScore(const TernaryCodeword& u, const Projection& proj,
                         std::span<const double> y, const TernaryRule& rule);
std::int64_t VerifyScore(const TernaryCodeword& u, const Projection& proj,
                         std::span<const double> y, double lambda);

struct Purified {
  TernaryCodeword codeword;     // v^
  std::vector<double> estimate;  // x^ = W^dagger v^
};

// v^_l = u_l where the probe's ternary code is nonzero, else 0.
Purified PurifyAndReconstruct(const TernaryCodeword& u, const Projection& proj,
                              std::span<const double> y,
                              const TernaryRule& rule);
Purified PurifyAndReconstruct(const TernaryCodeword& u, const Projection& proj,
                              std::span<const double> y, double lambda);

// Per-user public record. The projection itself and the probe rule are
// held by the enrolment database.
struct ProtectedTemplate {
  std::string user_id;
  ProjectionKind projection_kind = ProjectionKind::kIdentity;
  TernaryCodeword codeword;  // u
  std::size_t clean_sparsity = 0;  // S_t
  std::size_t noise_count = 0;     // S_n
  double tau = 0.0;
};

// "SCA1", u16 version, u32 L, u32 S_t, u32 S_n, f64 tau, u8 projection
// kind, then trits 2 bits each (00 = 0, 01 = +1, 10 = -1), four per byte
// starting at the low bits. Little-endian.
inline constexpr std::uint16_t kTemplateVersion = 1;
std::vector<std::uint8_t> SerializeTemplate(const ProtectedTemplate& t);
// Throws kFormat on malformed input. user_id is left empty.
ProtectedTemplate DeserializeTemplate(std::span<const std::uint8_t> bytes);

// Enrolled population with the randomness needed to protect it.
class Cohort {
 public:
  // Users' vectors drawn from N(0, sigma_x^2 I), one stream per user.
  static Cohort Generate(Projection projection, std::size_t users,
                         std::size_t dim, double sigma_x,
                         const TernaryRule& rule, std::uint64_t seed,
                         unsigned threads = 1);
  // Row-major users x dim matrix.
  static Cohort FromVectors(Projection projection, std::vector<double> vectors,
                            std::size_t users, double sigma_x,
                            const TernaryRule& rule, std::uint64_t seed);

  std::size_t users() const { return users_; }
  std::size_t dim() const { return dim_; }
  double sigma_x() const { return sigma_x_; }
  std::uint64_t seed() const { return seed_; }
  const Projection& projection() const { return projection_; }
  std::span<const double> vector(std::size_t c) const {
    return {vectors_.data() + c * dim_, dim_};
  }
  std::span<const double> vectors() const { return vectors_; }
  const TernaryCodeword& clean(std::size_t c) const { return clean_[c]; }
  const AmbiguationPlan& plan(std::size_t c) const { return plans_[c]; }
  // Stored codeword u at the given ambiguation ratio.
  TernaryCodeword Protected(std::size_t c, double ratio) const;

 private:
  Cohort(Projection projection, std::vector<double> vectors, std::size_t users,
         double sigma_x, const TernaryRule& rule, std::uint64_t seed,
         unsigned threads);

  Projection projection_;
  std::vector<double> vectors_;
  std::size_t users_;
  std::size_t dim_;
  double sigma_x_;
  std::uint64_t seed_;
  std::vector<TernaryCodeword> clean_;
  std::vector<AmbiguationPlan> plans_;
};

enum class Hypothesis { kH0, kH1 };

struct ReconstructionParams {
  double ambiguation_ratio = 0.0;
  double probe_lambda = 0.0;  // threshold for the probe's ternary code
  double sigma_noise = 0.0;   // H1 measurement noise
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct ErrorRateEstimate {
  double rate = 0.0;
  double std_error = 0.0;  // across users
  std::uint64_t mismatches = 0;
  std::uint64_t trials = 0;
};

// Average over users and components of [sbc_tau(x^_n) != sbc_tau(x_n)].
// Under H1 the probe is x + N(0, sigma_noise^2 I); under H0 it is a fresh
// draw from the cohort's distribution. Throws kEmptySample for an empty
// cohort.
ErrorRateEstimate ReconstructionErrorRate(const Cohort& cohort,
                                          Hypothesis hypothesis, double tau,
                                          const ReconstructionParams& params);

struct AttackCandidate {
  TernaryCodeword codeword;
  double residual = 0.0;  // ||W W^dagger v - v||_2
};

// All supports of size S_t inside u's support, values taken from u, sorted
// by ascending residual (stable in enumeration order). Throws
// kBudgetExceeded when the candidate count exceeds `budget`.
std::vector<AttackCandidate> EnumerationAttack(const TernaryCodeword& u,
                                               const Projection& proj,
                                               std::size_t s_t,
                                               std::uint64_t budget);

// n choose k, saturating at UINT64_MAX.
std::uint64_t BinomialCoefficient(std::uint64_t n, std::uint64_t k);

}  // namespace bioleak

#endif  // BIOLEAK_SPARSE_SCA_H_
