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

#include "bioleak/sparse_sca.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "bioleak/error.h"
#include "bioleak/parallel.h"
#include "byte_io.h"

namespace bioleak {

using internal::ByteReader;
using internal::ByteWriter;

const char* ProjectionKindName(ProjectionKind kind) {
  switch (kind) {
    case ProjectionKind::kIdentity: return "identity";
    case ProjectionKind::kRandomGaussian: return "random-gaussian";
    case ProjectionKind::kPca: return "pca";
  }
  return "unknown";
}

namespace {

Eigen::MatrixXd PseudoInverse(const Eigen::MatrixXd& w) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(w,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double tol = std::numeric_limits<double>::epsilon() *
                     static_cast<double>(std::max(w.rows(), w.cols())) *
                     (s.size() > 0 ? s(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

std::int8_t SignOf(double q) { return q < 0.0 ? std::int8_t{-1} : std::int8_t{1}; }

void CheckDim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::kLengthMismatch,
                std::string(what) + ": expected dimension " +
                    std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

Projection Projection::Identity(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty projection");
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  return Projection(eye, eye, ProjectionKind::kIdentity);
}

Projection Projection::RandomGaussian(std::size_t l, std::size_t n,
                                      std::uint64_t seed) {
  if (l == 0 || n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty projection");
  }
  Rng rng = MakeStream(seed, StreamLabel::kProjection, {l, n});
  std::normal_distribution<double> normal(0.0,
                                          1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::MatrixXd w(l, n);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = normal(rng);
  return FromMatrix(std::move(w), ProjectionKind::kRandomGaussian);
}

Projection Projection::FromMatrix(Eigen::MatrixXd w, ProjectionKind kind) {
  if (w.rows() == 0 || w.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty projection");
  }
  if (kind == ProjectionKind::kIdentity) {
    if (w.rows() != w.cols() ||
        w != Eigen::MatrixXd::Identity(w.rows(), w.cols())) {
      throw Error(ErrorCode::kInvalidArgument,
                  "identity projection must be the identity matrix");
    }
    Eigen::MatrixXd pinv = w;
    return Projection(std::move(w), std::move(pinv), kind);
  }
  Eigen::MatrixXd pinv = PseudoInverse(w);
  return Projection(std::move(w), std::move(pinv), kind);
}

void Projection::Apply(std::span<const double> x, std::span<double> out) const {
  CheckDim(x.size(), input_dim(), "projection input");
  CheckDim(out.size(), output_dim(), "projection output");
  if (kind_ == ProjectionKind::kIdentity) {
    std::copy(x.begin(), x.end(), out.begin());
    return;
  }
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::Map<Eigen::VectorXd> ov(out.data(), static_cast<Eigen::Index>(out.size()));
  ov.noalias() = w_ * xv;
}

std::vector<double> Projection::Apply(std::span<const double> x) const {
  std::vector<double> out(output_dim());
  Apply(x, out);
  return out;
}

void Projection::BackProject(std::span<const std::int8_t> v,
                             std::span<double> out) const {
  CheckDim(v.size(), output_dim(), "back-projection input");
  CheckDim(out.size(), input_dim(), "back-projection output");
  if (kind_ == ProjectionKind::kIdentity) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return;
  }
  Eigen::VectorXd vv(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) vv(static_cast<Eigen::Index>(i)) = v[i];
  Eigen::Map<Eigen::VectorXd> ov(out.data(), static_cast<Eigen::Index>(out.size()));
  ov.noalias() = pinv_ * vv;
}

std::vector<double> Projection::BackProject(std::span<const std::int8_t> v) const {
  std::vector<double> out(input_dim());
  BackProject(v, out);
  return out;
}

Projection PcaProjection(const Eigen::MatrixXd& data) {
  const Eigen::Index n = data.rows();
  const Eigen::Index c = data.cols();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty data");
  if (c < n) {
    throw Error(ErrorCode::kRankDeficient,
                "PCA needs at least as many users as dimensions");
  }
  const Eigen::MatrixXd cov =
      (data * data.transpose()) / static_cast<double>(c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kRankDeficient, "covariance eigensolve failed");
  }
  const auto& values = eig.eigenvalues();  // ascending
  const double largest = values(n - 1);
  if (!(largest > 0.0) ||
      values(0) <= largest * 1e-12 * static_cast<double>(n)) {
    throw Error(ErrorCode::kRankDeficient, "data covariance is singular");
  }
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    Eigen::VectorXd row = eig.eigenvectors().col(n - 1 - r);
    Eigen::Index arg = 0;
    row.cwiseAbs().maxCoeff(&arg);
    if (row(arg) < 0.0) row = -row;
    w.row(r) = row.normalized().transpose();
  }
  return Projection::FromMatrix(std::move(w), ProjectionKind::kPca);
}

TernaryCodeword::TernaryCodeword(std::vector<std::int8_t> values)
    : values_(std::move(values)) {
  for (std::int8_t v : values_) {
    if (v < -1 || v > 1) {
      throw Error(ErrorCode::kInvalidArgument, "trit outside {-1,0,+1}");
    }
    if (v != 0) ++sparsity_;
  }
}

std::int64_t TernaryCodeword::Dot(const TernaryCodeword& other) const {
  CheckDim(other.size(), size(), "codeword inner product");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc += values_[i] * other.values_[i];
  }
  return acc;
}

TernaryCodeword TernarizeTopK(std::span<const double> q, std::size_t s_t) {
  if (s_t == 0 || s_t > q.size()) {
    throw Error(ErrorCode::kInvalidArgument, "sparsity S_t out of range");
  }
  std::vector<std::uint32_t> order(q.size());
  std::iota(order.begin(), order.end(), 0u);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s_t),
                    order.end(), [&](std::uint32_t a, std::uint32_t b) {
                      const double ma = std::abs(q[a]), mb = std::abs(q[b]);
                      return ma > mb || (ma == mb && a < b);
                    });
  std::vector<std::int8_t> v(q.size(), 0);
  for (std::size_t i = 0; i < s_t; ++i) v[order[i]] = SignOf(q[order[i]]);
  return TernaryCodeword(std::move(v));
}

TernaryCodeword TernarizeThreshold(std::span<const double> q, double lambda) {
  if (!(lambda >= 0.0)) {
    throw Error(ErrorCode::kDomain, "threshold lambda must be >= 0");
  }
  std::vector<std::int8_t> v(q.size(), 0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (std::abs(q[i]) > lambda) v[i] = SignOf(q[i]);
  }
  return TernaryCodeword(std::move(v));
}

TernaryCodeword StcEncode(const Projection& proj, std::span<const double> x,
                          std::size_t s_t) {
  if (s_t == 0 || s_t > proj.output_dim()) {
    throw Error(ErrorCode::kInvalidArgument, "sparsity S_t out of range");
  }
  return TernarizeTopK(proj.Apply(x), s_t);
}

TernaryCodeword StcThresholdEncode(const Projection& proj,
                                   std::span<const double> x, double lambda) {
  return TernarizeThreshold(proj.Apply(x), lambda);
}

TernaryCodeword StcEncode(const Projection& proj, std::span<const double> x,
                          const TernaryRule& rule) {
  return rule.kind == TernaryRule::Kind::kTopK
             ? StcEncode(proj, x, rule.top_k)
             : StcThresholdEncode(proj, x, rule.lambda);
}

std::vector<std::uint8_t> SbcEncode(std::span<const double> x, double tau) {
  if (!(tau >= 0.0)) throw Error(ErrorCode::kDomain, "tau must be >= 0");
  std::vector<std::uint8_t> bits(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) bits[i] = std::abs(x[i]) > tau;
  return bits;
}

std::vector<std::int8_t> BcEncode(std::span<const double> x) {
  std::vector<std::int8_t> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = SignOf(x[i]);
  return s;
}

TernaryCodeword AmbiguationPlan::Apply(const TernaryCodeword& v,
                                       std::size_t s_n) const {
  if (s_n > positions.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "S_n exceeds the number of zero positions");
  }
  std::vector<std::int8_t> u(v.values().begin(), v.values().end());
  for (std::size_t i = 0; i < s_n; ++i) u[positions[i]] = signs[i];
  return TernaryCodeword(std::move(u));
}

std::vector<std::uint8_t> AmbiguationPlan::ApplyBinary(
    std::span<const std::uint8_t> bits, std::size_t s_n) const {
  if (s_n > positions.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "S_n exceeds the number of zero positions");
  }
  std::vector<std::uint8_t> out(bits.begin(), bits.end());
  for (std::size_t i = 0; i < s_n; ++i) out[positions[i]] = 1;
  return out;
}

AmbiguationPlan PlanAmbiguation(const TernaryCodeword& v, Rng& rng) {
  AmbiguationPlan plan;
  plan.positions.reserve(v.size() - v.sparsity());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) plan.positions.push_back(static_cast<std::uint32_t>(i));
  }
  // Explicit Fisher-Yates so the permutation is fixed across standard
  // library implementations.
  for (std::size_t i = plan.positions.size(); i > 1; --i) {
    const std::size_t j =
        std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    std::swap(plan.positions[i - 1], plan.positions[j]);
  }
  plan.signs.resize(plan.positions.size());
  for (auto& s : plan.signs) s = (rng() >> 63) ? std::int8_t{1} : std::int8_t{-1};
  return plan;
}

TernaryCodeword Ambiguate(const TernaryCodeword& v, std::size_t s_n, Rng& rng) {
  if (s_n > v.size() - v.sparsity()) {
    throw Error(ErrorCode::kInvalidArgument,
                "S_n exceeds the number of zero positions");
  }
  return PlanAmbiguation(v, rng).Apply(v, s_n);
}

std::size_t AmbiguationCount(std::size_t length, std::size_t sparsity,
                             double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "ambiguation ratio outside [0,1]");
  }
  if (sparsity > length) {
    throw Error(ErrorCode::kInvalidArgument, "sparsity exceeds length");
  }
  const std::size_t zeros = length - sparsity;
  const auto s_n = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(zeros)));
  return std::min(s_n, zeros);
}

std::int64_t VerifyScore(const TernaryCodeword& u, const Projection& proj,
                         std::span<const double> y, const TernaryRule& rule) {
  CheckDim(u.size(), proj.output_dim(), "stored codeword");
  return u.Dot(StcEncode(proj, y, rule));
}

std::int64_t VerifyScore(const TernaryCodeword& u, const Projection& proj,
                         std::span<const double> y, double lambda) {
  return VerifyScore(u, proj, y, TernaryRule::Threshold(lambda));
}

Purified PurifyAndReconstruct(const TernaryCodeword& u, const Projection& proj,
                              std::span<const double> y,
                              const TernaryRule& rule) {
  CheckDim(u.size(), proj.output_dim(), "stored codeword");
  const TernaryCodeword probe = StcEncode(proj, y, rule);
  std::vector<std::int8_t> kept(u.size(), 0);
  for (std::size_t l = 0; l < u.size(); ++l) {
    if (probe[l] != 0) kept[l] = u[l];
  }
  Purified out{TernaryCodeword(std::move(kept)), {}};
  out.estimate = proj.BackProject(out.codeword.values());
  return out;
}

Purified PurifyAndReconstruct(const TernaryCodeword& u, const Projection& proj,
                              std::span<const double> y, double lambda) {
  return PurifyAndReconstruct(u, proj, y, TernaryRule::Threshold(lambda));
}

std::vector<std::uint8_t> SerializeTemplate(const ProtectedTemplate& t) {
  const TernaryCodeword& u = t.codeword;
  if (u.sparsity() != t.clean_sparsity + t.noise_count) {
    throw Error(ErrorCode::kInvalidArgument,
                "template sparsity != S_t + S_n");
  }
  if (u.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kSizeLimit, "template too long");
  }
  ByteWriter w;
  w.PutText("SCA1");
  w.Put<std::uint16_t>(kTemplateVersion);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(u.size()));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(t.clean_sparsity));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(t.noise_count));
  w.PutReal(t.tau);
  w.Put<std::uint8_t>(static_cast<std::uint8_t>(t.projection_kind));
  std::vector<std::uint8_t> packed((u.size() + 3) / 4, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::uint8_t code = u[i] == 0 ? 0 : (u[i] > 0 ? 1 : 2);
    packed[i / 4] |= static_cast<std::uint8_t>(code << (2 * (i % 4)));
  }
  w.PutBytes(packed);
  return std::move(w.bytes());
}

ProtectedTemplate DeserializeTemplate(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "SCA1", 4) != 0) {
    throw Error(ErrorCode::kFormat, "bad template magic");
  }
  ByteReader r(bytes.subspan(4));
  const auto version = r.Get<std::uint16_t>();
  if (version != kTemplateVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported template version " + std::to_string(version));
  }
  ProtectedTemplate t;
  const std::uint32_t length = r.Get<std::uint32_t>();
  t.clean_sparsity = r.Get<std::uint32_t>();
  t.noise_count = r.Get<std::uint32_t>();
  t.tau = r.GetReal();
  const auto kind = r.Get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(ProjectionKind::kPca)) {
    throw Error(ErrorCode::kFormat, "unknown projection kind tag");
  }
  t.projection_kind = static_cast<ProjectionKind>(kind);
  const std::size_t packed = (static_cast<std::size_t>(length) + 3) / 4;
  if (r.remaining() != packed) {
    throw Error(ErrorCode::kFormat, "template trit payload has wrong size");
  }
  std::vector<std::int8_t> trits(length);
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i % 4 == 0) byte = r.Get<std::uint8_t>();
    const std::uint8_t code = (byte >> (2 * (i % 4))) & 3u;
    if (code == 3) throw Error(ErrorCode::kFormat, "invalid trit code 11");
    trits[i] = code == 0 ? 0 : (code == 1 ? 1 : -1);
  }
  t.codeword = TernaryCodeword(std::move(trits));
  if (t.codeword.sparsity() != t.clean_sparsity + t.noise_count) {
    throw Error(ErrorCode::kFormat, "template sparsity != S_t + S_n");
  }
  return t;
}

Cohort::Cohort(Projection projection, std::vector<double> vectors,
               std::size_t users, double sigma_x, const TernaryRule& rule,
               std::uint64_t seed, unsigned threads)
    : projection_(std::move(projection)),
      vectors_(std::move(vectors)),
      users_(users),
      dim_(projection_.input_dim()),
      sigma_x_(sigma_x),
      seed_(seed),
      clean_(users),
      plans_(users) {
  if (vectors_.size() != users_ * dim_) {
    throw Error(ErrorCode::kLengthMismatch, "cohort matrix size mismatch");
  }
  ParallelChunks(users_, 64, threads,
                 [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t c = begin; c < end; ++c) {
                     clean_[c] = StcEncode(projection_, vector(c), rule);
                     Rng rng = MakeStream(seed_, StreamLabel::kAmbiguation, {c});
                     plans_[c] = PlanAmbiguation(clean_[c], rng);
                   }
                 });
}

Cohort Cohort::Generate(Projection projection, std::size_t users,
                        std::size_t dim, double sigma_x,
                        const TernaryRule& rule, std::uint64_t seed,
                        unsigned threads) {
  CheckDim(dim, projection.input_dim(), "cohort dimension");
  if (!(sigma_x > 0.0)) throw Error(ErrorCode::kDomain, "sigma_x must be > 0");
  std::vector<double> vectors(users * dim);
  ParallelChunks(users, 64, threads,
                 [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t c = begin; c < end; ++c) {
                     Rng rng = MakeStream(seed, StreamLabel::kEnrollmentVector, {c});
                     std::normal_distribution<double> normal(0.0, sigma_x);
                     for (std::size_t n = 0; n < dim; ++n) {
                       vectors[c * dim + n] = normal(rng);
                     }
                   }
                 });
  return Cohort(std::move(projection), std::move(vectors), users, sigma_x, rule,
                seed, threads);
}

Cohort Cohort::FromVectors(Projection projection, std::vector<double> vectors,
                           std::size_t users, double sigma_x,
                           const TernaryRule& rule, std::uint64_t seed) {
  return Cohort(std::move(projection), std::move(vectors), users, sigma_x, rule,
                seed, 1);
}

TernaryCodeword Cohort::Protected(std::size_t c, double ratio) const {
  const TernaryCodeword& v = clean_[c];
  return plans_[c].Apply(v, AmbiguationCount(v.size(), v.sparsity(), ratio));
}

ErrorRateEstimate ReconstructionErrorRate(const Cohort& cohort,
                                          Hypothesis hypothesis, double tau,
                                          const ReconstructionParams& params) {
  if (cohort.users() == 0) throw Error(ErrorCode::kEmptySample, "empty cohort");
  if (!(tau >= 0.0)) throw Error(ErrorCode::kDomain, "tau must be >= 0");
  const std::size_t dim = cohort.dim();
  const TernaryRule probe_rule = TernaryRule::Threshold(params.probe_lambda);
  std::vector<std::uint64_t> per_user(cohort.users(), 0);

  ParallelChunks(
      cohort.users(), 32, params.threads,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<double> y(dim);
        for (std::size_t c = begin; c < end; ++c) {
          const auto x = cohort.vector(c);
          if (hypothesis == Hypothesis::kH1) {
            Rng rng = MakeStream(params.seed, StreamLabel::kMeasurementNoise, {c});
            std::normal_distribution<double> noise(0.0, params.sigma_noise);
            for (std::size_t n = 0; n < dim; ++n) {
              y[n] = x[n] + (params.sigma_noise > 0.0 ? noise(rng) : 0.0);
            }
          } else {
            Rng rng = MakeStream(params.seed, StreamLabel::kImpostorProbe, {c});
            std::normal_distribution<double> fresh(0.0, cohort.sigma_x());
            for (std::size_t n = 0; n < dim; ++n) y[n] = fresh(rng);
          }
          const TernaryCodeword u = cohort.Protected(c, params.ambiguation_ratio);
          const Purified p =
              PurifyAndReconstruct(u, cohort.projection(), y, probe_rule);
          std::uint64_t wrong = 0;
          for (std::size_t n = 0; n < dim; ++n) {
            wrong += (std::abs(p.estimate[n]) > tau) != (std::abs(x[n]) > tau);
          }
          per_user[c] = wrong;
        }
      });

  ErrorRateEstimate est;
  const double per_user_trials = static_cast<double>(dim);
  for (std::uint64_t w : per_user) est.mismatches += w;
  est.trials = static_cast<std::uint64_t>(cohort.users()) * dim;
  est.rate = static_cast<double>(est.mismatches) / static_cast<double>(est.trials);
  if (cohort.users() > 1) {
    double ss = 0.0;
    for (std::uint64_t w : per_user) {
      const double d = static_cast<double>(w) / per_user_trials - est.rate;
      ss += d * d;
    }
    const double c = static_cast<double>(cohort.users());
    est.std_error = std::sqrt(ss / (c - 1.0) / c);
  }
  return est;
}

std::uint64_t BinomialCoefficient(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step.
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g, d = i / g;
    const std::uint64_t nd = num / d;
    if (nd != 0 && r > std::numeric_limits<std::uint64_t>::max() / nd) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = r * nd;
  }
  return result;
}

std::vector<AttackCandidate> EnumerationAttack(const TernaryCodeword& u,
                                               const Projection& proj,
                                               std::size_t s_t,
                                               std::uint64_t budget) {
  CheckDim(u.size(), proj.output_dim(), "stored codeword");
  std::vector<std::size_t> support;
  for (std::size_t l = 0; l < u.size(); ++l) {
    if (u[l] != 0) support.push_back(l);
  }
  if (s_t == 0 || s_t > support.size()) {
    throw Error(ErrorCode::kInvalidArgument, "S_t out of range for support");
  }
  const std::uint64_t count = BinomialCoefficient(support.size(), s_t);
  if (count > budget) {
    throw Error(ErrorCode::kBudgetExceeded,
                "enumeration needs " + std::to_string(count) +
                    " candidates, budget " + std::to_string(budget));
  }
  const Eigen::MatrixXd projector = proj.matrix() * proj.pseudo_inverse();

  std::vector<AttackCandidate> out;
  out.reserve(count);
  std::vector<std::size_t> pick(s_t);
  std::iota(pick.begin(), pick.end(), 0);
  const std::size_t m = support.size();
  for (;;) {
    std::vector<std::int8_t> v(u.size(), 0);
    Eigen::VectorXd vv = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(u.size()));
    for (std::size_t i : pick) {
      v[support[i]] = u[support[i]];
      vv(static_cast<Eigen::Index>(support[i])) = u[support[i]];
    }
    out.push_back({TernaryCodeword(std::move(v)), (projector * vv - vv).norm()});
    std::size_t i = s_t;
    while (i > 0 && pick[i - 1] == m - s_t + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < s_t; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const AttackCandidate& a, const AttackCandidate& b) {
                     return a.residual < b.residual;
                   });
  return out;
}

}  // namespace bioleak
