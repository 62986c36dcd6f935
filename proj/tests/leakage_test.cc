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

#include "bioleak/leakage.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bioleak/error.h"
#include "oracles.h"
#include "test_util.h"

namespace bioleak {
namespace {

using testing::ErrorOf;

const SymmetricDistribution kNormal = GaussianDistribution(1.0);

TEST(Thm1Test, Examples) {
  EXPECT_EQ(Thm1SignEntropyGivenHelper(4, 3, 0.25), 1.0);
  EXPECT_NEAR(Thm1SignEntropyGivenHelper(3, 2, 1.0 / 3), 0.918296, 1e-6);
  EXPECT_NEAR(Thm1SignEntropyGivenHelper(3, 3, 1.0 / 3), 0.945531, 1e-6);
  EXPECT_NEAR(Thm1SignEntropyGivenHelper(5, 1, 0.2), 1.0, 1e-15);
  EXPECT_EQ(ErrorOf([] { Thm1SignEntropyGivenHelper(1, 1, 0.5); }),
            ErrorCode::kDomain);
  EXPECT_EQ(ErrorOf([] { Thm1SignEntropyGivenHelper(3, 0, 0.5); }),
            ErrorCode::kDomain);
  EXPECT_EQ(ErrorOf([] { Thm1SignEntropyGivenHelper(3, 2, 1.0); }),
            ErrorCode::kDomain);
}

TEST(Thm1Property, EvenIntervalCountsGiveOneBit) {
  for (std::size_t j = 2; j <= 12; j += 2) {
    for (std::size_t m = 1; m <= 6; ++m) {
      for (double p : {0.01, 0.3, 0.99}) {
        EXPECT_EQ(Thm1SignEntropyGivenHelper(j, m, p), 1.0);
      }
    }
  }
}

TEST(Thm2Test, Examples) {
  EXPECT_NEAR(Thm2ExtremenessEntropyGivenHelper(2, 0.05, 0.25), 0.468996, 1e-6);
  EXPECT_NEAR(Thm2ExtremenessEntropyGivenHelper(2, 0.05, 0.25),
              ExtremenessEntropy(0.05), 1e-15);
  EXPECT_NEAR(Thm2ExtremenessEntropyGivenHelper(4, 0.01, 0.25), 0.121146, 1e-6);
  EXPECT_EQ(ErrorOf([] { Thm2ExtremenessEntropyGivenHelper(1, 0.1, 0.5); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(ErrorOf([] { Thm2ExtremenessEntropyGivenHelper(4, 0.0625, 0.25); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(ErrorOf([] { Thm2ExtremenessEntropyGivenHelper(2, 0.01, 0.6); }),
            ErrorCode::kPrecondition);
}

TEST(Thm3Test, Examples) {
  for (double p0 : {0.5, 1.0 / 3, 0.25}) {
    EXPECT_NEAR(Thm3ExtremenessEntropyContinuum(p0, p0), ExtremenessEntropy(p0),
                1e-12);
    EXPECT_NEAR(Thm3ExtremenessEntropyContinuum(p0, p0 / 2),
                ExtremenessEntropy(p0 / 2), 1e-12);
  }
  EXPECT_NEAR(Thm3ExtremenessEntropyContinuum(0.25, 0.05), 0.324511, 1e-6);
  EXPECT_NEAR(NormalizedLeakage(ExtremenessEntropy(0.05),
                                Thm3ExtremenessEntropyContinuum(0.25, 0.05)),
              0.3081, 1e-4);
  EXPECT_EQ(ErrorOf([] { Thm3ExtremenessEntropyContinuum(0.25, 0.3); }),
            ErrorCode::kDomain);
  EXPECT_EQ(ErrorOf([] { Thm3ExtremenessEntropyContinuum(0.6, 0.1); }),
            ErrorCode::kDomain);
  EXPECT_EQ(ErrorOf([] { Thm3ExtremenessEntropyContinuum(0.25, 0.0); }),
            ErrorCode::kDomain);
}

TEST(Thm3Property, ContinuousAtHalfP0) {
  for (double p0 : {0.5, 0.4, 1.0 / 3, 0.25, 0.1}) {
    const double mid = p0 / 2;
    const double left = Thm3ExtremenessEntropyContinuum(p0, std::nextafter(mid, 0.0));
    const double right = Thm3ExtremenessEntropyContinuum(p0, std::nextafter(mid, 1.0));
    EXPECT_NEAR(left, right, 1e-12);
  }
}

TEST(Thm3Property, NeverExceedsTargetEntropy) {
  for (double p0 : {0.5, 1.0 / 3, 0.25}) {
    for (int k = 1; k <= 1000; ++k) {
      const double f = p0 * k / 1000.0;
      const double h_cond = Thm3ExtremenessEntropyContinuum(p0, f);
      EXPECT_GE(h_cond, -1e-15);
      EXPECT_LE(h_cond, ExtremenessEntropy(f) + 1e-12);
    }
  }
}

TEST(NormalizedLeakageTest, ZeroEntropyIsZero) {
  EXPECT_EQ(NormalizedLeakage(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(NormalizedLeakage(1.0, 0.25), 0.75);
}

HdsLeakageParams SignParams(std::uint64_t seed) {
  HdsLeakageParams p;
  p.target = TargetBit::kSign;
  p.samples = 1'000'000;
  p.seed = seed;
  p.threads = 2;
  return p;
}

TEST(MonteCarloHdsLeakageTest, EvenIntervalsLeakNoSign) {
  const auto q = MakeEquiprobableQuantizer(kNormal, 4, 2);
  const auto r = MonteCarloHdsLeakage(q, SignParams(1));
  EXPECT_TRUE(r.in_regime);
  EXPECT_EQ(r.analytic_conditional_entropy, 1.0);
  EXPECT_LT(r.empirical_leakage, 0.003);
  EXPECT_EQ(r.sample_count, 1'000'000u);
}

TEST(MonteCarloHdsLeakageTest, OddIntervalsMatchClosedForm) {
  const auto q = MakeEquiprobableQuantizer(kNormal, 3, 2);
  const auto r = MonteCarloHdsLeakage(q, SignParams(2));
  ASSERT_TRUE(r.analytic_conditional_entropy.has_value());
  EXPECT_NEAR(*r.analytic_conditional_entropy, 0.918296, 1e-6);
  EXPECT_NEAR(r.empirical_conditional_entropy, 0.9183, 0.01);
}

// In-regime points agree with the closed form within three standard errors.
TEST(MonteCarloHdsLeakageProperty, WithinThreeStandardErrors) {
  struct Case {
    std::size_t j, m;
    TargetBit target;
    double f;
  };
  const std::vector<Case> cases = {{3, 2, TargetBit::kSign, 0},
                                   {3, 3, TargetBit::kSign, 0},
                                   {5, 4, TargetBit::kSign, 0},
                                   {4, 2, TargetBit::kExtremeness, 0.01},
                                   {4, 4, TargetBit::kExtremeness, 0.02},
                                   {4, 8, TargetBit::kExtremeness, 0.002}};
  std::uint64_t seed = 100;
  for (const auto& c : cases) {
    const auto q = MakeEquiprobableQuantizer(kNormal, c.j, c.m);
    auto params = SignParams(++seed);
    params.target = c.target;
    params.tau = -kNormal.Quantile(c.f);
    const auto r = MonteCarloHdsLeakage(q, params);
    ASSERT_TRUE(r.in_regime) << c.j << "," << c.m;
    EXPECT_LT(std::abs(r.empirical_conditional_entropy -
                       *r.analytic_conditional_entropy),
              3 * r.conditional_entropy_std_error + 1e-12)
        << "J=" << c.j << " m=" << c.m;
    EXPECT_GE(r.empirical_leakage, -0.01);
  }
}

TEST(MonteCarloHdsLeakageTest, ContinuumTracksThm3) {
  const auto q = MakeEquiprobableQuantizer(kNormal, 2, 1);
  for (double ratio : {0.125, 0.25, 0.75}) {
    HdsLeakageParams p;
    p.target = TargetBit::kExtremeness;
    p.observable = HelperObservable::kContinuumBinned;
    p.bins = 64;
    p.tau = -kNormal.Quantile(ratio * 0.5);
    p.samples = 1'000'000;
    p.seed = 7;
    const auto r = MonteCarloHdsLeakage(q, p);
    ASSERT_TRUE(r.analytic_normalized.has_value());
    EXPECT_NEAR(r.normalized, *r.analytic_normalized, 0.02) << ratio;
    EXPECT_EQ(r.bins, 64u);
  }
}

TEST(MonteCarloHdsLeakageTest, OutOfRegimeIsFlaggedNotFatal) {
  const auto q = MakeEquiprobableQuantizer(kNormal, 4, 4);
  HdsLeakageParams p;
  p.target = TargetBit::kExtremeness;
  p.tau = -kNormal.Quantile(0.2);  // F(-tau) = 0.2 > p0 / m
  p.samples = 20'000;
  const auto r = MonteCarloHdsLeakage(q, p);
  EXPECT_FALSE(r.in_regime);
  EXPECT_FALSE(r.analytic_conditional_entropy.has_value());
  EXPECT_GE(r.normalized, -0.01);
  EXPECT_LE(r.normalized, 1.01);
}

TEST(MonteCarloHdsLeakageTest, RejectsTinySampleCounts) {
  const auto q = MakeEquiprobableQuantizer(kNormal, 2, 1);
  HdsLeakageParams p;
  p.samples = 9'999;
  EXPECT_EQ(ErrorOf([&] { MonteCarloHdsLeakage(q, p); }), ErrorCode::kPrecondition);
}

TEST(MonteCarloHdsLeakageTest, ThreadCountDoesNotChangeCounts) {
  const auto q = MakeEquiprobableQuantizer(kNormal, 3, 2);
  auto p = SignParams(9);
  p.samples = 300'000;
  p.threads = 1;
  const auto a = MonteCarloHdsLeakage(q, p);
  p.threads = 4;
  const auto b = MonteCarloHdsLeakage(q, p);
  EXPECT_EQ(a.empirical_conditional_entropy, b.empirical_conditional_entropy);
  EXPECT_EQ(a.empirical_leakage, b.empirical_leakage);
}

TEST(ScaLeakageCurveTest, IdentityEndpointsAndBinaryBelowTernary) {
  const double sigma_x = std::sqrt(0.5);
  const auto cohort = Cohort::Generate(Projection::Identity(64), 1000, 64, sigma_x,
                                       TernaryRule::Threshold(sigma_x), 3, 2);
  const auto curve = ScaLeakageCurve(cohort, sigma_x, {0.0, 0.5, 1.0}, 2);
  ASSERT_EQ(curve.size(), 3u);
  ASSERT_TRUE(curve[0].ternary_component.has_value());
  EXPECT_GT(curve[0].ternary_component->normalized, 0.98);
  EXPECT_LT(curve[2].ternary_component->normalized, 0.01);
  EXPECT_EQ(curve[0].mean_noise_count, 0.0);
  for (const auto& point : curve) {
    const auto& t = *point.ternary_component;
    const auto& b = *point.binary_component;
    EXPECT_LE(b.normalized, t.normalized + t.leakage_std_error / t.target_entropy);
    for (const auto* r : {&t, &b, &point.ternary_reconstruction,
                          &point.binary_reconstruction}) {
      EXPECT_GE(r->normalized, -0.01);
      EXPECT_LE(r->normalized, 1.01);
    }
  }
}

TEST(ScaLeakageCurveTest, PcaEndpointsAreOrdered) {
  const double sigma_x = std::sqrt(0.5);
  const std::size_t users = 800, dim = 32;
  const auto base = Cohort::Generate(Projection::Identity(dim), users, dim, sigma_x,
                                     TernaryRule::Threshold(sigma_x), 4);
  Eigen::MatrixXd data(dim, users);
  for (std::size_t c = 0; c < users; ++c) {
    for (std::size_t n = 0; n < dim; ++n) data(n, c) = base.vector(c)[n];
  }
  const auto pca = Cohort::FromVectors(
      PcaProjection(data), {base.vectors().begin(), base.vectors().end()}, users,
      sigma_x, TernaryRule::Threshold(sigma_x), 4);
  const auto curve = ScaLeakageCurve(pca, sigma_x, {0.0, 1.0});
  EXPECT_GE(curve[0].ternary_reconstruction.empirical_leakage,
            curve[1].ternary_reconstruction.empirical_leakage);
}

TEST(ScaLeakageCurveTest, NonSquareProjectionHasNoComponentObservable) {
  const auto cohort =
      Cohort::Generate(Projection::RandomGaussian(24, 16, 2), 200, 16, 1.0,
                       TernaryRule::Threshold(1.0), 5);
  const auto curve = ScaLeakageCurve(cohort, 1.0, {0.5});
  EXPECT_FALSE(curve[0].ternary_component.has_value());
  EXPECT_FALSE(curve[0].binary_component.has_value());
}

}  // namespace
}  // namespace bioleak
