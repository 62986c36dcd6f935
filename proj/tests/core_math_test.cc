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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bioleak/error.h"
#include "oracles.h"
#include "test_util.h"

namespace bioleak {
namespace {

using testing::ErrorOf;

TEST(BinaryEntropyTest, KnownValues) {
  EXPECT_DOUBLE_EQ(BinaryEntropy(0.5), 1.0);
  EXPECT_EQ(BinaryEntropy(0.0), 0.0);
  EXPECT_EQ(BinaryEntropy(1.0), 0.0);
  EXPECT_NEAR(BinaryEntropy(0.25), 0.811278, 1e-6);
  EXPECT_NEAR(BinaryEntropy(0.11), oracle::H2(0.11), 1e-14);
}

TEST(BinaryEntropyTest, RejectsOutsideUnitInterval) {
  EXPECT_EQ(ErrorOf([] { BinaryEntropy(-0.01); }), ErrorCode::kDomain);
  EXPECT_EQ(ErrorOf([] { BinaryEntropy(1.5); }), ErrorCode::kDomain);
  EXPECT_EQ(ErrorOf([] { BinaryEntropy(std::nan("")); }), ErrorCode::kDomain);
}

TEST(EntropyTest, UniformAndDegenerate) {
  const std::vector<double> uniform(8, 0.125);
  EXPECT_NEAR(Entropy(uniform), 3.0, 1e-15);
  const std::vector<double> point = {0.0, 1.0, 0.0};
  EXPECT_EQ(Entropy(point), 0.0);
}

TEST(GaussianTest, CdfMatchesErfSeries) {
  const auto g1 = GaussianDistribution(1.0);
  EXPECT_EQ(g1.Cdf(0.0), 0.5);
  EXPECT_NEAR(g1.Cdf(-1.0), 0.158655, 1e-6);
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    const double expected = oracle::NormalCdf(x);
    EXPECT_NEAR(g1.Cdf(x), expected, 1e-12 * std::max(expected, 1e-300))
        << "x=" << x;
  }
  const auto g2 = GaussianDistribution(2.0);
  EXPECT_NEAR(g2.Cdf(1.3), oracle::NormalCdf(1.3, 2.0), 1e-15);
}

TEST(GaussianTest, QuantileMatchesBisection) {
  const auto g2 = GaussianDistribution(2.0);
  EXPECT_NEAR(g2.Quantile(0.158655), -2.0, 1e-5);
  for (double p : {1e-12, 1e-6, 0.001, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999999}) {
    const double expected = oracle::BisectQuantile(
        [](double x) { return oracle::NormalCdf(x, 2.0); }, p);
    EXPECT_NEAR(g2.Quantile(p), expected, 1e-9 * std::max(1.0, std::abs(expected)))
        << "p=" << p;
  }
  EXPECT_EQ(g2.Quantile(0.0), -INFINITY);
  EXPECT_EQ(g2.Quantile(1.0), INFINITY);
}

TEST(GaussianTest, RejectsNonPositiveSigma) {
  EXPECT_EQ(ErrorOf([] { GaussianDistribution(0.0); }), ErrorCode::kDomain);
  EXPECT_EQ(ErrorOf([] { GaussianDistribution(-1.0); }), ErrorCode::kDomain);
}

TEST(LaplaceTest, ClosedFormCdf) {
  const double sigma = 1.5;
  const double b = sigma / std::sqrt(2.0);
  const auto lap = LaplaceDistribution(sigma);
  for (double x : {-4.0, -1.0, -0.2, 0.3, 2.5}) {
    const double expected =
        x < 0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
    EXPECT_NEAR(lap.Cdf(x), expected, 1e-14);
    EXPECT_NEAR(lap.Pdf(x), std::exp(-std::abs(x) / b) / (2 * b), 1e-14);
  }
  EXPECT_DOUBLE_EQ(lap.variance(), sigma * sigma);
}

// Symmetry and inversion hold for every family and scale.
TEST(SymmetricDistributionProperty, EvenDensityAndInverse) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  std::uniform_real_distribution<double> ps(1e-9, 1 - 1e-9);
  for (const auto& d : {GaussianDistribution(0.3), GaussianDistribution(1.0),
                        GaussianDistribution(7.0), LaplaceDistribution(0.7),
                        LaplaceDistribution(2.0)}) {
    EXPECT_EQ(d.Cdf(0.0), 0.5);
    for (int i = 0; i < 500; ++i) {
      const double x = xs(gen) * d.sigma();
      EXPECT_NEAR(d.Pdf(x), d.Pdf(-x), 1e-15 * d.Pdf(x) + 1e-300);
      EXPECT_NEAR(d.Cdf(-x), 1.0 - d.Cdf(x), 1e-9);
      const double p = ps(gen);
      EXPECT_NEAR(d.Cdf(d.Quantile(p)), p, 1e-9);
    }
  }
}

TEST(SymmetricDistributionTest, SampleMomentsAndSymmetry) {
  Rng rng(5);
  const auto g = GaussianDistribution(1.0);
  const int n = 1'000'000;
  double sum = 0, sum2 = 0;
  int positive = 0;
  for (int i = 0; i < n; ++i) {
    const double x = g.Sample(rng);
    sum += x;
    sum2 += x * x;
    positive += x > 0;
  }
  EXPECT_NEAR(sum / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
  EXPECT_NEAR(static_cast<double>(positive) / n, 0.5, 0.002);
}

DiscreteJointSample Pairs(std::size_t a, std::size_t b) {
  DiscreteJointSample s;
  s.alphabet_a = a;
  s.alphabet_b = b;
  return s;
}

TEST(EmpiricalMiTest, CopyOfFairBit) {
  Rng rng(1);
  auto s = Pairs(2, 2);
  for (int i = 0; i < 1'000'000; ++i) {
    const std::uint32_t a = rng() >> 63;
    s.pairs.emplace_back(a, a);
  }
  EXPECT_NEAR(EmpiricalMutualInformation(s), 1.0, 0.005);
  EXPECT_NEAR(EmpiricalConditionalEntropy(s), 0.0, 1e-12);
}

TEST(EmpiricalMiTest, IndependentFairBits) {
  Rng rng(2);
  auto s = Pairs(2, 2);
  for (int i = 0; i < 1'000'000; ++i) {
    s.pairs.emplace_back(rng() >> 63, rng() >> 63);
  }
  EXPECT_LT(EmpiricalMutualInformation(s), 0.005);
  EXPECT_NEAR(EmpiricalConditionalEntropy(s), 1.0, 0.005);
}

TEST(EmpiricalMiTest, XorOfPairIsDetermined) {
  auto s = Pairs(4, 2);
  for (std::uint32_t x = 0; x < 2; ++x) {
    for (std::uint32_t y = 0; y < 2; ++y) {
      for (int rep = 0; rep < 25; ++rep) s.pairs.emplace_back(2 * x + y, x ^ y);
    }
  }
  // I(A;B) = H(B) = 1 when B is a function of A and fair.
  EXPECT_NEAR(EmpiricalMutualInformation(s), 1.0, 1e-12);
}

TEST(EmpiricalConditionalEntropyTest, NoisyCopy) {
  Rng rng(3);
  std::bernoulli_distribution flip(0.11);
  auto s = Pairs(2, 2);
  for (int i = 0; i < 1'000'000; ++i) {
    const std::uint32_t b = rng() >> 63;
    s.pairs.emplace_back(flip(rng) ? 1 - b : b, b);
  }
  EXPECT_NEAR(EmpiricalConditionalEntropy(s), 0.49993, 0.01);
}

TEST(EmpiricalConditionalEntropyTest, FunctionOfConditioner) {
  auto s = Pairs(3, 6);
  for (std::uint32_t b = 0; b < 6; ++b) s.pairs.emplace_back(b % 3, b);
  EXPECT_EQ(EmpiricalConditionalEntropy(s), 0.0);
}

TEST(EmpiricalMiTest, EmptySampleThrows) {
  const auto s = Pairs(2, 2);
  EXPECT_EQ(ErrorOf([&] { EmpiricalMutualInformation(s); }),
            ErrorCode::kEmptySample);
  EXPECT_EQ(ErrorOf([&] { EmpiricalConditionalEntropy(s); }),
            ErrorCode::kEmptySample);
}

TEST(JointCountsTest, AddCheckedRejectsOutOfAlphabet) {
  JointCounts c(2, 3);
  c.AddChecked(1, 2);
  EXPECT_EQ(c.total(), 1u);
  EXPECT_EQ(ErrorOf([&] { c.AddChecked(2, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(ErrorOf([&] { c.AddChecked(0, 3); }), ErrorCode::kInvalidArgument);
}

// A constant target spread over many observable bins has exactly zero
// entropy and leakage, with no rounding residue.
TEST(JointCountsTest, ConstantTargetIsExactlyZero) {
  JointCounts c(2, 64);
  for (std::size_t b = 0; b < 64; ++b) c.Add(1, b, 15625 + 7 * b);
  EXPECT_EQ(EmpiricalEntropyA(c), 0.0);
  EXPECT_EQ(EmpiricalConditionalEntropy(c), 0.0);
  EXPECT_EQ(EmpiricalMutualInformation(c), 0.0);
}

// Random count tables: MI = H(A) - H(A|B) exactly, both bounded, and
// merging is order-independent.
TEST(JointCountsProperty, IdentitiesOnRandomTables) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t na = 1 + gen() % 5, nb = 1 + gen() % 5;
    JointCounts a(na, nb), b(na, nb);
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        a.Add(i, j, gen() % 50);
        b.Add(i, j, gen() % 50);
      }
    }
    a.Add(0, 0);
    JointCounts ab = a, ba = b;
    ab.Merge(b);
    ba.Merge(a);
    EXPECT_EQ(ab.Probabilities(), ba.Probabilities());

    const double mi = EmpiricalMutualInformation(ab);
    const double ha = EmpiricalEntropyA(ab);
    const double hc = EmpiricalConditionalEntropy(ab);
    EXPECT_NEAR(mi, std::max(0.0, ha - hc), 1e-12);
    EXPECT_GE(mi, 0.0);
    EXPECT_LE(mi, std::log2(static_cast<double>(std::min(na, nb))) + 1e-12);
    EXPECT_LE(hc, ha + 1e-12);
  }
}

TEST(EmpiricalMiTest, ShrinksWithSampleSizeForIndependentPairs) {
  auto estimate = [](int n, std::uint64_t seed) {
    Rng rng(seed);
    JointCounts c(3, 3);
    for (int i = 0; i < n; ++i) c.Add(rng() % 3, rng() % 3);
    return EmpiricalMutualInformation(c);
  };
  double small = 0, large = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    small += estimate(1000, 100 + s);
    large += estimate(100000, 200 + s);
  }
  // Plug-in bias is (|A|-1)(|B|-1) / (2 n ln 2).
  EXPECT_GT(small, 10 * large);
  EXPECT_LT(large / 10, 4.0 / (2 * 100000 * std::log(2.0)));
}

TEST(ExactInformationTest, BinarySymmetricChannel) {
  const double e = 0.2;
  const std::vector<double> joint = {0.5 * (1 - e), 0.5 * e, 0.5 * e,
                                     0.5 * (1 - e)};
  EXPECT_NEAR(MutualInformation(joint, 2, 2), 1.0 - oracle::H2(e), 1e-14);
  EXPECT_NEAR(ConditionalEntropyAGivenB(joint, 2, 2), oracle::H2(e), 1e-14);
  EXPECT_NEAR(MarginalEntropyA(joint, 2, 2), 1.0, 1e-15);
  EXPECT_NEAR(MarginalEntropyB(joint, 2, 2), 1.0, 1e-15);
}

TEST(StdErrorTest, ScalesAsInverseRootN) {
  auto se = [](std::uint64_t scale) {
    JointCounts c(2, 2);
    c.Add(0, 0, 40 * scale);
    c.Add(0, 1, 10 * scale);
    c.Add(1, 0, 15 * scale);
    c.Add(1, 1, 35 * scale);
    return MutualInformationStdError(c);
  };
  EXPECT_GT(se(1), 0.0);
  EXPECT_NEAR(se(1) / se(100), 10.0, 1e-6);
}

}  // namespace
}  // namespace bioleak
