#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sgm/majorization.hpp"
#include "sgm/means.hpp"

namespace {

using namespace sgm;

Spectrum spec(std::vector<double> v) { return Spectrum::sorted(std::move(v)); }

TEST(Majorization, HandComputedCases) {
  EXPECT_TRUE(majorizes(spec({3, 0, 0}), spec({1, 1, 1})).verdict);
  EXPECT_FALSE(majorizes(spec({1, 1, 1}), spec({3, 0, 0})).verdict);
  EXPECT_TRUE(majorizes(spec({2, 1}), spec({2, 1})).verdict);
  // Totals differ: not majorization, but weak majorization holds.
  EXPECT_FALSE(majorizes(spec({4, 1}), spec({2, 1})).verdict);
  EXPECT_TRUE(weak_majorizes(spec({4, 1}), spec({2, 1})).verdict);
  EXPECT_FALSE(weak_majorizes(spec({2, 1}), spec({2, 2})).verdict);
}

TEST(Majorization, MarginsAreCumulative) {
  const auto r = log_majorizes(spec({8, 1}), spec({4, 2}));
  ASSERT_EQ(r.margins.size(), 2u);
  EXPECT_NEAR(r.margins[0], std::log(2.0), 1e-15);
  EXPECT_NEAR(r.margins[1], 0.0, 1e-15);
  EXPECT_TRUE(r.verdict);
  EXPECT_NEAR(r.worst_margin(), 0.0, 1e-15);
}

TEST(Majorization, DoublyStochasticImagesAreMajorized) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (auto& v : y) v = u(rng);
    const Eigen::VectorXd x = oracle::birkhoff_mix(n, rng) * y;
    std::vector<double> ys(y.begin(), y.end());
    std::vector<double> xs(x.begin(), x.end());
    EXPECT_TRUE(majorizes(spec(ys), spec(xs)).verdict) << trial;
    // Positive version through exponentials: x <_log y.
    std::vector<double> ey;
    std::vector<double> ex;
    for (double v : ys) ey.push_back(std::exp(v));
    for (double v : xs) ex.push_back(std::exp(v));
    EXPECT_TRUE(log_majorizes(spec(ey), spec(ex)).verdict) << trial;
  }
}

TEST(Majorization, InputValidation) {
  try {
    log_majorizes(spec({1, -1}), spec({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeEntry);
  }
  try {
    log_majorizes(spec({1, 0}), spec({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveSpectrum);
  }
  try {
    majorizes(spec({1, 0}), spec({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(RealSpectrum, RejectsRotation) {
  Matrix r(2, 2);
  r << 0.0, -1.0, 1.0, 0.0;
  try {
    real_spectrum(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonrealSpectrum);
  }
}

TEST(RealSpectrum, ProductOfPositiveMatrices) {
  const auto a = sample_pd(4, 1, 10.0);
  const auto b = sample_pd(4, 2, 10.0);
  const Spectrum direct = real_spectrum(a.matrix() * b.matrix());
  const Spectrum via = product_spectrum(a, b);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(direct[i], via[i], 1e-10 * via.largest());
}

TEST(KyFan, EndpointsAreSpectralAndTraceNorms) {
  const auto p = sample_pd(5, 9, 10.0);
  EXPECT_NEAR(ky_fan_norm(p.matrix(), 1), spectral_norm(p.matrix()), 1e-12);
  EXPECT_NEAR(ky_fan_norm(p.matrix(), 5), trace(p.hermitian()), 1e-11);
  EXPECT_THROW(ky_fan_norm(p.matrix(), 0), Error);
  EXPECT_THROW(ky_fan_norm(p.matrix(), 6), Error);
}

// The compound-matrix oracle and the eigenvalue route must agree, both on
// pairs where log majorization holds and on pairs where it does not.
TEST(CompoundOracle, AgreesWithEigenvalueRoute) {
  int holds = 0;
  int fails = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 4);
    const auto a = sample_pd(n, 2 * seed, 20.0);
    const auto b = sample_pd(n, 2 * seed + 1, 20.0);
    const auto geo = metric_mean(a, b, Weight(0.5));
    const auto spec_mean = spectral_mean(a, b, Weight(0.5));
    for (const auto& [x, y] : {std::pair{geo, spec_mean}, std::pair{a, b}}) {
      const bool eig = eig_log_majorizes(x.hermitian(), y.hermitian()).verdict;
      EXPECT_EQ(compound_cross_check(x, y), eig) << seed;
      (eig ? holds : fails) += 1;
    }
  }
  EXPECT_GT(holds, 150);
  EXPECT_GT(fails, 150);
}

TEST(CompoundOracle, LimitedToSmallDimensions) {
  const auto a = sample_pd(6, 1, 2.0);
  EXPECT_THROW(compound_cross_check(a, a), Error);
}

}  // namespace
