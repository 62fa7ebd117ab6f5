#include "gausstv/erf_kernel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gausstv/error.hpp"
#include "gausstv/oracle.hpp"
#include "support.hpp"

namespace gausstv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(ErfApprox, Examples) {
  EXPECT_EQ(erf_approx(0.0, 1e-6), 0.0);
  EXPECT_EQ(erf_approx(30.0, 1e-6), 1.0);
  EXPECT_NEAR(erf_approx(1.0, 1e-9), 0.8427007929497148693, 1e-9);
}

TEST(ErfApprox, Constant) {
  EXPECT_DOUBLE_EQ(inv_pi_scaled_constant(), 1.1283791670955125739);
  EXPECT_GT(inv_pi_scaled_constant(), 1.128);
  EXPECT_LT(inv_pi_scaled_constant(), 1.129);
  for (double x : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(erf_approx(x, 1e-12), oracle::erf_reference(x), 1e-12);
  }
}

TEST(ErfApprox, AgreesWithReferenceOnGrid) {
  for (double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
    for (int i = 0; i <= 200; ++i) {
      const double x = 0.1 * i;
      ASSERT_LE(std::abs(erf_approx(x, eps) - oracle::erf_reference(x)), eps)
          << "x=" << x << " eps=" << eps;
    }
  }
}

// Budgets below double resolution are met up to a couple of ulps of 1.
TEST(ErfApprox, TightBudgets) {
  for (double eps : {1e-15, 1e-20, 1e-30}) {
    for (double x : {0.3, 1.7, 2.5, 4.0, 6.0, 9.0}) {
      const double ref = oracle::erf_reference(x);
      EXPECT_LE(std::abs(erf_approx(x, eps) - ref), std::max(eps, 2 * std::numeric_limits<double>::epsilon())) << x;
    }
  }
}

TEST(ErfApprox, MonotoneUpToSlack) {
  for (double eps : {1e-3, 1e-9}) {
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double y = erf_approx(0.01 * i, eps);
      EXPECT_GE(y, prev - 2 * eps);
      prev = y;
    }
  }
}

TEST(ErfApprox, Errors) {
  EXPECT_THROW(erf_approx(-1.0, 1e-6), Error);
  EXPECT_THROW(erf_approx(std::nan(""), 1e-6), Error);
  EXPECT_THROW(erf_approx(1.0, 0.0), Error);
  try {
    erf_approx(1.0, 1e-31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetTooTight);
  }
}

TEST(IntervalMass, Examples) {
  EXPECT_NEAR(gaussian_interval_mass(0, 1, -kInf, kInf, 1e-6), 1.0, 1e-6);
  EXPECT_NEAR(gaussian_interval_mass(0, 1, 0, kInf, 1e-6), 0.5, 1e-6);
  EXPECT_NEAR(gaussian_interval_mass(0, 1, -1, 1, 1e-9), 0.6826894921370858972, 1e-9);
  EXPECT_EQ(gaussian_interval_mass(0, 1, 2, 2, 1e-9), 0.0);
}

TEST(IntervalMass, Errors) {
  try {
    gaussian_interval_mass(0, 1, 1, 0, 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInterval);
  }
  try {
    gaussian_interval_mass(0, 0, 0, 1, 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonpositiveVariance);
  }
}

TEST(IntervalMass, FarTailKeepsRelativeAccuracy) {
  // P[Z > 8] = erfc(8/√2)/2 ≈ 6.22096057427178e-16
  EXPECT_NEAR(gaussian_interval_mass(0, 1, 8, kInf, 1e-20), 6.22096057427178e-16, 1e-28);
}

TEST(IntervalMass, Additivity) {
  testing::Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    const double mu = testing::uniform(rng, -3, 3);
    const double s2 = std::exp(testing::uniform(rng, -3, 3));
    double p[3] = {testing::uniform(rng, -8, 8), testing::uniform(rng, -8, 8), testing::uniform(rng, -8, 8)};
    std::sort(p, p + 3);
    const double eps = std::pow(10.0, -testing::uniform(rng, 3, 14));
    const double whole = gaussian_interval_mass(mu, s2, p[0], p[2], eps);
    const double parts = gaussian_interval_mass(mu, s2, p[0], p[1], eps) +
                         gaussian_interval_mass(mu, s2, p[1], p[2], eps);
    EXPECT_NEAR(whole, parts, 3 * eps);
  }
}

TEST(IntervalMass, TranslationAndScaleInvariance) {
  testing::Rng rng(8);
  for (int t = 0; t < 2000; ++t) {
    const double mu = testing::uniform(rng, -3, 3);
    const double s2 = std::exp(testing::uniform(rng, -3, 3));
    const double s = std::sqrt(s2);
    double a = testing::uniform(rng, -8, 8), b = testing::uniform(rng, -8, 8);
    if (a > b) std::swap(a, b);
    const double eps = std::pow(10.0, -testing::uniform(rng, 3, 14));
    EXPECT_NEAR(gaussian_interval_mass(mu, s2, a, b, eps),
                gaussian_interval_mass(0, 1, (a - mu) / s, (b - mu) / s, eps), 2 * eps);
  }
}

}  // namespace
}  // namespace gausstv
