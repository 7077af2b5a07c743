#include <cmath>

#include <gtest/gtest.h>

#include "sds/errors.hpp"
#include "sds/frobenius.hpp"

using namespace sds;

namespace {
const SurfaceProfile kSphere = SurfaceProfile::round_sphere();
SurfaceProfile tilted() { return SurfaceProfile(-1.0, 1.0, ProfilePolynomial{1.0, 0.3}); }
}  // namespace

TEST(FrobeniusSeed, NormalizedAndConsistent) {
  const SpectralParams sp{0.1, 1e-3};
  const auto seed = frobenius_regular_seed(tilted(), sp, 0.5);
  ASSERT_FALSE(seed.coefficients.empty());
  EXPECT_DOUBLE_EQ(seed.coefficients[0], 1.0);
  EXPECT_EQ(seed.exponent, 0.0);
  EXPECT_EQ(seed.pole, Pole::right);
  EXPECT_DOUBLE_EQ(seed.expansion_point, 1.0);
  EXPECT_LE(seed.max_recurrence_residual, 1e-12);
  EXPECT_GT(seed.radius_estimate, 0.1);
}

TEST(FrobeniusSeed, OrderSelfConsistency) {
  for (const auto& p : {kSphere, tilted()}) {
    const SpectralParams sp{0.1, 0.0};
    const auto a = frobenius_regular_seed(p, sp, 0.5, 12);
    const auto b = frobenius_regular_seed(p, sp, 0.5, 16);
    const double y = 2e-3;
    EXPECT_NEAR(a.evaluate(y).u, b.evaluate(y).u, 1e-10);
    EXPECT_NEAR(a.evaluate(y).du_dy, b.evaluate(y).du_dy, 1e-10 * std::abs(b.evaluate(y).du_dy) + 1e-10);
  }
}

TEST(FrobeniusSeed, IndependentOfCoupling) {
  const auto a = frobenius_regular_seed(tilted(), SpectralParams{0.1, 0.0}, 0.3);
  const auto b = frobenius_regular_seed(tilted(), SpectralParams{0.1, 5.0}, 0.3);
  EXPECT_EQ(a.coefficients, b.coefficients);
}

TEST(FrobeniusSeed, MatchesClosedFormOnSphere) {
  // Regular at z1: sin(kappa s1) / (kappa sin s1), s1 = arccos z.
  const double h = 0.1, E = 0.5;
  const double kappa = std::sqrt(2 * E / (h * h) + 1.0);
  const auto seed = frobenius_regular_seed(kSphere, SpectralParams{h, 0.0}, E, 24);
  for (double y : {1e-3, 1e-2, 5e-2}) {
    const double s1 = std::acos(1.0 - y);
    const double exact = std::sin(kappa * s1) / (kappa * std::sin(s1));
    EXPECT_NEAR(seed.evaluate(y).u, exact, 1e-11) << y;
  }
}

TEST(FrobeniusSeries, SingularBranchAtDeltaPole) {
  // Second solution at z0 on the sphere: cos(kappa s)/sin s ~ y^{-1/2}/sqrt(2).
  const double h = 0.1, E = 0.5;
  const double kappa = std::sqrt(2 * E / (h * h) + 1.0);
  const auto series = frobenius_series(kSphere, Pole::left, E, h, -0.5, 30);
  EXPECT_DOUBLE_EQ(series.exponent, -0.5);
  for (double y : {1e-4, 1e-3, 1e-2}) {
    const double s = std::acos(1.0 - y);  // arc from the left pole
    const double exact = std::sqrt(2.0) * std::cos(kappa * s) / std::sin(s);
    EXPECT_NEAR(series.evaluate(y).u / exact, 1.0, 1e-10) << y;
  }
}

TEST(FrobeniusSeries, Errors) {
  EXPECT_THROW(frobenius_series(kSphere, Pole::left, 0.5, 0.1, 0.3, 12), DomainError);
  EXPECT_THROW(frobenius_regular_seed(kSphere, SpectralParams{0.1, 0.0}, 0.5, 3), DomainError);
  const auto seed = frobenius_regular_seed(kSphere, SpectralParams{0.1, 0.0}, 0.5);
  EXPECT_THROW(seed.evaluate(10.0), NumericalError);
  EXPECT_THROW(seed.evaluate(-1e-3), DomainError);
}

TEST(ChartSeries, LeadingCoefficients) {
  // p(0) = beta = 3/2 and q(0) = a0^2 / 4 with d ~ a0 sqrt(y).
  for (const auto& p : {kSphere, tilted()}) {
    for (Pole pole : {Pole::left, Pole::right}) {
      const auto cs = chart_series(p, pole, 8);
      EXPECT_NEAR(cs.p[0], 1.5, 1e-14);
      EXPECT_GT(cs.q[0], 0.0);
      EXPECT_NEAR(cs.q[0], near_pole_coefficient(p, pole) * near_pole_coefficient(p, pole) / 4, 1e-13);
    }
  }
}
