#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sds/errors.hpp"
#include "sds/localfield.hpp"
#include "sds/quantize.hpp"
#include "sds/specfun.hpp"

using namespace sds;
constexpr double kPi = std::numbers::pi;

namespace {
const SurfaceProfile kSphere = SurfaceProfile::round_sphere();
SurfaceProfile tilted() { return SurfaceProfile(-1.0, 1.0, ProfilePolynomial{1.0, 0.3}); }

SpectralParams params(double h, double ratio) { return SpectralParams{h, ratio * h * h * h, 0, 1e-3, 1.0}; }

double derived_root_near(const SurfaceProfile& p, const SpectralParams& sp, double target) {
  const auto s = enumerate_spectrum(p, sp, QuantizationMode::derived);
  double best = s.entries.front().E;
  for (const auto& e : s.entries)
    if (std::abs(e.E - target) < std::abs(best - target)) best = e.E;
  return best;
}
}  // namespace

TEST(LangerFrame, HamiltonJacobiExamples) {
  const LangerFrame frame(kSphere, 0.5, 0.1);
  EXPECT_NEAR(frame.S(1.0), kPi * kPi / 4, 1e-10);
  EXPECT_NEAR(hamilton_jacobi_S(kSphere, 0.5, 0.0), kPi * kPi / 16, 1e-12);
  EXPECT_DOUBLE_EQ(hamilton_jacobi_S(kSphere, 0.5, -1.0), 0.0);
  EXPECT_THROW(hamilton_jacobi_S(kSphere, 0.5, 1.0), DomainError);
  // S ~ E a0^2 (z - z0) / 2 with a0 = sqrt(2).
  EXPECT_NEAR(frame.S_offset(1e-8) / 1e-8, 0.5, 1e-6);
  EXPECT_GT(frame.S_prime_offset(1e-8), 0.0);
}

TEST(LangerFrame, CoefficientKIsOne) {
  for (const auto& p : {kSphere, tilted()}) {
    const LangerFrame frame(p, 0.7, 0.1);
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) worst = std::max(worst, std::abs(frame.k_at(-1.0 + 2.0 * i / 101.0) - 1.0));
    EXPECT_LE(worst, 1e-10);
  }
}

TEST(LangerFrame, TwoSqrtTauIsScaledDistance) {
  const double E = 0.4, h = 0.07;
  const auto p = tilted();
  const LangerFrame frame(p, E, h);
  for (int i = 1; i < 40; ++i) {
    const double z = -1.0 + 2.0 * i / 40.0;
    const double lhs = 2.0 * std::sqrt(frame.tau(z));
    const double rhs = std::sqrt(2 * E) / h * geodesic_distance_from_pole(p, z, Pole::left);
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, rhs));
  }
}

TEST(LangerFrame, PoleLimitOfN) {
  for (const auto& p : {kSphere, tilted()}) {
    const auto lim = langer_n_pole_limit(p, 0.5);
    EXPECT_NEAR(lim.extrapolated, 1.5, 1e-4);
    EXPECT_GT(std::abs(lim.extrapolated - lim.printed_claim), 0.4);
    EXPECT_EQ(lim.values.size(), 3u);
  }
  EXPECT_TRUE(std::isfinite(langer_n(kSphere, 0.5, 0.3)));
}

TEST(NearPoleSolution, CoefficientLaws) {
  for (double alpha : {1e-4, 3e-3, 0.2}) {
    for (double E : {0.1, 0.5}) {
      const SpectralParams sp{0.1, alpha};
      const auto paper = near_pole_solution(sp, E, QuantizationMode::paper);
      EXPECT_NEAR(paper.A1 * 2 * 1e-3, -std::sqrt(2 * E) * alpha, 1e-15 * std::sqrt(2 * E) * alpha);
      EXPECT_DOUBLE_EQ(paper.A2, 1.0);
      const auto derived = near_pole_solution(sp, E, QuantizationMode::derived);
      EXPECT_NEAR(derived.cos_over_sin(), -alpha * std::sqrt(2 * E) / (2 * kPi * 1e-3),
                  1e-13 * alpha * std::sqrt(2 * E) / 1e-3);
    }
  }
}

TEST(NearPoleValue, PaperModeSmallArgument) {
  // (2/t)(A1 Y1(t) + J1(t)) -> -4 A1 / (pi t^2) + 1 as t -> 0: a d^-2 singularity,
  // not the d^-1 growth the boundary condition needs.
  const SpectralParams sp{0.1, 1e-3};
  const double E = 0.5;
  const double A1 = near_pole_solution(sp, E, QuantizationMode::paper).A1;
  const double k = std::sqrt(2 * E) / sp.h;
  for (double d : {1e-4, 1e-5}) {
    const double t = k * d;
    const double v = near_pole_value_at_distance(sp, E, d, QuantizationMode::paper);
    EXPECT_NEAR((v - 1.0) / (-4 * A1 / (kPi * t * t)), 1.0, 1e-5);
  }
}

TEST(NearPoleValue, DerivedModeWithoutCouplingIsRegular) {
  const SpectralParams sp{0.1, 0.0};
  EXPECT_NEAR(near_pole_value(kSphere, sp, 0.5, -1.0 + 1e-12, QuantizationMode::derived), 1.0, 1e-9);
  EXPECT_THROW(near_pole_value(kSphere, sp, 0.5, -1.0, QuantizationMode::derived), DomainError);
  EXPECT_THROW(near_pole_value(kSphere, sp, 0.5, 0.5, QuantizationMode::derived), DomainError);
}

TEST(BoundaryData, SyntheticInputs) {
  const std::vector<double> d{0.01, 0.02, 0.05, 0.1};
  std::vector<double> v1, v2;
  for (double x : d) {
    v1.push_back(3.0 / x + 5.0);
    v2.push_back(7.0);
  }
  const auto a = fit_boundary_data(d, v1, 2);
  EXPECT_NEAR(a.a, -12 * kPi, 1e-10);
  EXPECT_NEAR(a.b, 5.0, 1e-10);
  const auto b = fit_boundary_data(d, v2, 2);
  EXPECT_NEAR(b.a, 0.0, 1e-10);
  EXPECT_NEAR(b.b, 7.0, 1e-12);
  const std::vector<double> same{0.01, 0.01, 0.01};
  EXPECT_THROW(fit_boundary_data(same, std::vector<double>{1.0, 1.0, 1.0}, 2), NumericalError);
}

TEST(BoundaryData, SamplesThroughGeodesicDistance) {
  const auto p = tilted();
  std::vector<PoleSample> s;
  for (double x : {1e-6, 1e-5, 1e-4}) s.push_back({x, 2.0 / distance_from_pole_offset(p, Pole::left, x) - 1.0});
  const auto bd = extract_boundary_data(s, p);
  EXPECT_NEAR(bd.a, -8 * kPi, 1e-8);
  EXPECT_NEAR(bd.b, -1.0, 1e-9);
  std::vector<std::pair<double, double>> zs;
  for (const auto& x : s) zs.emplace_back(p.z0() + x.offset, x.value);
  EXPECT_NEAR(extract_boundary_data_z(zs, p).a, bd.a, 1e-8);
}

TEST(BoundaryData, DerivedNearPoleBranchCarriesCouplingRatio) {
  for (const auto& p : {kSphere, tilted()}) {
    const SpectralParams sp{0.1, 1e-3};
    const double E = 0.5;
    std::vector<PoleSample> s;
    for (int i = 0; i < 16; ++i) {
      const double x = 1e-6 * std::pow(100.0, i / 15.0);
      s.push_back({x, near_pole_value(p, sp, E, p.z0() + x, QuantizationMode::derived)});
    }
    const auto bd = extract_boundary_data(s, p, 4);
    const double target = 2 * sp.alpha / (sp.h * sp.h);
    EXPECT_NEAR(bd.a / bd.b / target, 1.0, 1e-4);
  }
}

TEST(OuterWkb, PhaseAndAmplitudeExamples) {
  const SpectralParams sp{0.1, 0.0};
  EXPECT_NEAR(outer_wkb_phase(kSphere, sp, 0.5, 1.0), 10 * kPi, 1e-10);
  EXPECT_NEAR(outer_wkb_amplitude(kSphere, 0.5, 0.0, QuantizationMode::derived), 1.0, 1e-15);
  EXPECT_THROW(outer_wkb_value(kSphere, sp, 0.5, -1.0 + 1e-9, QuantizationMode::derived), DomainError);
  double prev = -1.0;
  for (int i = 1; i < 50; ++i) {
    const double ph = outer_wkb_phase(tilted(), sp, 0.5, -1.0 + 2.0 * i / 50.0);
    EXPECT_GT(ph, prev);
    prev = ph;
  }
  const auto outer = outer_solution(kSphere, sp, 0.5, QuantizationMode::derived);
  EXPECT_NEAR(outer.total_phase, 10 * kPi, 1e-10);
  EXPECT_GT(outer_wkb_amplitude(tilted(), 0.5, 0.3, QuantizationMode::paper), 0.0);
}

TEST(OuterWkb, ConvergesToExactSphereSolution) {
  // The solution regular at z1 is sin(kappa s1) / sin s1, s1 the arc distance to z1,
  // kappa = sqrt(2E/h^2 + 1). The WKB branch uses sqrt(2E)/h in place of kappa; the
  // phase slip (kappa - k) s1 ~ h s1 / (2 sqrt(2E)) makes the error first order in h.
  const double E = 0.5;
  auto max_error = [&](double h) {
    const SpectralParams sp{h, 0.0};
    const double kappa = std::sqrt(2 * E / (h * h) + 1.0);
    double err = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double z = -0.5 + i / 200.0;
      const double s1 = std::acos(z);
      const double exact = std::sin(kappa * s1) / std::sin(s1);
      err = std::max(err, std::abs(outer_wkb_value(kSphere, sp, E, z, QuantizationMode::derived) - exact));
    }
    return err;
  };
  const double e1 = max_error(0.1), e2 = max_error(0.05), e3 = max_error(0.025);
  EXPECT_LT(e2, e1);
  EXPECT_LT(e3, e2);
  EXPECT_NEAR(e1 / e2, 2.0, 0.3);
  EXPECT_NEAR(e2 / e3, 2.0, 0.3);
}

TEST(Glue, ResidualSmallAtRootAndLargeBetweenRoots) {
  const auto sp = params(0.05, 1.0);
  const auto s = enumerate_spectrum(kSphere, sp, QuantizationMode::derived);
  const double E = derived_root_near(kSphere, sp, 0.5);
  const auto g = glue(kSphere, sp, E, QuantizationMode::derived);
  EXPECT_LE(g.matching_residual, 0.05);
  EXPECT_FALSE(g.warning);
  EXPECT_LT(g.cut_inner, g.cut_outer);

  std::size_t i = 0;
  while (s.entries[i].E < E) ++i;
  const double mid = 0.5 * (s.entries[i].E + s.entries[i + 1].E);
  const auto off = glue(kSphere, sp, mid, QuantizationMode::derived);
  EXPECT_GT(off.matching_residual, 0.5);
  EXPECT_TRUE(off.warning);
}

TEST(Glue, TagsArePartitionedInOrder) {
  const auto sp = params(0.1, 1.0);
  const auto g = glue(tilted(), sp, derived_root_near(tilted(), sp, 0.5), QuantizationMode::derived);
  ASSERT_EQ(g.values.size(), g.grid.size());
  ASSERT_EQ(g.tags.size(), g.grid.size());
  EXPECT_EQ(g.tags.front(), BranchTag::inner);
  EXPECT_EQ(g.tags.back(), BranchTag::outer);
  for (std::size_t i = 1; i < g.tags.size(); ++i) EXPECT_GE(g.tags[i], g.tags[i - 1]);
  for (double v : g.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Glue, NoCouplingIsFiniteAtThePole) {
  const SpectralParams sp{0.1, 0.0};
  const auto g = glue(kSphere, sp, 0.08, QuantizationMode::derived);
  // Inner branch is j0(k d) with no Neumann part; the first grid point sits just off the pole.
  const double d = geodesic_distance_from_pole(kSphere, g.grid.front(), Pole::left);
  EXPECT_NEAR(g.values.front(), spherical_j0(std::sqrt(2 * 0.08) / 0.1 * d), 1e-12);
  for (double v : g.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Glue, MatchingResidualDecreasesWithH) {
  for (const auto& p : {kSphere, tilted()}) {
    double prev = 1e300;
    for (double h : {0.2, 0.1, 0.05}) {
      const auto sp = params(h, 1.0);
      const double r = glue(p, sp, derived_root_near(p, sp, 0.5), QuantizationMode::derived).matching_residual;
      EXPECT_LT(r, prev) << h;
      prev = r;
    }
  }
}

TEST(RadialResidual, DecreasesAtDerivedRoots) {
  double prev = 1e300;
  for (double h : {0.1, 0.05}) {
    const auto sp = params(h, 1.0);
    const double E = derived_root_near(kSphere, sp, 0.5);
    const double r = radial_residual(kSphere, sp, E, glue(kSphere, sp, E, QuantizationMode::derived));
    EXPECT_LE(r, 0.1);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(RadialResidual, ExactSphereEigenfunctionHasNoResidual) {
  const double h = 0.1, kappa = 3.0;
  const double E = 0.5 * h * h * (kappa * kappa - 1.0);
  const SpectralParams sp{h, 0.0};
  GluedEigenfunction g;
  const int n = 200001;
  const double x0 = 1e-4 * 2.0;
  g.spacing = (2.0 - 2 * x0) / (n - 1);
  g.cap = 5e-3 * 2.0;
  for (int i = 0; i < n; ++i) {
    const double x = x0 + g.spacing * i;
    const double s = std::acos(1.0 - x);  // z = -cos s
    g.offsets.push_back(x);
    g.grid.push_back(-1.0 + x);
    g.values.push_back(std::sin(kappa * s) / std::sin(s));
  }
  EXPECT_LE(radial_residual(kSphere, sp, E, g), 1e-6);
}

TEST(RadialResidual, CoarseGridIsRejected) {
  const auto sp = params(0.05, 1.0);
  const double E = derived_root_near(kSphere, sp, 0.5);
  GlueOptions opt;
  opt.grid_points = 101;
  EXPECT_THROW(radial_residual(kSphere, sp, E, glue(kSphere, sp, E, QuantizationMode::derived, opt)),
               ResolutionError);
}
