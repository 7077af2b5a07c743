#include "sds/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sds/detail/quadrature.hpp"
#include "sds/errors.hpp"

namespace sds {

namespace {

void require_ordered(const SurfaceProfile& p) {
  if (!(p.z0() < p.z1())) throw DomainError("surface profile requires z0 < z1");
}

std::vector<double> derive(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
  return d;
}

}  // namespace

SurfaceProfile::SurfaceProfile(double z0, double z1, ProfilePolynomial omega)
    : z0_(z0), z1_(z1), omega_(std::move(omega)) {
  if (!std::isfinite(z0) || !std::isfinite(z1)) throw DomainError("pole coordinates must be finite");
}

ProfileDerivatives eval_profile(const SurfaceProfile& profile, double z) {
  require_ordered(profile);
  if (!(z > profile.z0() && z < profile.z1()))
    throw DomainError("profile derivatives need z strictly inside (z0, z1); got z = " + format_double(z));
  const double z0 = profile.z0();
  const double z1 = profile.z1();
  // g = (z1 - z)(z - z0), r = sqrt(g)
  const double left = z - z0;
  const double right = z1 - z;
  const double g = right * left;
  const double dg = right - left;
  const double r = std::sqrt(g);
  const double dr = dg / (2.0 * r);
  const double d2r = (-4.0 * g - dg * dg) / (4.0 * g * r);
  const PolyValue w = profile.omega().eval(z);
  return {r * w.value, dr * w.value + r * w.d1, d2r * w.value + 2.0 * dr * w.d1 + r * w.d2};
}

double profile_value(const SurfaceProfile& profile, double z) {
  require_ordered(profile);
  if (z < profile.z0() || z > profile.z1())
    throw DomainError("profile is defined on [z0, z1]; got z = " + format_double(z));
  return std::sqrt((profile.z1() - z) * (z - profile.z0())) * profile.omega()(z);
}

MetricAtPoint metric_at(const SurfaceProfile& profile, double z, double theta) {
  if (!(std::abs(theta) < std::numbers::pi / 2))
    throw DomainError("metric needs |theta| < pi/2; got theta = " + format_double(theta));
  const auto d = eval_profile(profile, z);
  const double gzz = d.f_prime * d.f_prime + 1.0;
  const double f2 = d.f * d.f;
  const double c = std::cos(theta);
  return {gzz, f2, f2 * c * c, f2 * std::sqrt(gzz) * c};
}

// --- PoleChart --------------------------------------------------------------

PoleChart::PoleChart(const SurfaceProfile& profile, Pole pole)
    : pole_(pole),
      length_(profile.length()),
      origin_(profile.pole_coordinate(pole)),
      sign_(pole == Pole::left ? 1.0 : -1.0) {
  require_ordered(profile);
  omega_local_ = profile.omega().shifted(origin_, sign_);
  omega_local_d1_ = derive(omega_local_);
  omega_local_d2_ = derive(omega_local_d1_);
}

double PoleChart::z_at(double x) const { return origin_ + sign_ * x; }

PoleChart::Local PoleChart::local(double x, double complement) const {
  const double w = series::evaluate(omega_local_, x);
  const double w1 = series::evaluate(omega_local_d1_, x);
  const double w2 = series::evaluate(omega_local_d2_, x);
  const double W = w * w;
  const double dW = 2.0 * w * w1;
  const double d2W = 2.0 * (w1 * w1 + w * w2);
  return {complement * W, -W + complement * dW, -2.0 * dW + complement * d2W};
}

RadialCoefficients PoleChart::radial(double x, std::optional<double> complement) const {
  const double c = complement.value_or(length_ - x);
  if (!(x > 0.0) || !(c > 0.0)) throw DomainError("radial coefficients need an interior offset");
  const Local l = local(x, c);
  const double F = x * l.P;
  const double dF = l.P + x * l.dP;
  const double d2F = 2.0 * l.dP + x * l.d2P;
  const double s = dF * dF + 4.0 * F;
  RadialCoefficients r{};
  r.f = std::sqrt(F);
  r.f_x = dF / (2.0 * r.f);
  r.metric = s / (4.0 * F);
  r.drift = dF * (3.0 * dF * dF + 8.0 * F - 2.0 * F * d2F) / (2.0 * F * s);
  return r;
}

std::vector<double> PoleChart::p_polynomial() const {
  const std::size_t order = 2 * (omega_local_.size() - 1) + 1;
  auto W = series::multiply(omega_local_, omega_local_, order);
  // (L - x) * W
  std::vector<double> P(order + 1, 0.0);
  for (std::size_t i = 0; i <= order; ++i) {
    P[i] += length_ * W[i];
    if (i > 0) P[i] -= W[i - 1];
  }
  return P;
}

double PoleChart::arc_integrand_sqrt_chart(double t) const {
  const double x = t * t;
  const Local l = local(x, length_ - x);
  const double F = x * l.P;
  const double dF = l.P + x * l.dP;
  return std::sqrt((dF * dF + 4.0 * F) / l.P);
}

double PoleChart::arc_integrand_sine_chart(double u) const {
  const double s = std::sin(u);
  const double c = std::cos(u);
  const double x = length_ * s * s;
  const double comp = length_ * c * c;
  const double w = series::evaluate(omega_local_, x);
  const Local l = local(x, comp);
  const double F = x * l.P;
  const double dF = l.P + x * l.dP;
  return std::sqrt(dF * dF + 4.0 * F) / std::abs(w);
}

// --- distances ---------------------------------------------------------------

double meridian_length(const SurfaceProfile& profile) {
  const PoleChart chart(profile, Pole::left);
  return detail::integrate([&](double u) { return chart.arc_integrand_sine_chart(u); }, 0.0,
                           std::numbers::pi / 2)
      .value;
}

double distance_from_pole_offset(const SurfaceProfile& profile, Pole pole, double offset) {
  const double L = profile.length();
  if (!(offset >= 0.0) || offset > L)
    throw DomainError("pole offset must lie in [0, z1 - z0]; got " + format_double(offset));
  if (offset == 0.0) return 0.0;
  if (offset > 0.5 * L) {
    const Pole other = pole == Pole::left ? Pole::right : Pole::left;
    return meridian_length(profile) - distance_from_pole_offset(profile, other, L - offset);
  }
  const PoleChart chart(profile, pole);
  return detail::integrate([&](double t) { return chart.arc_integrand_sqrt_chart(t); }, 0.0,
                           std::sqrt(offset))
      .value;
}

double geodesic_distance_from_pole(const SurfaceProfile& profile, double z, Pole pole) {
  require_ordered(profile);
  if (z < profile.z0() || z > profile.z1())
    throw DomainError("geodesic distance needs z in [z0, z1]; got z = " + format_double(z));
  const double offset = pole == Pole::left ? z - profile.z0() : profile.z1() - z;
  return distance_from_pole_offset(profile, pole, offset);
}

double near_pole_coefficient(const SurfaceProfile& profile, Pole pole) {
  return std::sqrt(profile.length()) * profile.omega()(profile.pole_coordinate(pole));
}

// --- validation --------------------------------------------------------------

ValidationReport validate_profile(const SurfaceProfile& profile) {
  ValidationReport rep;
  rep.ordered = profile.z0() < profile.z1();
  if (!rep.ordered) {
    rep.messages.push_back("z0 < z1 violated: z0 = " + format_double(profile.z0()) +
                           ", z1 = " + format_double(profile.z1()));
    rep.passed = false;
    return rep;
  }
  const double z0 = profile.z0();
  const double z1 = profile.z1();
  const auto& omega = profile.omega();
  constexpr int kSamples = 512;

  std::vector<double> candidates;
  candidates.reserve(kSamples + 8);
  for (int i = 0; i < kSamples; ++i) candidates.push_back(z0 + (z1 - z0) * i / (kSamples - 1));

  // Interior critical points of omega, bracketed on the sample grid.
  const ProfilePolynomial domega = omega.derivative();
  auto bisect = [](const auto& fn, double a, double b) {
    double fa = fn(a);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      const double fm = fn(m);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };
  for (int i = 0; i + 1 < kSamples; ++i) {
    const double a = z0 + (z1 - z0) * i / (kSamples - 1);
    const double b = z0 + (z1 - z0) * (i + 1) / (kSamples - 1);
    if ((domega(a) < 0.0) != (domega(b) < 0.0))
      candidates.push_back(bisect([&](double z) { return domega(z); }, a, b));
  }

  rep.min_omega = omega(z0);
  rep.argmin_omega = z0;
  for (double z : candidates) {
    const double w = omega(z);
    if (w < rep.min_omega) {
      rep.min_omega = w;
      rep.argmin_omega = z;
    }
  }

  rep.min_f_interior = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < kSamples; ++i) {
    const double z = z0 + (z1 - z0) * i / (kSamples - 1);
    rep.min_f_interior = std::min(rep.min_f_interior, profile_value(profile, z));
  }

  if (rep.min_omega > 0.0) {
    rep.passed = true;
    return rep;
  }
  rep.passed = false;
  // Locate the violation at the first sign change of omega, or at its minimum.
  std::optional<double> root;
  for (int i = 0; i + 1 < kSamples && !root; ++i) {
    const double a = z0 + (z1 - z0) * i / (kSamples - 1);
    const double b = z0 + (z1 - z0) * (i + 1) / (kSamples - 1);
    const double wa = omega(a);
    const double wb = omega(b);
    if (wa == 0.0) root = a;
    else if ((wa < 0.0) != (wb < 0.0)) root = bisect([&](double z) { return omega(z); }, a, b);
  }
  rep.violation_at = root.value_or(rep.argmin_omega);
  rep.messages.push_back("omega(z) > 0 on [z0, z1] violated near z = " + format_double(*rep.violation_at) +
                         " (min omega = " + format_double(rep.min_omega) + ")");
  return rep;
}

}  // namespace sds
