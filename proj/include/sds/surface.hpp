#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/polynomial.hpp"

namespace sds {

enum class Pole { left, right };

/// Meridian profile f(z) = sqrt((z1 - z)(z - z0)) * omega(z) of a
/// three-dimensional surface of revolution with poles at z0 < z1.
/// The delta potential sits at the left pole z0.
class SurfaceProfile {
 public:
  SurfaceProfile(double z0, double z1, ProfilePolynomial omega);

  static SurfaceProfile round_sphere() { return SurfaceProfile(-1.0, 1.0, ProfilePolynomial{1.0}); }

  double z0() const { return z0_; }
  double z1() const { return z1_; }
  double length() const { return z1_ - z0_; }
  const ProfilePolynomial& omega() const { return omega_; }

  double pole_coordinate(Pole p) const { return p == Pole::left ? z0_ : z1_; }

 private:
  double z0_;
  double z1_;
  ProfilePolynomial omega_;
};

struct ProfileDerivatives {
  double f;
  double f_prime;
  double f_second;
};

/// Closed-form f, f', f'' at an interior point. Throws DomainError at or
/// beyond the poles, where f' diverges.
ProfileDerivatives eval_profile(const SurfaceProfile& profile, double z);
/// f alone; defined on the closed interval [z0, z1].
double profile_value(const SurfaceProfile& profile, double z);

struct MetricAtPoint {
  double g_zz;
  double g_theta_theta;
  double g_phi_phi;
  double sqrt_g;
};

MetricAtPoint metric_at(const SurfaceProfile& profile, double z, double theta);

/// Coefficients of the m = 0 radial equation written in a pole chart with
/// offset x >= 0 measured from the pole:  u'' + drift u' + metric (2E/h^2) u = 0.
struct RadialCoefficients {
  double f;
  double f_x;     ///< df/dx in the chart variable
  double metric;  ///< f'^2 + 1
  double drift;   ///< 2f'/f - f'f''/(f'^2+1), in the chart variable
};

/// Local description of the profile around one pole, in the offset variable
/// x = z - z0 (left) or x = z1 - z (right). Keeps x and the complementary
/// offset L - x as separate inputs so nothing cancels near either pole.
class PoleChart {
 public:
  PoleChart(const SurfaceProfile& profile, Pole pole);

  Pole pole() const { return pole_; }
  double length() const { return length_; }
  /// z coordinate of a point at offset x.
  double z_at(double x) const;

  /// Radial coefficients at offset x; complement defaults to L - x.
  RadialCoefficients radial(double x, std::optional<double> complement = std::nullopt) const;

  /// Exact polynomial P(x) = (L - x) omega(z(x))^2 with f^2 = x P(x).
  std::vector<double> p_polynomial() const;

  /// sqrt(f_x^2 + 1) dx/dt for x = t^2: smooth at the pole.
  double arc_integrand_sqrt_chart(double t) const;
  /// sqrt(f'^2 + 1) dz/du for x = L sin^2 u: smooth at both poles.
  double arc_integrand_sine_chart(double u) const;

 private:
  struct Local {
    double P, dP, d2P;
  };
  Local local(double x, double complement) const;

  Pole pole_;
  double length_;
  double origin_;
  double sign_;
  std::vector<double> omega_local_;
  std::vector<double> omega_local_d1_;
  std::vector<double> omega_local_d2_;
};

/// Meridian length  L = integral over [z0, z1] of sqrt(f'^2 + 1) dz.
double meridian_length(const SurfaceProfile& profile);

/// Geodesic distance along the meridian from the given pole to z in [z0, z1].
double geodesic_distance_from_pole(const SurfaceProfile& profile, double z, Pole pole);
/// Same, parametrized by the offset x from the pole (accurate for tiny x).
double distance_from_pole_offset(const SurfaceProfile& profile, Pole pole, double offset);

/// a0 = sqrt(z1 - z0) * omega(pole): the near-pole law d ~ a0 sqrt(x).
double near_pole_coefficient(const SurfaceProfile& profile, Pole pole);

struct ValidationReport {
  bool passed = false;
  bool ordered = false;
  double min_omega = 0.0;
  double argmin_omega = 0.0;
  double min_f_interior = 0.0;
  std::optional<double> violation_at;
  std::vector<std::string> messages;
};

ValidationReport validate_profile(const SurfaceProfile& profile);

}  // namespace sds
