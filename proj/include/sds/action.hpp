#pragma once

#include <vector>

#include "sds/surface.hpp"

namespace sds {

/// J(E) = integral over the meridian of sqrt(2E (f'^2 + 1)) dz: half the action
/// of the closed meridian geodesic.
struct ActionValue {
  double J;
  double E;
  double quadrature_error_estimate;
};

ActionValue half_action(const SurfaceProfile& profile, double E);

/// dJ/dE = J / (2E) (J is homogeneous of degree 1/2 in E).
double action_energy_derivative(const SurfaceProfile& profile, double E);

/// Geodesic-flow Hamiltonian |p|^2 / 2 in (z, theta, phi) coordinates.
double hamiltonian(const SurfaceProfile& profile, double z, double theta, double p_z, double p_theta,
                   double p_phi);

struct OrbitSample {
  double t;
  double z;
  double p_z;
};

struct MeridianOrbit {
  std::vector<OrbitSample> samples;
  double closed_action = 0.0;
  double energy_drift = 0.0;
  double period = 0.0;
};

struct OrbitOptions {
  double tol = 1e-10;
  /// Clip margin as a fraction of z1 - z0; the caps are spliced analytically.
  double clip_fraction = 1e-3;
};

/// Integrates the meridian (p_theta = p_phi = 0) geodesic flow between the
/// clipped poles and closes the cycle through the caps.
MeridianOrbit integrate_meridian_orbit(const SurfaceProfile& profile, double E, OrbitOptions options = {});

}  // namespace sds
