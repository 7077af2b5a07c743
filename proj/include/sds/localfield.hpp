#pragma once

#include <span>
#include <string>
#include <vector>

#include "sds/quantize.hpp"
#include "sds/surface.hpp"

namespace sds {

// --- Langer frame ------------------------------------------------------------

/// S(z) = ( (1/2) int_{z0}^{z} sqrt(2E(f'^2+1)) dt )^2, tau = S/h^2, and the
/// coefficients n(z), k(z) of the reference equation tau F'' + n F' + k F = 0.
class LangerFrame {
 public:
  LangerFrame(const SurfaceProfile& profile, double E, double h);

  double E() const { return E_; }
  double h() const { return h_; }

  double S(double z) const;
  double S_prime(double z) const;
  double tau(double z) const;
  double n_at(double z) const;
  double k_at(double z) const;
  /// p(z) = (z - z0)(2f'/f - f'f''/(f'^2+1)),  q(z) = (z - z0)(f'^2 + 1).
  double p_at(double z) const;
  double q_at(double z) const;

  /// Same quantities parametrized by the offset x = z - z0.
  double S_offset(double x) const;
  double S_prime_offset(double x) const;
  double n_offset(double x) const;
  double k_offset(double x) const;

 private:
  SurfaceProfile profile_;
  PoleChart chart_;
  double E_;
  double h_;
};

double hamilton_jacobi_S(const SurfaceProfile& profile, double E, double z);
double langer_n(const SurfaceProfile& profile, double E, double z);

struct LangerPoleLimit {
  double extrapolated;               ///< Richardson limit of n(z) as z -> z0
  std::vector<double> offsets;       ///< z - z0 used
  std::vector<double> values;        ///< n at those offsets
  double printed_claim = 2.0;        ///< value stated with the Bessel-order-1 reference model
  double direct_expansion = 1.5;     ///< value from expanding the radial equation at the pole
};

LangerPoleLimit langer_n_pole_limit(const SurfaceProfile& profile, double E,
                                    std::vector<double> offsets = {1e-2, 1e-3, 1e-4});

// --- near-pole solution ------------------------------------------------------

/// Near-pole branch  A1 * singular(t) + A2 * regular(t),  t = sqrt(2E) d / h = 2 sqrt(tau).
///   paper:   singular = tau^{-1/2} Y1(2 sqrt(tau)), regular = tau^{-1/2} J1(2 sqrt(tau)),
///            A1 = -sqrt(2E) alpha / (2 h^3), A2 = 1
///   derived: singular = y0(t), regular = j0(t), i.e. (A sin t + B cos t)/t with
///            A = A2 = 1 and B = -A1, B/A = -alpha sqrt(2E) / (2 pi h^3)
struct NearPoleSolution {
  double A1;
  double A2;
  QuantizationMode mode;

  /// B/A of the local form (A sin kd + B cos kd)/d (derived mode only meaningful).
  double cos_over_sin() const { return -A1 / A2; }
};

NearPoleSolution near_pole_solution(const SpectralParams& params, double E, QuantizationMode mode);

double near_pole_value(const SurfaceProfile& profile, const SpectralParams& params, double E, double z,
                       QuantizationMode mode);
/// Evaluate the near-pole branch at a known geodesic distance d from z0.
double near_pole_value_at_distance(const SpectralParams& params, double E, double d, QuantizationMode mode);

// --- boundary data -----------------------------------------------------------

/// psi = -(a / 4 pi) / d + b + o(1) near the delta.
struct BoundaryData {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  ///< rms misfit of the least-squares fit
  int terms = 2;
};

struct PoleSample {
  double offset;  ///< z - z0
  double value;
};

/// Least-squares fit of samples to a Laurent basis in d = d(z, z0):
/// {1/d, 1} for terms = 2, extended by d, d^2, ... for larger terms.
BoundaryData extract_boundary_data(std::span<const PoleSample> samples, const SurfaceProfile& profile,
                                   int terms = 2);
/// Same with samples given as (z, value) pairs.
BoundaryData extract_boundary_data_z(std::span<const std::pair<double, double>> samples,
                                     const SurfaceProfile& profile, int terms = 2);
/// Fit with the geodesic distances already known.
BoundaryData fit_boundary_data(std::span<const double> distances, std::span<const double> values, int terms);

// --- outer WKB solution ------------------------------------------------------

/// Outer branch chi(z) cos(phase(z) + constant), phase(z) = sqrt(2E)/h * d(z, z0).
///   derived: chi = 1/f, solution regular at z1: sin(Phi - phase)/f, Phi = J(E)/h
///   paper:   chi = f^{-1/2} (f'^2+1)^{1/2} (printed amplitude, constants dropped),
///            constant = Phi + pi/4 (the value that reproduces the printed condition)
struct OuterSolution {
  QuantizationMode amplitude_mode;
  double wavenumber;      ///< sqrt(2E)/h
  double total_phase;     ///< Phi = J(E)/h
  double phase_constant;  ///< argument offset in the cos form
};

OuterSolution outer_solution(const SurfaceProfile& profile, const SpectralParams& params, double E,
                             QuantizationMode amplitude_mode);
double outer_wkb_value(const SurfaceProfile& profile, const SpectralParams& params, double E, double z,
                       QuantizationMode amplitude_mode);
double outer_wkb_phase(const SurfaceProfile& profile, const SpectralParams& params, double E, double z);
double outer_wkb_amplitude(const SurfaceProfile& profile, double E, double z, QuantizationMode amplitude_mode);

// --- glued eigenfunction -----------------------------------------------------

enum class BranchTag { inner, overlap, outer };
std::string to_string(BranchTag tag);

struct GlueOptions {
  /// Overlap starts at d_in = overlap_scale * sqrt(wavelength * L), wavelength = h / sqrt(2E).
  double overlap_scale = 0.5;
  /// First grid point sits this fraction of (z1 - z0) away from each pole.
  double pole_start_fraction = 1e-4;
  /// Pole caps excluded from the residual, as a fraction of (z1 - z0).
  double cap_fraction = 5e-3;
  /// Grid size; 0 picks enough points for 20 per local wavelength at the caps.
  int grid_points = 0;
  /// matching_residual above this raises the warning flag.
  double residual_bound = 0.05;
};

struct GluedEigenfunction {
  std::vector<double> grid;     ///< z samples, uniform
  std::vector<double> offsets;  ///< z - z0 at the samples
  std::vector<double> values;
  std::vector<BranchTag> tags;
  double spacing = 0.0;
  double cut_inner = 0.0;  ///< z where the partition starts tapering
  double cut_outer = 0.0;  ///< z where it reaches the outer branch
  double d_inner = 0.0;
  double cap = 0.0;        ///< pole cap (in z - offset) excluded from residuals
  double outer_scale = 1.0;
  /// sup over the overlap of |psi1 - s psi2| / envelope(psi1), the envelope being
  /// the large-argument amplitude of the inner branch.
  double matching_residual = 0.0;
  bool warning = false;
  double E = 0.0;
  QuantizationMode mode = QuantizationMode::derived;
};

GluedEigenfunction glue(const SurfaceProfile& profile, const SpectralParams& params, double E,
                        QuantizationMode mode, const GlueOptions& options = {});

/// ||(H - E) u|| / ||u|| of the m = 0 radial operator on the sampled function,
/// fourth-order finite differences, volume-weighted L2 over the grid minus the caps.
/// Throws ResolutionError when fewer than 10 points per local wavelength.
double radial_residual(const SurfaceProfile& profile, const SpectralParams& params, double E,
                       const GluedEigenfunction& eigfn);

}  // namespace sds
