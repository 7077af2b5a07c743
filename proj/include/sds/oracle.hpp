#pragma once

#include <utility>
#include <vector>

#include "sds/errors.hpp"
#include "sds/frobenius.hpp"
#include "sds/localfield.hpp"
#include "sds/quantize.hpp"
#include "sds/surface.hpp"

namespace sds {

/// Raised when the shooting solve fails; carries the energy it failed at.
class OracleError : public NumericalError {
 public:
  OracleError(const std::string& what, double energy) : NumericalError(what), energy_(energy) {}
  double energy() const noexcept { return energy_; }

 private:
  double energy_;
};

enum class IndicialConvention { paper, direct };

/// paper:  rho = (-1 +- sqrt(1 + m(m+1))) / 2
/// direct: roots of rho^2 + (beta - 1) rho - m^2/4 = 0 with beta = 3/2 the
///         pole limit of (z - z0) * drift; {0, -1/2} for m = 0.
std::pair<double, double> indicial_exponents(int m, IndicialConvention convention);

/// beta = lim (z - z0)(2f'/f - f'f''/(f'^2+1)) read off the chart series.
double near_pole_drift_limit(const SurfaceProfile& profile, Pole pole);

struct OracleOptions {
  double start_fraction = 1e-3;  ///< seed offset from z1, fraction of z1 - z0
  int seed_order = 12;
  double end_fraction = 1e-6;    ///< closest approach to z0, fraction of z1 - z0
  double fit_span = 10.0;        ///< fit samples in (end, fit_span * end)
  int fit_samples = 32;
  int fit_terms = 6;             ///< Laurent basis {1/d, 1, d, ..., d^4}
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int root_bits = 40;
  double scan_refine = 1.0;  ///< >1 makes the bracketing scan finer
  int threads = 1;
};

/// Values of the regular-at-z1 solution on the given left offsets (z - z0),
/// integrating the radial equation from z1 - eps towards z0.
std::vector<double> shoot_values(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                 const std::vector<double>& offsets, const OracleOptions& options = {});

/// Boundary data (a, b) of the regular-at-z1 solution at z0.
BoundaryData shoot(const SurfaceProfile& profile, const SpectralParams& params, double E,
                   const OracleOptions& options = {});

/// Cross-check: integrate to an interior point and match onto the two
/// Frobenius solutions at z0 (exponents 0 and -1/2).
BoundaryData shoot_frobenius_matched(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                     const OracleOptions& options = {}, double match_fraction = 0.02);

/// (a - c b) / sqrt(a^2 + (c^2 + k^2) b^2), c = 2 alpha / h^2, k = sqrt(2E)/h.
double mismatch(const SurfaceProfile& profile, const SpectralParams& params, double E,
                const OracleOptions& options = {});

struct OracleEigenvalue {
  double E;
  double mismatch_slope;
  double E_lo;
  double E_hi;
};

std::vector<OracleEigenvalue> oracle_spectrum(const SurfaceProfile& profile, const SpectralParams& params,
                                              const OracleOptions& options = {});

/// Round sphere (omega = 1 on [-1, 1]): kappa = sqrt(2E/h^2 + 1) solving
/// tan(pi kappa) = alpha kappa / (2 pi h^2), mapped to E in the window.
std::vector<double> sphere_exact_spectrum(const SpectralParams& params);

struct ExponentFit {
  double exponent;
  std::vector<double> offsets;
  std::vector<double> values;
};

/// Slope of log|u| against log(z - z0) for the shooting solution on
/// (lo_fraction, hi_fraction) * (z1 - z0).
ExponentFit fitted_singular_exponent(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                     double lo_fraction = 1e-9, double hi_fraction = 1e-7,
                                     const OracleOptions& options = {});

}  // namespace sds
