#pragma once

#include <vector>

#include "sds/quantize.hpp"
#include "sds/surface.hpp"

namespace sds {

/// Power series y^rho * sum_n c_n y^n solving the m = 0 radial equation in a
/// pole chart, written as  y u'' + p(y) u' + lambda q(y) u = 0  with
///   p = y * drift,  q = y * (f'^2 + 1),  lambda = 2E / h^2.
struct FrobeniusSeed {
  Pole pole;
  double expansion_point;  ///< z coordinate of the pole
  double exponent;         ///< rho
  double lambda;
  std::vector<double> coefficients;
  int order;
  double radius_estimate;          ///< distance to the nearest singularity of p or q
  double max_recurrence_residual;  ///< relative, over all terms

  struct Value {
    double u;
    double du_dy;  ///< derivative in the chart offset
  };
  /// Sum at chart offset y > 0. Throws NumericalError if the tail has not
  /// decayed (start offset too large for the order).
  Value evaluate(double y) const;
};

/// Coefficient series of p(y) and q(y) in the chart of `pole`, to the given order.
struct ChartSeries {
  std::vector<double> p;
  std::vector<double> q;
  double radius_estimate;
};
ChartSeries chart_series(const SurfaceProfile& profile, Pole pole, int order);

/// Series for exponent rho, normalized to c_0 = 1.
FrobeniusSeed frobenius_series(const SurfaceProfile& profile, Pole pole, double E, double h, double rho,
                               int order);

/// Solution analytic at z1, normalized u(z1) = 1. Independent of alpha.
FrobeniusSeed frobenius_regular_seed(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                     int order = 12);

}  // namespace sds
