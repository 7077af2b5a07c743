#pragma once

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sds/errors.hpp"

namespace sds::detail {

struct QuadResult {
  double value;
  double error;
};

/// Adaptive Gauss-Kronrod (61 point) on [a, b]. Integrands are expected to be
/// smooth on the closed interval; callers remove endpoint singularities first.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-13, unsigned max_depth = 18) {
  // Integrate over the unit interval: Boost's error estimate is not scale
  // invariant and reports spurious absolute errors on short intervals.
  const double width = b - a;
  double error = 0.0;
  double l1 = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double s) { return f(a + width * s); }, 0.0, 1.0, max_depth, rel_tol, &error, &l1);
  value *= width;
  error *= std::abs(width);
  l1 *= std::abs(width);
  const double allowed = 1e3 * rel_tol * std::max(l1, 1e-300);
  if (!std::isfinite(value) || error > allowed) {
    throw NumericalError("quadrature did not converge on [" + format_double(a) + ", " +
                             format_double(b) + "], achieved error " + format_double(error),
                         error);
  }
  return {value, error};
}

}  // namespace sds::detail
