#pragma once

// Slow, independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace sds::test {

using mp = boost::multiprecision::cpp_bin_float_50;

inline mp mp_pi() { return boost::math::constants::pi<mp>(); }
inline mp mp_euler() { return boost::math::constants::euler<mp>(); }

/// J_n(x) for n in {0, 1} by the ascending series at 50 digits.
inline double mp_bessel_j(int n, double xd) {
  const mp x = xd;
  const mp q = (x / 2) * (x / 2);
  mp term = n == 0 ? mp(1) : x / 2;
  mp sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (mp(k) * mp(k + n));
    sum += term;
    if (abs(term) < mp("1e-45")) break;
  }
  return static_cast<double>(sum);
}

/// Y_n(x) for n in {0, 1} by the logarithmic series at 50 digits.
inline double mp_bessel_y(int n, double xd) {
  const mp x = xd;
  const mp half = x / 2;
  const mp q = half * half;
  const mp gamma = mp_euler();
  const mp pi = mp_pi();
  // psi(m + 1) = -gamma + H_m
  if (n == 0) {
    mp term = 1, sum = 0, harmonic = 0;
    for (int k = 1; k < 400; ++k) {
      term *= -q / (mp(k) * mp(k));
      harmonic += mp(1) / k;
      sum -= term * harmonic;
      if (abs(term * harmonic) < mp("1e-45")) break;
    }
    return static_cast<double>(2 / pi * ((log(half) + gamma) * mp_bessel_j(0, xd) + sum));
  }
  mp j1 = 0;
  {
    mp t = half;
    j1 = t;
    for (int k = 1; k < 400; ++k) {
      t *= -q / (mp(k) * mp(k + 1));
      j1 += t;
      if (abs(t) < mp("1e-45")) break;
    }
  }
  mp term = half, hk = 0, hk1 = 1;
  mp sum = term * (-2 * gamma + hk + hk1);
  for (int k = 1; k < 400; ++k) {
    term *= -q / (mp(k) * mp(k + 1));
    hk += mp(1) / k;
    hk1 += mp(1) / (k + 1);
    const mp c = term * (-2 * gamma + hk + hk1);
    sum += c;
    if (abs(c) < mp("1e-45")) break;
  }
  return static_cast<double>(2 / pi * j1 * log(half) - 2 / (pi * x) - sum / pi);
}

/// Adaptive Simpson quadrature with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 50) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6 * (fa + 4 * flm + fm);
      const double right = (b - m) / 6 * (fm + 4 * frm + fb);
      const double delta = left + right - whole;
      // Round-off floor: halving tol below the noise of the panel sums only burns depth.
      const double floor = 1e-15 * (std::abs(left) + std::abs(right));
      if (depth <= 0 || std::abs(delta) <= 15 * std::max(tol, floor)) return left + right + delta / 15;
      return run(a, m, fa, flm, fm, left, tol / 2, depth - 1) + run(m, b, fm, frm, fb, right, tol / 2, depth - 1);
    }
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return Rec{f}.run(a, b, fa, fm, fb, whole, tol, depth);
}

/// Plain bisection on a sign change.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  if (flo * f(hi) > 0) throw std::invalid_argument("bisect: no sign change");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double central_difference(const std::function<double(double)>& f, double x, double step) {
  return (f(x + step) - f(x - step)) / (2 * step);
}

}  // namespace sds::test
