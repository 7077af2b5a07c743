#include "sds/specfun.hpp"

#include <cmath>
#include <numbers>

#include "sds/errors.hpp"

namespace sds {

namespace {

using real = long double;

constexpr real kPi = std::numbers::pi_v<long double>;
constexpr real kEuler = std::numbers::egamma_v<long double>;
constexpr real kTiny = 1e-22L;

real j_series(int n, real x) {
  const real half = x / 2;
  const real q = half * half;
  real term = n == 0 ? 1.0L : half;
  real sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<real>(k) * static_cast<real>(k + n));
    sum += term;
    if (std::abs(term) < kTiny * std::max<real>(1.0L, std::abs(sum))) break;
  }
  return sum;
}

real y_series(int n, real x) {
  const real half = x / 2;
  const real q = half * half;
  const real log_half = std::log(half);
  if (n == 0) {
    // (2/pi)(ln(x/2) + gamma) J0 + (2/pi) sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
    real term = 1.0L;
    real harmonic = 0.0L;
    real sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<real>(k) * static_cast<real>(k));
      harmonic += 1.0L / k;
      const real contrib = -term * harmonic;
      sum += contrib;
      if (std::abs(contrib) < kTiny * std::max<real>(1.0L, std::abs(sum))) break;
    }
    return 2.0L / kPi * ((log_half + kEuler) * j_series(0, x) + sum);
  }
  // n == 1
  // (2/pi) J1 ln(x/2) - 2/(pi x) - (1/pi) sum_k (-1)^k (psi(k+1)+psi(k+2)) half^{2k+1}/(k!(k+1)!)
  real term = half;  // half^{2k+1}/(k!(k+1)!) with sign (-1)^k
  real h_k = 0.0L;
  real h_k1 = 1.0L;
  real sum = term * (-2.0L * kEuler + h_k + h_k1);
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<real>(k) * static_cast<real>(k + 1));
    h_k += 1.0L / k;
    h_k1 += 1.0L / (k + 1);
    const real contrib = term * (-2.0L * kEuler + h_k + h_k1);
    sum += contrib;
    if (std::abs(contrib) < kTiny * std::max<real>(1.0L, std::abs(sum))) break;
  }
  return 2.0L / kPi * j_series(1, x) * log_half - 2.0L / (kPi * x) - sum / kPi;
}

struct HankelPQ {
  real p;
  real q;
};

// Hankel's P, Q sums, truncated at the smallest term (at least three corrections).
HankelPQ hankel_pq(int n, real x) {
  const real mu = 4.0L * n * n;
  real a = 1.0L;
  real p = 1.0L;
  real q = 0.0L;
  real prev = 1.0L;
  real xpow = 1.0L;
  for (int k = 1; k < 60; ++k) {
    a *= (mu - static_cast<real>((2 * k - 1) * (2 * k - 1))) / (8.0L * k);
    xpow *= x;
    const real t = a / xpow;
    if (k > 3 && (std::abs(t) > std::abs(prev) || std::abs(t) < 1e-21L)) break;
    prev = t;
    // sign pattern: P = 1 - a2/x^2 + a4/x^4 ...,  Q = a1/x - a3/x^3 + ...
    const int m = k / 2;
    const real sign = (m % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0) p += sign * t;
    else q += sign * t;
  }
  return {p, q};
}

real chi(int n, real x) { return x - (static_cast<real>(n) / 2 + 0.25L) * kPi; }

real j_hankel(int n, real x) {
  const auto pq = hankel_pq(n, x);
  const real c = chi(n, x);
  return std::sqrt(2.0L / (kPi * x)) * (pq.p * std::cos(c) - pq.q * std::sin(c));
}

real y_hankel(int n, real x) {
  const auto pq = hankel_pq(n, x);
  const real c = chi(n, x);
  return std::sqrt(2.0L / (kPi * x)) * (pq.p * std::sin(c) + pq.q * std::cos(c));
}

double j_any(int n, double x) {
  if (!(x >= 0.0)) throw DomainError("Bessel J needs x >= 0; got " + format_double(x));
  if (x <= kBesselSwitch) return static_cast<double>(j_series(n, x));
  return static_cast<double>(j_hankel(n, x));
}

double y_any(int n, double x) {
  if (!(x > 0.0)) throw DomainError("Neumann Y needs x > 0; got " + format_double(x));
  if (x <= kBesselSwitch) return static_cast<double>(y_series(n, x));
  return static_cast<double>(y_hankel(n, x));
}

}  // namespace

double bessel_j0(double x) { return j_any(0, x); }
double bessel_j1(double x) { return j_any(1, x); }
double bessel_y0(double x) { return y_any(0, x); }
double bessel_y1(double x) { return y_any(1, x); }

double bessel_j1_prime(double x) {
  if (x == 0.0) return 0.5;
  return bessel_j0(x) - bessel_j1(x) / x;
}

double bessel_y1_prime(double x) { return bessel_y0(x) - bessel_y1(x) / x; }

double spherical_j0(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double spherical_y0(double x) {
  if (x == 0.0) throw DomainError("spherical y0 is singular at x = 0");
  return -std::cos(x) / x;
}

AsymptoticForm large_argument_form(double order, double x) {
  if (!(x > 0.0)) throw DomainError("large-argument form needs x > 0");
  const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
  const double phase = x - order * std::numbers::pi / 2 - std::numbers::pi / 4;
  return {amp * std::cos(phase), amp * std::sin(phase), amp, phase, order};
}

namespace detail {
double bessel_j_series(int order, double x) { return static_cast<double>(j_series(order, x)); }
double bessel_y_series(int order, double x) { return static_cast<double>(y_series(order, x)); }
double bessel_j_hankel(int order, double x) { return static_cast<double>(j_hankel(order, x)); }
double bessel_y_hankel(int order, double x) { return static_cast<double>(y_hankel(order, x)); }
}  // namespace detail

}  // namespace sds
