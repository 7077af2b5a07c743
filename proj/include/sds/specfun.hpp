#pragma once

namespace sds {

/// Leading large-argument behaviour of a cylinder function of given order:
///   cos_form = sqrt(2/(pi x)) cos(x - order pi/2 - pi/4)
///   sin_form = sqrt(2/(pi x)) sin(x - order pi/2 - pi/4)
struct AsymptoticForm {
  double cos_form;
  double sin_form;
  double amplitude;
  double phase;
  double order;
};

/// Bessel J0, J1 (x >= 0) and Neumann Y0, Y1 (x > 0).
/// Ascending series for x <= kBesselSwitch, Hankel asymptotic expansion beyond.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);
double bessel_y1(double x);

/// Derivatives via J1' = J0 - J1/x, Y1' = Y0 - Y1/x.
double bessel_j1_prime(double x);
double bessel_y1_prime(double x);

/// j0(x) = sin x / x, y0(x) = -cos x / x.
double spherical_j0(double x);
double spherical_y0(double x);

AsymptoticForm large_argument_form(double order, double x);

inline constexpr double kBesselSwitch = 18.0;

namespace detail {
// Both branches exposed so the switchover can be checked directly.
double bessel_j_series(int order, double x);
double bessel_y_series(int order, double x);
double bessel_j_hankel(int order, double x);
double bessel_y_hankel(int order, double x);
}  // namespace detail

}  // namespace sds
