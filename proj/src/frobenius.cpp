#include "sds/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "sds/errors.hpp"

namespace sds {

namespace {

// Smallest modulus among the roots of a real polynomial, via the companion matrix.
double smallest_root_modulus(std::vector<double> c) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n < 1) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : solver.eigenvalues()) r = std::min(r, std::abs(z));
  return r;
}

}  // namespace

ChartSeries chart_series(const SurfaceProfile& profile, Pole pole, int order) {
  if (order < 1) throw DomainError("series order must be positive");
  const PoleChart chart(profile, pole);
  const auto P = chart.p_polynomial();
  const std::size_t K = static_cast<std::size_t>(order) + 2;

  series::Coeffs F(P.size() + 1, 0.0);
  std::copy(P.begin(), P.end(), F.begin() + 1);
  const auto dF = series::differentiate(F);
  const auto d2F = series::differentiate(dF);
  const auto dF2 = series::multiply(dF, dF, K);
  const auto G = series::add(dF2, series::scale(F, 4.0, K), K);  // F'^2 + 4F

  // N = F' (3F'^2 + 8F - 2 F F''),  M = 2 P G
  auto inner = series::add(series::scale(dF2, 3.0, K), series::scale(F, 8.0, K), K);
  inner = series::add(inner, series::scale(series::multiply(F, d2F, K), -2.0, K), K);
  const auto N = series::multiply(dF, inner, K);
  const auto M = series::scale(series::multiply(P, G, K), 2.0, K);

  ChartSeries out;
  out.p = series::divide(N, M, static_cast<std::size_t>(order));
  out.q = series::divide(series::scale(G, 0.25, K), P, static_cast<std::size_t>(order));
  const auto Gfull = series::add(series::multiply(dF, dF, 2 * dF.size()), series::scale(F, 4.0, 2 * dF.size()),
                                 2 * dF.size());
  out.radius_estimate = std::min(smallest_root_modulus(P), smallest_root_modulus(Gfull));
  return out;
}

FrobeniusSeed frobenius_series(const SurfaceProfile& profile, Pole pole, double E, double h, double rho,
                               int order) {
  if (order < 4) throw DomainError("Frobenius series needs order >= 4; got " + std::to_string(order));
  if (!(E > 0.0) || !(h > 0.0)) throw DomainError("Frobenius series needs E > 0 and h > 0");
  const auto cs = chart_series(profile, pole, order);
  const double lambda = 2.0 * E / (h * h);
  const auto& p = cs.p;
  const auto& q = cs.q;

  FrobeniusSeed seed;
  seed.pole = pole;
  seed.expansion_point = profile.pole_coordinate(pole);
  seed.exponent = rho;
  seed.lambda = lambda;
  seed.order = order;
  seed.radius_estimate = cs.radius_estimate;
  auto& c = seed.coefficients;
  c.assign(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = 1.0;

  const double indicial0 = rho * (rho - 1.0) + p[0] * rho;
  if (std::abs(indicial0) > 1e-12 * (1.0 + std::abs(rho)))
    throw DomainError("exponent " + format_double(rho) + " is not an indicial root (p0 = " +
                      format_double(p[0]) + ")");

  for (int n = 1; n <= order; ++n) {
    const double nr = n + rho;
    const double I = nr * (nr - 1.0) + p[0] * nr;
    if (std::abs(I) < 1e-12) throw NumericalError("Frobenius recurrence hits a resonant exponent at n = " +
                                                  std::to_string(n));
    double rhs = 0.0;
    for (int i = 1; i <= n; ++i) rhs -= p[i] * c[n - i] * (n - i + rho);
    for (int i = 0; i <= n - 1; ++i) rhs -= lambda * q[i] * c[n - 1 - i];
    c[n] = rhs / I;
  }

  double worst = 0.0;
  for (int n = 1; n <= order; ++n) {
    const double nr = n + rho;
    double sum = c[n] * nr * (nr - 1.0);
    double mag = std::abs(sum);
    for (int i = 0; i <= n; ++i) {
      const double t = p[i] * c[n - i] * (n - i + rho);
      sum += t;
      mag += std::abs(t);
    }
    for (int i = 0; i <= n - 1; ++i) {
      const double t = lambda * q[i] * c[n - 1 - i];
      sum += t;
      mag += std::abs(t);
    }
    if (mag > 0.0) worst = std::max(worst, std::abs(sum) / mag);
  }
  seed.max_recurrence_residual = worst;
  return seed;
}

FrobeniusSeed frobenius_regular_seed(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                     int order) {
  return frobenius_series(profile, Pole::right, E, params.h, 0.0, order);
}

FrobeniusSeed::Value FrobeniusSeed::evaluate(double y) const {
  if (!(y > 0.0)) throw DomainError("Frobenius series is evaluated at positive offsets");
  if (y >= radius_estimate)
    throw NumericalError("offset " + format_double(y) + " lies outside the series radius " +
                         format_double(radius_estimate) + "; use a smaller start offset");
  double sum = 0.0, dsum = 0.0, mag = 0.0, yn = 1.0;
  double last = 0.0;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    const double t = coefficients[n] * yn;
    sum += t;
    dsum += t * (static_cast<double>(n) + exponent);
    mag += std::abs(t);
    last = std::abs(t);
    yn *= y;
  }
  if (last > 1e-12 * mag)
    throw NumericalError("Frobenius series tail " + format_double(last / mag) +
                             " has not decayed at offset " + format_double(y) +
                             "; use a smaller start offset or a higher order",
                         last / mag);
  const double ypow = std::pow(y, exponent);
  return {ypow * sum, ypow * dsum / y};
}

}  // namespace sds
