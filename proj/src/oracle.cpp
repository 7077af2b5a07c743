#include "sds/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "sds/detail/parallel.hpp"

namespace sds {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;
using State = std::array<double, 2>;  // u, du/dx with x = z - z0

struct RadialSystem {
  PoleChart left;
  PoleChart right;
  double lambda;

  void operator()(const State& s, State& ds, double x) const {
    const double L = left.length();
    double drift, metric;
    if (x <= 0.5 * L) {
      const auto r = left.radial(x, L - x);
      drift = r.drift;
      metric = r.metric;
    } else {
      const auto r = right.radial(L - x, x);
      drift = -r.drift;
      metric = r.metric;
    }
    ds[0] = s[1];
    ds[1] = -drift * s[1] - metric * lambda * s[0];
  }
};

// Integrates from the z1 seed down to each requested left offset (sorted descending).
std::vector<State> integrate_from_seed(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                       std::vector<double> offsets_desc, const OracleOptions& options) {
  if (!(E > 0.0)) throw DomainError("shooting needs E > 0; got E = " + format_double(E));
  const double L = profile.length();
  const auto seed = frobenius_regular_seed(profile, params, E, options.seed_order);
  // Large k shrinks the usable series radius; halve the start offset until the tail decays.
  double eps = options.start_fraction * L;
  FrobeniusSeed::Value v0;
  for (int attempt = 0;; ++attempt) {
    try {
      v0 = seed.evaluate(eps);
      break;
    } catch (const NumericalError& e) {
      if (attempt == 30) throw OracleError(std::string("seed at z1 failed: ") + e.what(), E);
      eps *= 0.5;
    }
  }

  RadialSystem sys{PoleChart(profile, Pole::left), PoleChart(profile, Pole::right), 2.0 * E / (params.h * params.h)};
  State state{v0.u, -v0.du_dy};

  std::vector<double> times;
  times.reserve(offsets_desc.size() + 1);
  times.push_back(L - eps);
  for (double x : offsets_desc) {
    if (!(x > 0.0) || x >= L - eps) throw DomainError("shooting offsets must lie in (0, z1 - z0 - eps)");
    times.push_back(x);
  }
  if (!std::is_sorted(times.rbegin(), times.rend()))
    throw DomainError("shooting offsets must be sorted in decreasing order");

  std::vector<State> out;
  out.reserve(offsets_desc.size());
  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  const double dt0 = -1e-4 * L;
  try {
    odeint::integrate_times(
        stepper, sys, state, times.begin(), times.end(), dt0,
        [&](const State& s, double t) {
          if (t != times.front()) out.push_back(s);
        },
        odeint::max_step_checker(1000000));
  } catch (const std::exception& e) {
    throw OracleError(std::string("radial integration towards z0 failed (") + e.what() +
                          "); try a larger end offset or a higher seed order",
                      E);
  }
  for (const auto& s : out)
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]))
      throw OracleError("radial integration produced non-finite values near z0", E);
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

}  // namespace

std::pair<double, double> indicial_exponents(int m, IndicialConvention convention) {
  if (m < 0) throw DomainError("m must be non-negative");
  if (convention == IndicialConvention::paper) {
    const double r = std::sqrt(1.0 + m * (m + 1.0));
    return {(-1.0 + r) / 2.0, (-1.0 - r) / 2.0};
  }
  constexpr double beta = 1.5;
  const double b = beta - 1.0;
  const double r = std::sqrt(b * b + m * static_cast<double>(m));
  return {(-b + r) / 2.0, (-b - r) / 2.0};
}

double near_pole_drift_limit(const SurfaceProfile& profile, Pole pole) {
  return chart_series(profile, pole, 1).p[0];
}

std::vector<double> shoot_values(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                 const std::vector<double>& offsets, const OracleOptions& options) {
  std::vector<std::size_t> order(offsets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return offsets[a] > offsets[b]; });
  std::vector<double> sorted;
  for (auto i : order) sorted.push_back(offsets[i]);
  const auto states = integrate_from_seed(profile, params, E, sorted, options);
  std::vector<double> values(offsets.size());
  for (std::size_t k = 0; k < order.size(); ++k) values[order[k]] = states[k][0];
  return values;
}

BoundaryData shoot(const SurfaceProfile& profile, const SpectralParams& params, double E,
                   const OracleOptions& options) {
  const double L = profile.length();
  const double lo = options.end_fraction * L;
  auto offsets = log_spaced(lo, options.fit_span * lo, options.fit_samples);
  std::reverse(offsets.begin(), offsets.end());
  const auto states = integrate_from_seed(profile, params, E, offsets, options);
  std::vector<double> d(offsets.size()), v(offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    d[i] = distance_from_pole_offset(profile, Pole::left, offsets[i]);
    v[i] = states[i][0];
  }
  try {
    return fit_boundary_data(d, v, options.fit_terms);
  } catch (const NumericalError& e) {
    throw OracleError(std::string("boundary-data fit failed: ") + e.what(), E);
  }
}

BoundaryData shoot_frobenius_matched(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                     const OracleOptions& options, double match_fraction) {
  const double L = profile.length();
  const double xm = match_fraction * L;
  const auto st = integrate_from_seed(profile, params, E, {xm}, options).front();
  const auto [rho_reg, rho_sing] = indicial_exponents(0, IndicialConvention::direct);
  constexpr int kOrder = 40;
  const auto R = frobenius_series(profile, Pole::left, E, params.h, rho_reg, kOrder).evaluate(xm);
  const auto S = frobenius_series(profile, Pole::left, E, params.h, rho_sing, kOrder).evaluate(xm);
  const double det = R.u * S.du_dy - S.u * R.du_dy;
  const double c_reg = (st[0] * S.du_dy - S.u * st[1]) / det;
  const double c_sing = (R.u * st[1] - st[0] * R.du_dy) / det;
  BoundaryData out;
  out.b = c_reg;
  out.a = -4.0 * kPi * near_pole_coefficient(profile, Pole::left) * c_sing;
  out.terms = 0;
  return out;
}

double mismatch(const SurfaceProfile& profile, const SpectralParams& params, double E,
                const OracleOptions& options) {
  const auto bd = shoot(profile, params, E, options);
  const double c = 2.0 * params.alpha / (params.h * params.h);
  const double k = std::sqrt(2.0 * E) / params.h;
  const double norm = std::sqrt(bd.a * bd.a + (c * c + k * k) * bd.b * bd.b + 1e-300);
  return (bd.a - c * bd.b) / norm;
}

std::vector<OracleEigenvalue> oracle_spectrum(const SurfaceProfile& profile, const SpectralParams& params,
                                              const OracleOptions& options) {
  params.validate();
  const double Lm = meridian_length(profile);
  std::vector<double> grid{params.E_min};
  while (grid.back() < params.E_max) {
    const double E = grid.back();
    const double step = kPi * params.h * std::sqrt(2.0 * E) / (4.0 * Lm * std::max(options.scan_refine, 1.0));
    grid.push_back(std::min(E + step, params.E_max));
  }
  std::vector<double> F(grid.size());
  detail::parallel_for(grid.size(), options.threads,
                       [&](std::size_t i) { F[i] = mismatch(profile, params, grid[i], options); });

  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (F[i] == 0.0) brackets.emplace_back(grid[i], grid[i]);
    else if (F[i] * F[i + 1] < 0.0) brackets.emplace_back(grid[i], grid[i + 1]);
  }
  if (F.back() == 0.0) brackets.emplace_back(grid.back(), grid.back());

  std::vector<OracleEigenvalue> roots(brackets.size());
  detail::parallel_for(brackets.size(), options.threads, [&](std::size_t i) {
    auto [lo, hi] = brackets[i];
    auto f = [&](double E) { return mismatch(profile, params, E, options); };
    if (lo != hi) {
      boost::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(
                                                                      options.root_bits),
                                                       iters);
      lo = r.first;
      hi = r.second;
      if (!(hi - lo <= 1e-10 * hi))
        throw OracleError("root refinement did not reach a 1e-10 bracket", 0.5 * (lo + hi));
    }
    const double E = 0.5 * (lo + hi);
    const double delta = 1e-6 * E;
    const double slope = (f(E + delta) - f(E - delta)) / (2.0 * delta);
    roots[i] = {E, slope, lo, hi};
  });
  return roots;
}

std::vector<double> sphere_exact_spectrum(const SpectralParams& params) {
  params.validate();
  const double h2 = params.h * params.h;
  auto G = [&](double kappa) {
    return 2.0 * kPi * h2 * std::sin(kPi * kappa) - params.alpha * kappa * std::cos(kPi * kappa);
  };
  const double k_lo = std::sqrt(2.0 * params.E_min / h2 + 1.0);
  const double k_hi = std::sqrt(2.0 * params.E_max / h2 + 1.0);
  const int n = std::max(2, static_cast<int>(std::ceil((k_hi - k_lo) / 0.01)) + 1);
  std::vector<double> out;
  double prev_k = k_lo, prev_g = G(k_lo);
  if (prev_g == 0.0) out.push_back(k_lo);
  for (int i = 1; i < n; ++i) {
    const double k = i == n - 1 ? k_hi : k_lo + (k_hi - k_lo) * i / (n - 1);
    const double g = G(k);
    if (g == 0.0) {
      out.push_back(k);
    } else if (prev_g * g < 0.0) {
      boost::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(G, prev_k, k, prev_g, g,
                                                       boost::math::tools::eps_tolerance<double>(52), iters);
      out.push_back(0.5 * (r.first + r.second));
    }
    prev_k = k;
    prev_g = g;
  }
  for (double& k : out) k = 0.5 * h2 * (k - 1.0) * (k + 1.0);
  return out;
}

ExponentFit fitted_singular_exponent(const SurfaceProfile& profile, const SpectralParams& params, double E,
                                     double lo_fraction, double hi_fraction, const OracleOptions& options) {
  if (!(lo_fraction > 0.0) || !(hi_fraction > lo_fraction)) throw DomainError("need 0 < lo < hi fractions");
  const double L = profile.length();
  ExponentFit fit;
  fit.offsets = log_spaced(lo_fraction * L, hi_fraction * L, 24);
  fit.values = shoot_values(profile, params, E, fit.offsets, options);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(fit.offsets.size());
  for (std::size_t i = 0; i < fit.offsets.size(); ++i) {
    const double x = std::log(fit.offsets[i]);
    const double y = std::log(std::abs(fit.values[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace sds
