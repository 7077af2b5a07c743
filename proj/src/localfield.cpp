#include "sds/localfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "sds/errors.hpp"
#include "sds/specfun.hpp"

namespace sds {

namespace {

constexpr double kPi = std::numbers::pi;

double wavenumber(const SpectralParams& params, double E) { return std::sqrt(2.0 * E) / params.h; }

// Offset x from the left pole at which d(x, z0) = target, by bisection.
double offset_for_distance(const SurfaceProfile& profile, double target) {
  double lo = 0.0;
  double hi = profile.length();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * profile.length(); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (distance_from_pole_offset(profile, Pole::left, mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// f, metric and z-drift at a point given by its left offset, evaluated in the
// chart of the nearer pole.
struct PointGeometry {
  double f;
  double metric;
  double drift_z;
};

PointGeometry geometry_at(const PoleChart& left, const PoleChart& right, double x) {
  const double L = left.length();
  if (x <= 0.5 * L) {
    const auto r = left.radial(x, L - x);
    return {r.f, r.metric, r.drift};
  }
  const auto r = right.radial(L - x, x);
  return {r.f, r.metric, -r.drift};
}

}  // namespace

// --- LangerFrame -------------------------------------------------------------

LangerFrame::LangerFrame(const SurfaceProfile& profile, double E, double h)
    : profile_(profile), chart_(profile, Pole::left), E_(E), h_(h) {
  if (!(E > 0.0)) throw DomainError("Langer frame needs E > 0");
  if (!(h > 0.0)) throw DomainError("Langer frame needs h > 0");
}

double LangerFrame::S_offset(double x) const {
  const double half_phase = 0.5 * std::sqrt(2.0 * E_) * distance_from_pole_offset(profile_, Pole::left, x);
  return half_phase * half_phase;
}

double LangerFrame::S_prime_offset(double x) const {
  const double d = distance_from_pole_offset(profile_, Pole::left, x);
  return E_ * d * std::sqrt(chart_.radial(x).metric);
}

double LangerFrame::n_offset(double x) const {
  return S_offset(x) / S_prime_offset(x) * chart_.radial(x).drift;
}

double LangerFrame::k_offset(double x) const {
  const double sp = S_prime_offset(x);
  return 2.0 * E_ * S_offset(x) * chart_.radial(x).metric / (sp * sp);
}

double LangerFrame::S(double z) const {
  if (z == profile_.z0()) return 0.0;
  return S_offset(z - profile_.z0());
}
double LangerFrame::S_prime(double z) const { return S_prime_offset(z - profile_.z0()); }
double LangerFrame::tau(double z) const { return S(z) / (h_ * h_); }
double LangerFrame::n_at(double z) const { return n_offset(z - profile_.z0()); }
double LangerFrame::k_at(double z) const { return k_offset(z - profile_.z0()); }

double LangerFrame::p_at(double z) const {
  const double x = z - profile_.z0();
  return x * chart_.radial(x).drift;
}

double LangerFrame::q_at(double z) const {
  const double x = z - profile_.z0();
  return x * chart_.radial(x).metric;
}

double hamilton_jacobi_S(const SurfaceProfile& profile, double E, double z) {
  if (z < profile.z0() || z >= profile.z1()) throw DomainError("S(z) needs z in [z0, z1)");
  return LangerFrame(profile, E, 1.0).S(z);
}

double langer_n(const SurfaceProfile& profile, double E, double z) {
  if (!(z > profile.z0() && z < profile.z1())) throw DomainError("n(z) needs z in (z0, z1)");
  return LangerFrame(profile, E, 1.0).n_at(z);
}

LangerPoleLimit langer_n_pole_limit(const SurfaceProfile& profile, double E, std::vector<double> offsets) {
  if (offsets.size() < 2) throw DomainError("Richardson extrapolation needs at least two offsets");
  std::sort(offsets.begin(), offsets.end(), std::greater<>());
  const LangerFrame frame(profile, E, 1.0);
  LangerPoleLimit out;
  out.offsets = offsets;
  for (double x : offsets) out.values.push_back(frame.n_offset(x));
  // n(x) = n0 + c1 x + c2 x^2 + ...: Neville extrapolation of the polynomial to x = 0.
  std::vector<double> table = out.values;
  for (std::size_t level = 1; level < out.values.size(); ++level) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
      const double xa = offsets[i], xb = offsets[i + level];
      next.push_back((xa * table[i + 1] - xb * table[i]) / (xa - xb));
    }
    table = std::move(next);
    if (table.size() == 1) break;
  }
  out.extrapolated = table.front();
  return out;
}

// --- near-pole solution ------------------------------------------------------

NearPoleSolution near_pole_solution(const SpectralParams& params, double E, QuantizationMode mode) {
  const double h3 = params.h * params.h * params.h;
  const double v = std::sqrt(2.0 * E);
  if (mode == QuantizationMode::paper) return {-v * params.alpha / (2.0 * h3), 1.0, mode};
  return {params.alpha * v / (2.0 * kPi * h3), 1.0, mode};
}

double near_pole_value_at_distance(const SpectralParams& params, double E, double d, QuantizationMode mode) {
  if (!(d > 0.0)) throw DomainError("near-pole branch is singular at the pole");
  const auto sol = near_pole_solution(params, E, mode);
  const double t = wavenumber(params, E) * d;
  if (mode == QuantizationMode::paper) {
    const double inv_sqrt_tau = 2.0 / t;
    return sol.A1 * inv_sqrt_tau * bessel_y1(t) + sol.A2 * inv_sqrt_tau * bessel_j1(t);
  }
  return sol.A2 * spherical_j0(t) + sol.A1 * spherical_y0(t);
}

double near_pole_value(const SurfaceProfile& profile, const SpectralParams& params, double E, double z,
                       QuantizationMode mode) {
  const double x = z - profile.z0();
  if (!(x > 0.0) || x > 0.5 * profile.length())
    throw DomainError("near-pole branch is evaluated on (z0, z0 + (z1 - z0)/2]; got z = " + format_double(z));
  return near_pole_value_at_distance(params, E, distance_from_pole_offset(profile, Pole::left, x), mode);
}

// --- boundary data -----------------------------------------------------------

BoundaryData fit_boundary_data(std::span<const double> distances, std::span<const double> values, int terms) {
  if (terms < 2) throw DomainError("boundary-data fit needs at least the {1/d, 1} basis");
  if (distances.size() != values.size()) throw DomainError("distances and values differ in length");
  const auto n = static_cast<Eigen::Index>(distances.size());
  std::vector<double> sorted(distances.begin(), distances.end());
  std::sort(sorted.begin(), sorted.end());
  const auto distinct =
      std::unique(sorted.begin(), sorted.end(),
                  [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(a, b); }) -
      sorted.begin();
  if (distinct < terms)
    throw NumericalError("boundary-data fit is ill-conditioned: " + std::to_string(distinct) +
                         " distinct distances for " + std::to_string(terms) + " basis functions");

  Eigen::MatrixXd A(n, terms);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = distances[static_cast<std::size_t>(i)];
    if (!(d > 0.0)) throw DomainError("boundary-data fit needs positive distances");
    A(i, 0) = 1.0 / d;
    double p = 1.0;
    for (int j = 1; j < terms; ++j) {
      A(i, j) = p;
      p *= d;
    }
    y(i) = values[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd colscale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < terms; ++j) A.col(j) /= colscale(j);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-14);
  if (qr.rank() < terms) throw NumericalError("boundary-data fit is rank deficient");
  Eigen::VectorXd coef = qr.solve(y);
  const double misfit = (A * coef - y).norm() / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < terms; ++j) coef(j) /= colscale(j);
  BoundaryData out;
  out.a = -4.0 * kPi * coef(0);
  out.b = coef(1);
  out.residual = misfit;
  out.terms = terms;
  return out;
}

BoundaryData extract_boundary_data(std::span<const PoleSample> samples, const SurfaceProfile& profile,
                                   int terms) {
  std::vector<double> d;
  std::vector<double> v;
  d.reserve(samples.size());
  v.reserve(samples.size());
  for (const auto& s : samples) {
    d.push_back(distance_from_pole_offset(profile, Pole::left, s.offset));
    v.push_back(s.value);
  }
  return fit_boundary_data(d, v, terms);
}

BoundaryData extract_boundary_data_z(std::span<const std::pair<double, double>> samples,
                                     const SurfaceProfile& profile, int terms) {
  std::vector<PoleSample> converted;
  converted.reserve(samples.size());
  for (const auto& [z, value] : samples) converted.push_back({z - profile.z0(), value});
  return extract_boundary_data(converted, profile, terms);
}

// --- outer WKB solution ------------------------------------------------------

OuterSolution outer_solution(const SurfaceProfile& profile, const SpectralParams& params, double E,
                             QuantizationMode amplitude_mode) {
  const double k = wavenumber(params, E);
  const double Phi = k * meridian_length(profile);
  const double constant = amplitude_mode == QuantizationMode::derived ? kPi / 2 - Phi : Phi + kPi / 4;
  return {amplitude_mode, k, Phi, constant};
}

namespace {

void require_outer_domain(const SurfaceProfile& profile, double z) {
  const double L = profile.length();
  if (!(z - profile.z0() >= 1e-6 * L) || !(profile.z1() - z >= 1e-6 * L))
    throw DomainError("outer WKB branch excludes the pole neighbourhoods; got z = " + format_double(z));
}

double amplitude_from(double f, double metric, QuantizationMode mode) {
  if (mode == QuantizationMode::derived) return 1.0 / f;
  return std::sqrt(metric / f);
}

// Outer value at left offset x given d_left; picks the numerically safe form.
double outer_value_at(const OuterSolution& outer, double L_meridian, double d_left, double f, double metric,
                      QuantizationMode mode) {
  const double amp = amplitude_from(f, metric, mode);
  if (mode == QuantizationMode::derived) return amp * std::sin(outer.wavenumber * (L_meridian - d_left));
  return amp * std::cos(outer.wavenumber * d_left + outer.phase_constant);
}

}  // namespace

double outer_wkb_phase(const SurfaceProfile& profile, const SpectralParams& params, double E, double z) {
  if (z < profile.z0() || z > profile.z1()) throw DomainError("outer phase needs z in [z0, z1]");
  return wavenumber(params, E) * geodesic_distance_from_pole(profile, z, Pole::left);
}

double outer_wkb_amplitude(const SurfaceProfile& profile, double E, double z, QuantizationMode amplitude_mode) {
  (void)E;
  require_outer_domain(profile, z);
  const auto d = eval_profile(profile, z);
  return amplitude_from(d.f, d.f_prime * d.f_prime + 1.0, amplitude_mode);
}

double outer_wkb_value(const SurfaceProfile& profile, const SpectralParams& params, double E, double z,
                       QuantizationMode amplitude_mode) {
  require_outer_domain(profile, z);
  const PoleChart left(profile, Pole::left);
  const PoleChart right(profile, Pole::right);
  const double x = z - profile.z0();
  const auto g = geometry_at(left, right, x);
  const auto outer = outer_solution(profile, params, E, amplitude_mode);
  const double Lm = meridian_length(profile);
  if (amplitude_mode == QuantizationMode::derived) {
    const double d_right = distance_from_pole_offset(profile, Pole::right, profile.z1() - z);
    return std::sin(outer.wavenumber * d_right) / g.f;
  }
  const double d_left = distance_from_pole_offset(profile, Pole::left, x);
  return outer_value_at(outer, Lm, d_left, g.f, g.metric, amplitude_mode);
}

// --- glue --------------------------------------------------------------------

std::string to_string(BranchTag tag) {
  switch (tag) {
    case BranchTag::inner: return "inner";
    case BranchTag::overlap: return "overlap";
    case BranchTag::outer: return "outer";
  }
  return "unknown";
}

GluedEigenfunction glue(const SurfaceProfile& profile, const SpectralParams& params, double E,
                        QuantizationMode mode, const GlueOptions& options) {
  params.validate();
  if (!(E > 0.0)) throw DomainError("glue needs E > 0");
  const double L = profile.length();
  const double Lm = meridian_length(profile);
  const double k = wavenumber(params, E);
  const PoleChart left(profile, Pole::left);
  const PoleChart right(profile, Pole::right);
  const auto outer = outer_solution(profile, params, E, mode);

  GluedEigenfunction out;
  out.E = E;
  out.mode = mode;
  out.d_inner = std::min(options.overlap_scale * std::sqrt(Lm / k), 0.25 * Lm);
  const double d_outer = 2.0 * out.d_inner;
  const double x_in = offset_for_distance(profile, out.d_inner);
  const double x_out = offset_for_distance(profile, d_outer);
  out.cut_inner = profile.z0() + x_in;
  out.cut_outer = profile.z0() + x_out;
  out.cap = options.cap_fraction * L;

  auto distance_right = [&](double x) { return distance_from_pole_offset(profile, Pole::right, L - x); };
  auto outer_at = [&](double x, double d_left) {
    const auto g = geometry_at(left, right, x);
    if (mode == QuantizationMode::derived) {
      const double dr = x > 0.5 * L ? distance_right(x) : Lm - d_left;
      return std::sin(k * dr) / g.f;
    }
    return outer_value_at(outer, Lm, d_left, g.f, g.metric, mode);
  };

  // Scale the outer branch onto the inner one over the overlap. Both the fit
  // and the mismatch use the pair (value, derivative / k) relative to the
  // envelope of the inner branch, so the measure does not depend on where the
  // nodes fall inside the overlap.
  const auto inner = near_pole_solution(params, E, mode);
  const double coef = std::sqrt(inner.A1 * inner.A1 + inner.A2 * inner.A2);
  auto envelope = [&](double d) {
    const double t = k * d;
    if (mode == QuantizationMode::derived) return coef / t;
    return coef * (2.0 / t) * std::sqrt(2.0 / (kPi * t));
  };
  constexpr int kOverlapSamples = 256;
  struct Sample {
    double in, in_d, out, out_d, env;
  };
  std::vector<Sample> samples(kOverlapSamples);
  const double dx = 1e-4 * (x_out - x_in);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < kOverlapSamples; ++i) {
    const double x = x_in + (x_out - x_in) * i / (kOverlapSamples - 1);
    const double d = distance_from_pole_offset(profile, Pole::left, x);
    const double dm = distance_from_pole_offset(profile, Pole::left, x - dx);
    const double dp = distance_from_pole_offset(profile, Pole::left, x + dx);
    auto& smp = samples[i];
    smp.in = near_pole_value_at_distance(params, E, d, mode);
    smp.out = outer_at(x, d);
    smp.in_d = (near_pole_value_at_distance(params, E, dp, mode) - near_pole_value_at_distance(params, E, dm, mode)) /
               ((dp - dm) * k);
    smp.out_d = (outer_at(x + dx, dp) - outer_at(x - dx, dm)) / ((dp - dm) * k);
    smp.env = envelope(d);
    const double w = 1.0 / (smp.env * smp.env);
    num += w * (smp.in * smp.out + smp.in_d * smp.out_d);
    den += w * (smp.out * smp.out + smp.out_d * smp.out_d);
  }
  out.outer_scale = den > 0.0 ? num / den : 1.0;
  double mismatch = 0.0;
  for (const auto& smp : samples)
    mismatch = std::max(mismatch, std::hypot(smp.in - out.outer_scale * smp.out,
                                             smp.in_d - out.outer_scale * smp.out_d) /
                                      smp.env);
  out.matching_residual = mismatch;
  out.warning = out.matching_residual > options.residual_bound;

  // Grid: uniform in z, resolved at the caps.
  int n = options.grid_points;
  if (n <= 0) {
    const double q_cap = std::max(left.radial(out.cap).metric, right.radial(out.cap).metric);
    const double dz = 2.0 * kPi / (k * std::sqrt(q_cap)) / 20.0;
    n = static_cast<int>(std::clamp(std::ceil(L / dz) + 1.0, 2001.0, 400001.0));
  }
  const double x0 = options.pole_start_fraction * L;
  out.spacing = (L - 2.0 * x0) / (n - 1);
  out.grid.resize(n);
  out.offsets.resize(n);
  out.values.resize(n);
  out.tags.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = x0 + out.spacing * i;
    out.offsets[i] = x;
    out.grid[i] = profile.z0() + x;
    const double d = x <= 0.5 * L ? distance_from_pole_offset(profile, Pole::left, x) : Lm - distance_right(x);
    if (d <= out.d_inner) {
      out.values[i] = near_pole_value_at_distance(params, E, d, mode);
      out.tags[i] = BranchTag::inner;
    } else if (d >= d_outer) {
      out.values[i] = out.outer_scale * outer_at(x, d);
      out.tags[i] = BranchTag::outer;
    } else {
      const double e1 = 0.5 * (1.0 + std::cos(kPi * (d - out.d_inner) / out.d_inner));
      out.values[i] =
          e1 * near_pole_value_at_distance(params, E, d, mode) + (1.0 - e1) * out.outer_scale * outer_at(x, d);
      out.tags[i] = BranchTag::overlap;
    }
  }
  return out;
}

double radial_residual(const SurfaceProfile& profile, const SpectralParams& params, double E,
                       const GluedEigenfunction& eigfn) {
  const auto n = eigfn.values.size();
  if (n < 5 || eigfn.offsets.size() != n) throw ResolutionError("residual needs at least five samples");
  const double L = profile.length();
  const double dz = eigfn.spacing;
  const double k = wavenumber(params, E);
  const double h2 = params.h * params.h;
  const PoleChart left(profile, Pole::left);
  const PoleChart right(profile, Pole::right);
  const auto& u = eigfn.values;

  double r2 = 0.0, u2 = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double x = eigfn.offsets[i];
    if (x < eigfn.cap || L - x < eigfn.cap) continue;
    const auto g = geometry_at(left, right, x);
    const double local_wavelength = 2.0 * kPi / (k * std::sqrt(g.metric));
    if (local_wavelength / dz < 10.0)
      throw ResolutionError("grid has " + format_double(local_wavelength / dz) +
                            " points per local wavelength at z - z0 = " + format_double(x) + " (need 10)");
    const double d1 = (-u[i + 2] + 8.0 * u[i + 1] - 8.0 * u[i - 1] + u[i - 2]) / (12.0 * dz);
    const double d2 = (-u[i + 2] + 16.0 * u[i + 1] - 30.0 * u[i] + 16.0 * u[i - 1] - u[i - 2]) / (12.0 * dz * dz);
    const double r = -0.5 * h2 * (d2 + g.drift_z * d1) / g.metric - E * u[i];
    const double w = g.f * g.f * std::sqrt(g.metric);
    r2 += w * r * r;
    u2 += w * u[i] * u[i];
    ++used;
  }
  if (used == 0 || u2 == 0.0) throw ResolutionError("no samples outside the pole caps");
  return std::sqrt(r2 / u2);
}

}  // namespace sds
