#include "sds/quantize.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sds/errors.hpp"

namespace sds {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRootTol = 5e-13;
}  // namespace

void SpectralParams::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h must be positive; got " + format_double(h));
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  if (m != 0) throw DomainError("only the m = 0 sector couples to the delta potential");
  if (!(E_min > 0.0) || !(E_max > E_min) || !std::isfinite(E_max))
    throw DomainError("energy window must satisfy 0 < E_min < E_max; got (" + format_double(E_min) + ", " +
                      format_double(E_max) + ")");
}

std::string to_string(QuantizationMode mode) { return mode == QuantizationMode::paper ? "paper" : "derived"; }

QuantizationMode parse_mode(const std::string& text) {
  if (text == "paper") return QuantizationMode::paper;
  if (text == "derived") return QuantizationMode::derived;
  throw std::invalid_argument("unknown quantization mode '" + text + "' (expected paper|derived)");
}

std::string to_string(Limit limit) { return limit == Limit::weak ? "weak" : "strong"; }

std::string to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::weak: return "weak";
    case RegimeTag::window: return "window";
    case RegimeTag::strong: return "strong";
  }
  return "unknown";
}

double limit_offset(Limit limit, QuantizationMode mode) {
  // The paper's printed condition reduces to the half-integer rule for weak
  // coupling; the derived condition is the other way around.
  const bool half = (limit == Limit::weak) == (mode == QuantizationMode::paper);
  return half ? 0.5 : 0.0;
}

// --- PhaseCondition ----------------------------------------------------------

PhaseCondition::PhaseCondition(const SurfaceProfile& profile, const SpectralParams& params,
                               QuantizationMode mode)
    : params_(params), mode_(mode), length_(sds::meridian_length(profile)) {
  params_.validate();
  limit_only_ = params_.alpha == 0.0;
  fixed_angle_ = limit_offset(Limit::weak, mode) * kPi;
}

double PhaseCondition::Phi(double E) const { return std::sqrt(2.0 * E) * length_ / params_.h; }

double PhaseCondition::dPhi(double E) const { return length_ / (params_.h * std::sqrt(2.0 * E)); }

double PhaseCondition::energy_for_phase(double phi) const {
  const double s = phi * params_.h / length_;
  return 0.5 * s * s;
}

double PhaseCondition::rhs_angle(double E) const {
  if (limit_only_) return fixed_angle_;
  const double h3 = params_.h * params_.h * params_.h;
  const double v = std::sqrt(2.0 * E);
  if (mode_ == QuantizationMode::paper) return std::atan2(2.0 * h3, v * params_.alpha);
  return std::atan2(params_.alpha * v, 2.0 * kPi * h3);
}

double PhaseCondition::Psi(double E) const { return Phi(E) - rhs_angle(E); }

double PhaseCondition::dPsi(double E) const {
  if (limit_only_) return dPhi(E);
  const double h3 = params_.h * params_.h * params_.h;
  const double v = std::sqrt(2.0 * E);
  const double dv = 1.0 / v;
  double num, den, dnum, dden;
  if (mode_ == QuantizationMode::paper) {
    num = 2.0 * h3;
    den = v * params_.alpha;
    dnum = 0.0;
    dden = dv * params_.alpha;
  } else {
    num = params_.alpha * v;
    den = 2.0 * kPi * h3;
    dnum = params_.alpha * dv;
    dden = 0.0;
  }
  const double dangle = (den * dnum - num * dden) / (num * num + den * den);
  return dPhi(E) - dangle;
}

std::optional<BranchRoot> PhaseCondition::solve(int phase_index) const {
  const double target = phase_index * kPi;
  // rhs_angle lies in (-pi/2, pi], so Phi at the root lies in [j pi - pi/2, j pi + pi].
  double lo = std::max(params_.E_min, energy_for_phase(std::max(target - kPi / 2, 0.0)));
  double hi = std::min(params_.E_max, energy_for_phase(target + kPi));
  if (!(lo < hi)) return std::nullopt;
  auto g = [&](double E) { return Psi(E) - target; };
  double glo = g(lo);
  double ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0) return std::nullopt;
  if (glo == 0.0) return BranchRoot{lo, 0.0};
  if (ghi == 0.0) return BranchRoot{hi, 0.0};

  double x = energy_for_phase(target + rhs_angle(0.5 * (lo + hi)));
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (std::abs(gx) <= kRootTol) return BranchRoot{x, gx};
    if (gx < 0.0) lo = x;
    else hi = x;
    double next = x - gx / dPsi(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      const double gm = g(next);
      return BranchRoot{next, gm};
    }
    x = next;
  }
  return BranchRoot{x, g(x)};
}

// --- free functions ----------------------------------------------------------

double condition_phase(const SurfaceProfile& profile, const SpectralParams& params, double E,
                       QuantizationMode mode) {
  if (mode == QuantizationMode::paper && params.alpha == 0.0)
    throw DegenerateConditionError(
        "paper-form condition has a zero denominator at alpha = 0; use limit_condition");
  if (!(E > 0.0)) throw DomainError("condition_phase needs E > 0");
  return PhaseCondition(profile, params, mode).Psi(E);
}

std::optional<BranchRoot> solve_branch(const SurfaceProfile& profile, const SpectralParams& params, int k,
                                       QuantizationMode mode) {
  return PhaseCondition(profile, params, mode).solve(k);
}

SpectralSeries enumerate_spectrum(const SurfaceProfile& profile, const SpectralParams& params,
                                  QuantizationMode mode) {
  const PhaseCondition cond(profile, params, mode);
  SpectralSeries series{{}, mode};
  const int j_lo = static_cast<int>(std::ceil(cond.Psi(params.E_min) / kPi));
  const int j_hi = static_cast<int>(std::floor(cond.Psi(params.E_max) / kPi));
  for (int j = j_lo; j <= j_hi; ++j) {
    const auto root = cond.solve(j);
    if (!root) continue;
    if (!series.entries.empty() && root->E <= series.entries.back().E) continue;
    series.entries.push_back({static_cast<int>(series.entries.size()), j, root->E, cond.Phi(root->E), mode,
                              root->residual});
  }
  return series;
}

CouplingRegime classify_regime(const SpectralParams& params, double C, double epsilon) {
  if (!(params.h > 0.0)) throw DomainError("h must be positive");
  const double ratio = std::abs(params.alpha_over_h3());
  const double a = C * std::pow(params.h, epsilon);
  const double b = C * std::pow(params.h, -epsilon);
  CouplingRegime r{};
  r.ratio = ratio;
  r.epsilon = epsilon;
  r.C = C;
  r.lower = std::min(a, b);
  r.upper = std::max(a, b);
  if (ratio > r.lower && ratio < r.upper) r.tag = RegimeTag::window;
  else if (ratio <= r.lower) r.tag = RegimeTag::weak;
  else r.tag = RegimeTag::strong;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (r.tag == RegimeTag::window) {
    r.paper_offset = r.derived_offset = r.paper_index = r.derived_index = nan;
  } else {
    const Limit lim = r.tag == RegimeTag::weak ? Limit::weak : Limit::strong;
    r.paper_offset = limit_offset(lim, QuantizationMode::paper);
    r.derived_offset = limit_offset(lim, QuantizationMode::derived);
    r.paper_index = 4.0 * r.paper_offset;
    r.derived_index = 4.0 * r.derived_offset;
  }
  return r;
}

double limit_condition(const SurfaceProfile& profile, const SpectralParams& params, int k, Limit limit,
                       QuantizationMode mode) {
  const PhaseCondition cond(profile, SpectralParams{params.h, 0.0, 0, params.E_min, params.E_max}, mode);
  return cond.energy_for_phase((k + limit_offset(limit, mode)) * kPi);
}

}  // namespace sds
