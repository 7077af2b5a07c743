// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sds/action.hpp"
#include "sds/localfield.hpp"
#include "sds/oracle.hpp"
#include "sds/quantize.hpp"
#include "sds/specfun.hpp"

using namespace sds;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s [%d] %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              budget_s, in_time ? "" : " OVER BUDGET");
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const SurfaceProfile kSphere = SurfaceProfile::round_sphere();
const SurfaceProfile kTilted(-1.0, 1.0, ProfilePolynomial{1.0, 0.3});

SpectralParams params(double h, double ratio, double E_min, double E_max) {
  return SpectralParams{h, ratio * h * h * h, 0, E_min, E_max};
}

// Oracle roots over the window widened by one root spacing each side, then
// nearest-neighbour error of every semiclassical root.
double max_error(const SurfaceProfile& p, const SpectralParams& sp, QuantizationMode mode) {
  const auto sc = enumerate_spectrum(p, sp, mode).entries;
  const double Lm = meridian_length(p);
  auto padded = sp;
  padded.E_min = std::max(0.5 * sp.E_min, sp.E_min - kPi * sp.h * std::sqrt(2 * sp.E_min) / Lm);
  padded.E_max = sp.E_max + kPi * sp.h * std::sqrt(2 * sp.E_max) / Lm;
  const auto oracle = oracle_spectrum(p, padded);
  if (sc.empty() || oracle.empty()) throw std::runtime_error("empty root list");
  double worst = 0.0;
  for (const auto& e : sc) {
    double best = 1e300;
    for (const auto& o : oracle) best = std::min(best, std::abs(o.E - e.E));
    worst = std::max(worst, best);
  }
  return worst;
}

double derived_root_near(const SurfaceProfile& p, const SpectralParams& sp, double target) {
  const auto s = enumerate_spectrum(p, sp, QuantizationMode::derived);
  double best = s.entries.front().E;
  for (const auto& e : s.entries)
    if (std::abs(e.E - target) < std::abs(best - target)) best = e.E;
  return best;
}

}  // namespace

int main() {
  criterion(1, "round-sphere half action J = pi sqrt(2E)", 1.0, [] {
    const double tol = 1e-9;
    double worst = 0.0;
    for (double E : {0.25, 0.5, 2.0})
      worst = std::max(worst, std::abs(half_action(kSphere, E).J / (kPi * std::sqrt(2 * E)) - 1.0));
    return Outcome{worst <= tol, "max rel err " + fmt(worst) + " (tol " + fmt(tol) + ")"};
  });

  criterion(2, "J1/Y1 vs 50-digit series, Wronskian", 5.0, [] {
    const double tol = 1e-10, wtol = 1e-8;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x = 1e-3 * std::pow(50.0 / 1e-3, i / 199.0);
      const double j = test::mp_bessel_j(1, x), y = test::mp_bessel_y(1, x);
      worst = std::max(worst, std::abs(bessel_j1(x) - j) / std::max(1.0, std::abs(j)));
      worst = std::max(worst, std::abs(bessel_y1(x) - y) / std::max(1.0, std::abs(y)));
    }
    double wworst = 0.0;
    for (double x : {0.5, 1.0, 5.0, 20.0}) {
      const double w = bessel_j1(x) * bessel_y1_prime(x) - bessel_j1_prime(x) * bessel_y1(x);
      wworst = std::max(wworst, std::abs(w - 2.0 / (kPi * x)));
    }
    return Outcome{worst <= tol && wworst <= wtol, "max err " + fmt(worst) + " (tol " + fmt(tol) + "), Wronskian " +
                                                       fmt(wworst) + " (tol " + fmt(wtol) + ")"};
  });

  criterion(3, "shooting oracle = sphere closed form, first 5 roots", 30.0, [] {
    const double tol = 1e-7;
    double worst = 0.0;
    for (double h : {0.1, 0.05}) {
      for (double ratio : {0.1, 1.0, 10.0}) {
        // kappa up to 6.5 holds the first five roots.
        const auto sp = params(h, ratio, 1e-3, 0.5 * h * h * (6.5 * 6.5 - 1.0));
        const auto oracle = oracle_spectrum(kSphere, sp);
        const auto exact = sphere_exact_spectrum(sp);
        if (oracle.size() < 5 || exact.size() < 5)
          return Outcome{false, "fewer than 5 roots at h = " + fmt(h) + ", ratio " + fmt(ratio)};
        for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(oracle[i].E / exact[i] - 1.0));
      }
    }
    return Outcome{worst <= tol, "max rel err " + fmt(worst) + " (tol " + fmt(tol) + ")"};
  });

  criterion(4, "derived-mode convergence |E_sc - E_oracle| <= h/2, err/h decreasing", 120.0, [] {
    bool ok = true;
    std::string detail;
    for (const auto* p : {&kSphere, &kTilted}) {
      double prev = 1e300;
      detail += p == &kSphere ? "sphere err/h:" : " tilted err/h:";
      for (double h : {0.2, 0.1, 0.05}) {
        const double r = max_error(*p, params(h, 1.0, 0.1, 1.0), QuantizationMode::derived) / h;
        ok = ok && r <= 0.5 && r < prev;
        prev = r;
        detail += " " + fmt(r);
      }
    }
    return Outcome{ok, detail + " (tol 0.5, strictly decreasing)"};
  });

  criterion(5, "regime limits: derived offsets and oracle agreement", 60.0, [] {
    const double h = 0.1, tol = 1e-3;
    bool ok = true;
    std::string detail;
    for (auto [ratio, offset] : {std::pair{1e-6, 0.0}, std::pair{1e6, 0.5}}) {
      const auto sp = params(h, ratio, 0.1, 1.0);
      double dev = 0.0;
      for (const auto& e : enumerate_spectrum(kSphere, sp, QuantizationMode::derived).entries) {
        const double x = e.phase / kPi - offset;
        dev = std::max(dev, std::abs(x - std::round(x)));
      }
      const double derived_err = max_error(kSphere, sp, QuantizationMode::derived) / h;
      const double paper_err = max_error(kSphere, sp, QuantizationMode::paper) / h;
      ok = ok && dev <= tol && derived_err <= 0.5;
      detail += "ratio " + fmt(ratio) + ": phase dev " + fmt(dev) + ", derived err/h " + fmt(derived_err) +
                ", paper err/h " + fmt(paper_err) + " (reported only); ";
    }
    return Outcome{ok, detail + "tol " + fmt(tol) + " / 0.5"};
  });

  criterion(6, "closed meridian orbit action = 2 J(E), energy drift", 10.0, [] {
    const double tol = 1e-6, dtol = 1e-9;
    double worst = 0.0, drift = 0.0;
    for (const auto* p : {&kSphere, &kTilted}) {
      for (double E : {0.25, 0.5, 1.0}) {
        const auto orbit = integrate_meridian_orbit(*p, E);
        worst = std::max(worst, std::abs(orbit.closed_action / (2 * half_action(*p, E).J) - 1.0));
        drift = std::max(drift, orbit.energy_drift);
      }
    }
    return Outcome{worst <= tol && drift <= dtol,
                   "max rel err " + fmt(worst) + " (tol " + fmt(tol) + "), drift " + fmt(drift) + " (tol " + fmt(dtol) + ")"};
  });

  criterion(7, "matched eigenfunction: residuals decrease, radial <= c h", 120.0, [] {
    bool ok = true;
    std::string detail;
    for (const auto* p : {&kSphere, &kTilted}) {
      double prev_m = 1e300, prev_r = 1e300, c = 0.0;
      detail += p == &kSphere ? "sphere" : " tilted";
      for (double h : {0.2, 0.1, 0.05}) {
        const auto sp = params(h, 1.0, 1e-3, 1.0);
        const double E = derived_root_near(*p, sp, 0.5);
        const auto g = glue(*p, sp, E, QuantizationMode::derived);
        const double r = radial_residual(*p, sp, E, g);
        if (h == 0.2) c = r / h;
        ok = ok && g.matching_residual < prev_m && r < prev_r && r <= c * h;
        prev_m = g.matching_residual;
        prev_r = r;
        detail += " h=" + fmt(h) + " match " + fmt(g.matching_residual) + " radial " + fmt(r) + ";";
      }
      detail += " c=" + fmt(c);
    }
    return Outcome{ok, detail};
  });

  criterion(8, "near-pole growth exponent = direct indicial root", 30.0, [] {
    const double tol = 0.05;
    const double direct = indicial_exponents(0, IndicialConvention::direct).second;
    const double printed = indicial_exponents(0, IndicialConvention::paper).second;
    double worst = 0.0;
    std::string detail;
    for (const auto* p : {&kSphere, &kTilted}) {
      const auto fit = fitted_singular_exponent(*p, SpectralParams{0.1, 1e-3}, 0.2);
      worst = std::max(worst, std::abs(fit.exponent - direct));
      detail += "fitted " + fmt(fit.exponent) + "; ";
    }
    return Outcome{worst <= tol, detail + "direct " + fmt(direct) + " (tol " + fmt(tol) + "), printed " +
                                     fmt(printed) + " differs by " + fmt(std::abs(printed - direct))};
  });

  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
