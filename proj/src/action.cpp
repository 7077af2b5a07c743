#include "sds/action.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "sds/detail/quadrature.hpp"
#include "sds/errors.hpp"

namespace sds {

namespace odeint = boost::numeric::odeint;

ActionValue half_action(const SurfaceProfile& profile, double E) {
  if (!(E > 0.0)) throw DomainError("action needs E > 0; got E = " + format_double(E));
  const PoleChart chart(profile, Pole::left);
  const auto q = detail::integrate([&](double u) { return chart.arc_integrand_sine_chart(u); }, 0.0,
                                   std::numbers::pi / 2);
  const double scale = std::sqrt(2.0 * E);
  const double J = scale * q.value;
  const double err = scale * q.error;
  if (err > 1e-10 * J)
    throw NumericalError("half_action quadrature error " + format_double(err) + " exceeds 1e-10 J", err);
  return {J, E, err};
}

double action_energy_derivative(const SurfaceProfile& profile, double E) {
  if (!(E > 0.0)) throw DomainError("action derivative needs E > 0; got E = " + format_double(E));
  return half_action(profile, E).J / (2.0 * E);
}

double hamiltonian(const SurfaceProfile& profile, double z, double theta, double p_z, double p_theta,
                   double p_phi) {
  const MetricAtPoint g = metric_at(profile, z, theta);
  return 0.5 * (p_z * p_z / g.g_zz + p_theta * p_theta / g.g_theta_theta + p_phi * p_phi / g.g_phi_phi);
}

namespace {

using State = std::array<double, 3>;  // z, p_z, accumulated action

struct MeridianFlow {
  const SurfaceProfile& profile;
  void operator()(const State& s, State& ds, double /*t*/) const {
    const auto d = eval_profile(profile, s[0]);
    const double q = d.f_prime * d.f_prime + 1.0;
    ds[0] = s[1] / q;
    ds[1] = s[1] * s[1] * d.f_prime * d.f_second / (q * q);
    ds[2] = s[1] * s[1] / q;
  }
};

double energy_of(const SurfaceProfile& profile, const State& s) {
  const auto d = eval_profile(profile, s[0]);
  return 0.5 * s[1] * s[1] / (d.f_prime * d.f_prime + 1.0);
}

}  // namespace

MeridianOrbit integrate_meridian_orbit(const SurfaceProfile& profile, double E, OrbitOptions options) {
  if (!(E > 0.0)) throw DomainError("orbit needs E > 0; got E = " + format_double(E));
  const double L = profile.length();
  const double clip = options.clip_fraction * L;
  const double z_start = profile.z0() + clip;
  const double z_end = profile.z1() - clip;
  const double speed = std::sqrt(2.0 * E);

  const auto d0 = eval_profile(profile, z_start);
  State s{z_start, std::sqrt(2.0 * E * (d0.f_prime * d0.f_prime + 1.0)), 0.0};

  const double step_tol = std::min(1e-2 * options.tol, 1e-12);
  auto stepper = odeint::make_controlled(step_tol, step_tol, odeint::runge_kutta_fehlberg78<State>());
  odeint::runge_kutta_fehlberg78<State> plain;
  const MeridianFlow flow{profile};

  const double d_cap_left = distance_from_pole_offset(profile, Pole::left, clip);
  const double d_cap_right = distance_from_pole_offset(profile, Pole::right, clip);
  const double t_cap_left = d_cap_left / speed;

  MeridianOrbit orbit;
  std::vector<OrbitSample> forward;
  double drift = 0.0;
  double t = 0.0;
  double dt = 1e-3 * L / speed;
  forward.push_back({t, s[0], s[1]});
  std::size_t steps = 0;
  const double min_dt = 1e-14 * L / speed;

  while (true) {
    State trial = s;
    double t_trial = t;
    double dt_trial = dt;
    const auto res = stepper.try_step(flow, trial, t_trial, dt_trial);
    if (res == odeint::fail) {
      dt = dt_trial;
      if (dt < min_dt)
        throw NumericalError("meridian orbit step size underflow near the caps; increase the clip margin");
      continue;
    }
    if (++steps > 2000000) throw NumericalError("meridian orbit exceeded step budget");
    if (trial[0] >= z_end) {
      // Locate the crossing z = z_end from the last accepted state by secant on the step length.
      double h_lo = 0.0, z_lo = s[0];
      double h_hi = t_trial - t, z_hi = trial[0];
      State hit = trial;
      double h_hit = h_hi;
      for (int it = 0; it < 60; ++it) {
        const double h = h_lo + (z_end - z_lo) * (h_hi - h_lo) / (z_hi - z_lo);
        State probe = s;
        plain.do_step(flow, probe, t, h);
        hit = probe;
        h_hit = h;
        if (std::abs(probe[0] - z_end) <= 1e-15 * L) break;
        if (probe[0] < z_end) {
          h_lo = h;
          z_lo = probe[0];
        } else {
          h_hi = h;
          z_hi = probe[0];
        }
      }
      s = hit;
      t += h_hit;
      forward.push_back({t, s[0], s[1]});
      drift = std::max(drift, std::abs(energy_of(profile, s) - E));
      break;
    }
    s = trial;
    t = t_trial;
    dt = dt_trial;
    forward.push_back({t, s[0], s[1]});
    drift = std::max(drift, std::abs(energy_of(profile, s) - E));
  }

  const double interior_action = s[2];
  const double half_period = t + (d_cap_left + d_cap_right) / speed;
  const double t_turn = t_cap_left + t + d_cap_right / speed;  // time of the right-pole passage

  orbit.samples.reserve(2 * forward.size());
  for (const auto& smp : forward) orbit.samples.push_back({t_cap_left + smp.t, smp.z, smp.p_z});
  // Return leg by time reversal (z, p) -> (z, -p).
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
    const double t_fwd = t_cap_left + it->t;
    orbit.samples.push_back({2.0 * t_turn - t_fwd, it->z, -it->p_z});
  }
  orbit.period = 2.0 * half_period;
  orbit.closed_action = 2.0 * (interior_action + speed * (d_cap_left + d_cap_right));
  orbit.energy_drift = drift;
  return orbit;
}

}  // namespace sds
