#include "ecocacc/cacc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ecocacc/error.hpp"

namespace ecocacc {

void SpacingPolicy::validate() const {
  if (!(standstill_m > 0.0)) throw ConfigError("cacc: standstill_m must be > 0");
  if (!(headway_s > 0.0)) throw ConfigError("cacc: headway_s must be > 0");
}

void CaccGains::validate() const {
  if (!std::isfinite(kp) || !std::isfinite(kd) || !std::isfinite(ka)) throw ConfigError("cacc: gains must be finite");
}

void CaccParams::validate() const {
  if (!(tau_s > 0.0)) throw ConfigError("cacc: tau_s must be > 0");
  if (!(dt_sim_s > 0.0)) throw ConfigError("cacc: dt_sim_s must be > 0");
  spacing.validate();
  gains.validate();
}

double desired_spacing(const SpacingPolicy& pol, double v_mps) {
  if (!(v_mps >= 0.0)) throw DomainError("speed must be non-negative");
  return pol.standstill_m + pol.headway_s * v_mps;
}

double spacing_error(double pred_position_m, const FollowerState& self, double pred_length_m,
                     const SpacingPolicy& pol) {
  const double gap = pred_position_m - self.position_m - pred_length_m;
  if (gap <= 0.0) {
    std::ostringstream msg;
    msg << "collision: bumper gap " << gap << " m at t = " << self.time_s << " s";
    throw SimulationError(SimulationError::Kind::kCollision, msg.str());
  }
  return gap - desired_spacing(pol, std::max(self.velocity_mps, 0.0));
}

FollowerDerivatives follower_derivatives(const FollowerState& self, const PredecessorState& pred,
                                         double pred_length_m, const CaccParams& params, double u_sat) {
  const SpacingPolicy& pol = params.spacing;
  const CaccGains& k = params.gains;
  const double h = pol.headway_s;
  const double e = (pred.position_m - self.position_m - pred_length_m) - (pol.standstill_m + h * self.velocity_mps);
  const double a_dot = (u_sat - self.accel_mps2) / params.tau_s;
  const double e_dot = (pred.velocity_mps - self.velocity_mps) - h * self.accel_mps2;
  const double e_ddot = (pred.accel_mps2 - self.accel_mps2) - h * a_dot;

  FollowerDerivatives d;
  d.d_gap = pred.velocity_mps - self.velocity_mps;
  d.d_position = self.velocity_mps;
  d.d_velocity = self.accel_mps2;
  d.d_accel = a_dot;
  d.d_input = (-self.input_u + k.kp * e + k.kd * e_dot + k.ka * e_ddot + pred.input_u) / h;
  return d;
}

namespace {

// Cubic Hermite position over one integration step, parameterised by theta in [0, 1].
struct HermiteSegment {
  double p0, p1, m0, m1;  // m = v * dt

  double position(double th) const {
    const double th2 = th * th;
    const double th3 = th2 * th;
    return (2 * th3 - 3 * th2 + 1) * p0 + (th3 - 2 * th2 + th) * m0 + (-2 * th3 + 3 * th2) * p1 +
           (th3 - th2) * m1;
  }
  double derivative(double th) const {
    const double th2 = th * th;
    return (6 * th2 - 6 * th) * p0 + (3 * th2 - 4 * th + 1) * m0 + (-6 * th2 + 6 * th) * p1 + (3 * th2 - 2 * th) * m1;
  }
  double solve(double target) const {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (position(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
};

}  // namespace

FollowerSimulation simulate_follower(const Trajectory& pred_traj, double pred_length_m, const FollowerState& init,
                                     const CaccParams& params, const VehicleParams& p, double route_end_m,
                                     double ds_m, double t_max_s) {
  params.validate();
  if (pred_traj.empty()) throw DomainError("predecessor trajectory is empty");
  if (!(ds_m > 0.0)) throw DomainError("ds must be > 0");
  const double steps_real = (route_end_m - init.position_m) / ds_m;
  const long steps = std::lround(steps_real);
  if (steps <= 0 || std::fabs(steps_real - static_cast<double>(steps)) > 1e-6) {
    throw ConfigError("follower start is not on the distance grid ahead of the route end");
  }

  auto predecessor = [&pred_traj](double t) {
    const SampledState s = sample_at_time(pred_traj, t);
    return PredecessorState{s.position_m, s.velocity_mps, s.accel_mps2, s.command_u};
  };

  FollowerSimulation out;
  std::vector<FollowerState> series{init};
  series.reserve(static_cast<std::size_t>(t_max_s / params.dt_sim_s) + 2);
  FollowerState s = init;
  double e0 = spacing_error(predecessor(s.time_s).position_m, s, pred_length_m, params.spacing);
  out.max_spacing_error_m = out.min_spacing_error_m = e0;
  while (s.position_m < route_end_m) {
    const detail::StepResult r = detail::rk4_step(predecessor, pred_length_m, s, params, p);
    if (r.clamped) {
      ++out.velocity_clamps;
      if (s.velocity_mps > 0.5) ++out.clamps_while_rolling;
    }
    s = r.state;
    if (s.time_s > t_max_s) {
      std::ostringstream msg;
      msg << "predecessor horizon exhausted: follower at " << s.position_m << " m when t_max = " << t_max_s
          << " s was reached";
      throw SimulationError(SimulationError::Kind::kHorizon, msg.str());
    }
    const double e = spacing_error(predecessor(s.time_s).position_m, s, pred_length_m, params.spacing);
    out.max_spacing_error_m = std::max(out.max_spacing_error_m, e);
    out.min_spacing_error_m = std::min(out.min_spacing_error_m, e);
    out.final_spacing_error_m = e;
    series.push_back(s);
  }

  // Crossing of each grid position.
  const std::size_t n = static_cast<std::size_t>(steps);
  std::vector<double> cross_t(n + 1, init.time_s);
  std::vector<double> cross_v(n + 1, std::max(init.velocity_mps, 0.0));
  std::vector<double> cross_u(n + 1, detail::saturate(init.input_u, p));
  std::size_t seg = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double target = init.position_m + static_cast<double>(k) * ds_m;
    while (seg + 1 < series.size() && series[seg + 1].position_m < target) ++seg;
    const FollowerState& a = series[seg];
    const FollowerState& b = series[seg + 1];
    const double h = b.time_s - a.time_s;
    const HermiteSegment hs{a.position_m, b.position_m, a.velocity_mps * h, b.velocity_mps * h};
    const double th = hs.solve(target);
    cross_t[k] = a.time_s + th * h;
    cross_v[k] = std::max(0.0, hs.derivative(th) / h);
    cross_u[k] = detail::saturate(a.input_u + th * (b.input_u - a.input_u), p);
  }

  Trajectory& traj = out.trajectory;
  traj.ds_m = ds_m;
  traj.points.resize(n + 1);
  double t = init.time_s;
  if (n >= 1 && cross_v[0] + cross_v[1] > 0.0) {
    t = std::max(init.time_s, cross_t[1] - 2.0 * ds_m / (cross_v[0] + cross_v[1]));
  }
  for (std::size_t k = 0; k <= n; ++k) {
    TrajectoryPoint& pt = traj.points[k];
    pt.step = static_cast<int>(k);
    pt.position_m = init.position_m + static_cast<double>(k) * ds_m;
    pt.velocity_mps = cross_v[k];
    pt.command_u = cross_u[k];
    pt.time_s = t;
    if (k < n) {
      const double v0 = cross_v[k];
      const double v1 = cross_v[k + 1];
      const double dt = v0 + v1 > 1e-12 ? 2.0 * ds_m / (v0 + v1) : cross_t[k + 1] - cross_t[k];
      pt.accel_mps2 = (v1 * v1 - v0 * v0) / (2.0 * ds_m);
      const StepEnergy e = distance_step_energy(p, ds_m, pt.accel_mps2, dt);
      pt.step_energy_wh = e.energy_wh;
      pt.eta_tr = e.eta_tr;
      pt.traction = e.traction;
      t += dt;
    }
  }
  return out;
}

}  // namespace ecocacc
