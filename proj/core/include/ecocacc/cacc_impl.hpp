#pragma once

#include <algorithm>
#include <vector>

namespace ecocacc::detail {

inline double saturate(double u, const VehicleParams& p) {
  return std::clamp(u, p.accel_min_mps2, p.accel_max_mps2);
}

template <typename PredecessorFn>
StepResult rk4_step(PredecessorFn& predecessor, double pred_length_m, const FollowerState& s,
                    const CaccParams& params, const VehicleParams& p) {
  const double h = params.dt_sim_s;
  auto eval = [&](const FollowerState& x, double t) {
    const PredecessorState pred = predecessor(t);
    return follower_derivatives(x, pred, pred_length_m, params, saturate(x.input_u, p));
  };
  auto shifted = [](const FollowerState& x, const FollowerDerivatives& d, double dt) {
    FollowerState y = x;
    y.position_m += d.d_position * dt;
    y.velocity_mps += d.d_velocity * dt;
    y.accel_mps2 += d.d_accel * dt;
    y.input_u += d.d_input * dt;
    y.time_s += dt;
    return y;
  };
  const FollowerDerivatives k1 = eval(s, s.time_s);
  const FollowerDerivatives k2 = eval(shifted(s, k1, h / 2), s.time_s + h / 2);
  const FollowerDerivatives k3 = eval(shifted(s, k2, h / 2), s.time_s + h / 2);
  const FollowerDerivatives k4 = eval(shifted(s, k3, h), s.time_s + h);

  StepResult r;
  r.state = s;
  r.state.position_m += h / 6 * (k1.d_position + 2 * k2.d_position + 2 * k3.d_position + k4.d_position);
  r.state.velocity_mps += h / 6 * (k1.d_velocity + 2 * k2.d_velocity + 2 * k3.d_velocity + k4.d_velocity);
  r.state.accel_mps2 += h / 6 * (k1.d_accel + 2 * k2.d_accel + 2 * k3.d_accel + k4.d_accel);
  r.state.input_u += h / 6 * (k1.d_input + 2 * k2.d_input + 2 * k3.d_input + k4.d_input);
  r.state.time_s = s.time_s + h;
  // No reversing: hold at standstill until the commanded input turns positive.
  if (r.state.velocity_mps < 0.0) {
    r.state.velocity_mps = 0.0;
    r.state.accel_mps2 = std::max(r.state.accel_mps2, 0.0);
    r.state.position_m = std::max(r.state.position_m, s.position_m);
    r.clamped = true;
  }
  return r;
}

}  // namespace ecocacc::detail

namespace ecocacc {

template <typename PredecessorFn>
std::vector<TimeSeriesSample> integrate_follower(PredecessorFn&& predecessor, double pred_length_m,
                                                 FollowerState init, const CaccParams& params,
                                                 const VehicleParams& p, double horizon_s) {
  std::vector<TimeSeriesSample> out;
  FollowerState s = init;
  const auto record = [&](const FollowerState& x) {
    const PredecessorState pred = predecessor(x.time_s);
    out.push_back({x.time_s, x, spacing_error(pred.position_m, x, pred_length_m, params.spacing)});
  };
  record(s);
  const double end = init.time_s + horizon_s;
  while (s.time_s < end - 1e-9) {
    s = detail::rk4_step(predecessor, pred_length_m, s, params, p).state;
    record(s);
  }
  return out;
}

}  // namespace ecocacc
