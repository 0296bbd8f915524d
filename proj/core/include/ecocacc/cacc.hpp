#pragma once

#include <cstddef>

#include "ecocacc/trajectory.hpp"
#include "ecocacc/vehicle_model.hpp"

namespace ecocacc {

/// Constant time-gap spacing: desired gap = standstill + headway * v.
struct SpacingPolicy {
  double standstill_m = 2.0;
  double headway_s = 0.6;

  void validate() const;
  friend bool operator==(const SpacingPolicy&, const SpacingPolicy&) = default;
};

struct CaccGains {
  double kp = 0.001;
  double kd = 10.0;
  double ka = 1.0;

  void validate() const;
  friend bool operator==(const CaccGains&, const CaccGains&) = default;
};

struct CaccParams {
  double tau_s = 0.5;  // driveline time constant
  SpacingPolicy spacing;
  CaccGains gains;
  double dt_sim_s = 0.1;

  void validate() const;
  friend bool operator==(const CaccParams&, const CaccParams&) = default;
};

struct FollowerState {
  double position_m = 0.0;
  double velocity_mps = 0.0;
  double accel_mps2 = 0.0;
  double input_u = 0.0;
  double time_s = 0.0;
};

struct PredecessorState {
  double position_m = 0.0;
  double velocity_mps = 0.0;
  double accel_mps2 = 0.0;
  double input_u = 0.0;
};

struct FollowerDerivatives {
  double d_gap = 0.0;       // v_pred - v
  double d_position = 0.0;  // v
  double d_velocity = 0.0;  // a
  double d_accel = 0.0;     // (u_sat - a) / tau
  double d_input = 0.0;     // PID law on the spacing error
};

double desired_spacing(const SpacingPolicy& pol, double v_mps);

/// Gap to the predecessor's rear bumper minus the desired spacing.
/// Throws SimulationError(kCollision) when the bumper gap is not positive.
double spacing_error(double pred_position_m, const FollowerState& self, double pred_length_m,
                     const SpacingPolicy& pol);

/// Right-hand side of the third-order follower model with the PID input law.
/// u_sat is the commanded input after saturation; pass self.input_u to
/// evaluate the unsaturated law.
FollowerDerivatives follower_derivatives(const FollowerState& self, const PredecessorState& pred,
                                         double pred_length_m, const CaccParams& params, double u_sat);

struct FollowerSimulation {
  Trajectory trajectory;          // resampled onto the distance grid
  std::size_t velocity_clamps = 0;
  std::size_t clamps_while_rolling = 0;
  double max_spacing_error_m = 0.0;
  double min_spacing_error_m = 0.0;
  double final_spacing_error_m = 0.0;
};

/// Integrates a follower behind a fixed predecessor trajectory with RK4
/// until it reaches route_end_m, and resamples it onto the ds grid that
/// starts at init.position_m. The resampled speeds come from the simulation;
/// times and accelerations are rebuilt from them with the constant-acceleration
/// step relations so that the grid trajectory is kinematically exact.
FollowerSimulation simulate_follower(const Trajectory& pred_traj, double pred_length_m, const FollowerState& init,
                                     const CaccParams& params, const VehicleParams& p, double route_end_m,
                                     double ds_m, double t_max_s = 1000.0);

struct TimeSeriesSample {
  double time_s = 0.0;
  FollowerState state;
  double spacing_error_m = 0.0;
};

/// Raw time-domain integration against an arbitrary predecessor, used for
/// controller studies (no resampling). Stops after horizon_s.
template <typename PredecessorFn>
std::vector<TimeSeriesSample> integrate_follower(PredecessorFn&& predecessor, double pred_length_m,
                                                 FollowerState init, const CaccParams& params,
                                                 const VehicleParams& p, double horizon_s);

namespace detail {
struct StepResult {
  FollowerState state;
  bool clamped = false;
};
template <typename PredecessorFn>
StepResult rk4_step(PredecessorFn& predecessor, double pred_length_m, const FollowerState& s,
                    const CaccParams& params, const VehicleParams& p);
}  // namespace detail

}  // namespace ecocacc

#include "ecocacc/cacc_impl.hpp"
