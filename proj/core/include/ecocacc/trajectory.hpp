#pragma once

#include <cstddef>
#include <vector>

namespace ecocacc {

/// One distance-grid sample. The motion fields (accel, energy, eta) describe
/// the step from this sample to the next; the last sample carries zeros there.
struct TrajectoryPoint {
  int step = 0;
  double position_m = 0.0;
  double time_s = 0.0;
  double velocity_mps = 0.0;
  double accel_mps2 = 0.0;
  double step_energy_wh = 0.0;
  double eta_tr = 0.0;
  bool traction = false;
  // Commanded acceleration, fed forward to a CACC follower.
  double command_u = 0.0;
};

struct Trajectory {
  double ds_m = 1.0;
  std::vector<TrajectoryPoint> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  double start_position_m() const { return points.front().position_m; }
  double end_position_m() const { return points.back().position_m; }

  double travel_time_s() const { return points.empty() ? 0.0 : points.back().time_s; }
  double energy_wh() const;

  /// Time at which the trajectory is at grid position s. Throws DomainError
  /// when s is outside the trajectory or off the grid.
  double time_at_position(double position_m) const;
};

/// First time the trajectory reaches position s, off-grid positions included.
/// Start time before the first sample; extrapolated at the final speed past
/// the last one (infinity if that speed is 0).
double time_reaching(const Trajectory& traj, double position_m);

/// Kinematic state obtained by sampling a trajectory in time.
struct SampledState {
  double position_m = 0.0;
  double velocity_mps = 0.0;
  double accel_mps2 = 0.0;
  double command_u = 0.0;
};

/// Samples the trajectory at time t assuming constant acceleration between
/// grid points. Before the first sample the vehicle waits at rest at its start;
/// after the last it keeps its final speed.
SampledState sample_at_time(const Trajectory& traj, double t_s);

struct KinematicResiduals {
  double max_velocity_residual = 0.0;  // |v'^2 - v^2 - 2 a ds|
  double max_time_residual = 0.0;      // |t' - t - 2 ds / (v' + v)|
};

KinematicResiduals kinematic_residuals(const Trajectory& traj);

/// Mean eta_tr over traction steps (over all steps if none is traction).
/// Throws DomainError for fewer than two samples.
double average_efficiency(const Trajectory& traj);

}  // namespace ecocacc
