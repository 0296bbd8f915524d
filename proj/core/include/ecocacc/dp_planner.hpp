#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ecocacc/signal_timing.hpp"
#include "ecocacc/trajectory.hpp"
#include "ecocacc/vehicle_model.hpp"

namespace ecocacc {

struct PlannerWeights {
  double alpha = 0.0;  // energy [1/Wh]
  double beta = 1.0;   // mobility
  double gamma = 1.0;  // comfort
  double p_red = 1e6;  // red-arrival penalty

  void validate() const;
  friend bool operator==(const PlannerWeights&, const PlannerWeights&) = default;
};

/// Discretization of the planning problem.
///
/// Speeds live on a lattice uniform in v^2 with spacing 2 * accel_quantum * ds,
/// so every candidate acceleration (an integer multiple of accel_quantum) moves
/// exactly between lattice levels. Time is carried exactly; t_step_s is the
/// width of the buckets in which labels with equal speed are merged.
struct GridSpec {
  double ds_m = 1.0;
  double accel_quantum_mps2 = 0.5;
  double t_step_s = 0.5;
  /// Empty means the default set {-3, -2, -1, -0.5, 0, 0.5, 1, 2, a_max}
  /// clipped to the vehicle's limits.
  std::vector<double> a_candidates;
  /// Per-step speed cap; empty means the route speed limit everywhere.
  std::vector<double> v_max_profile;
  /// Bounds on the arrival time at the route end; t_max_s also caps every step.
  double t_min_s = 0.0;
  double t_max_s = 1000.0;
  /// Bucket-width multipliers of the coarse passes. Each pass seeds the pruning
  /// bound and the time prices used when merging labels in the next one.
  std::vector<int> coarse_factors = {16, 4};

  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

std::vector<double> default_accel_candidates(const VehicleParams& p);

/// (ds/(v+0.01) - ds/v_des)^2
double mobility_cost(double v_mps, double ds_m, double v_des_mps);

/// a^2
double comfort_cost(double a_mps2);

struct Transition {
  double v_next_mps = 0.0;
  double dt_s = 0.0;
};

/// Constant-acceleration step over ds. nullopt when the speed would turn
/// negative or the vehicle does not move.
std::optional<Transition> kinematic_transition(double v_mps, double a_mps2, double ds_m);

/// alpha*E + beta*M(v) + gamma*C(a). M uses the entry speed, E the mean
/// speed over the step.
double stage_cost(const VehicleParams& p, const PlannerWeights& w, double v_mps, double a_mps2, double dt_s,
                  double v_des_mps, double ds_m);

/// True when arriving at t counts as a red arrival: red, or fewer than
/// guard_s seconds of green left.
bool arrives_on_red(const TrafficSignal& sig, double t_arrival_s, double guard_s = 0.0);

/// Penalty for arriving at position_m at time t: p_red per signal located
/// there that shows red, 0 otherwise.
double red_penalty(const std::vector<TrafficSignal>& signals, double position_m, double t_arrival_s, double p_red,
                   double guard_s = 0.0);

/// Step-indexed form: position = start + k * ds.
double red_penalty(const std::vector<TrafficSignal>& signals, int k, double t_arrival_s, double ds_m, double p_red,
                   double start_position_m = 0.0, double guard_s = 0.0);

struct PlanRequest {
  const VehicleParams* vehicle = nullptr;
  std::vector<TrafficSignal> signals;
  PlannerWeights weights;
  GridSpec grid;
  double start_position_m = 0.0;
  double start_time_s = 0.0;
  double start_velocity_mps = 0.0;
  double route_end_m = 0.0;
  double speed_limit_mps = 60.0 / 3.6;
  double v_des_mps = 60.0 / 3.6;
  /// Optional earliest admissible time per step (size steps + 1).
  std::vector<double> time_lower_bound;
  /// Treat the last guard seconds of every green as red.
  double green_end_guard_s = 0.0;
  /// Lowest speed allowed at the route end; 0 lets the vehicle stop there.
  double exit_speed_min_mps = 0.0;
};

struct PlanResult {
  Trajectory trajectory;
  double total_cost = 0.0;
  int red_arrivals = 0;
  bool red_unavoidable = false;
  std::size_t labels_expanded = 0;
};

/// Distance-indexed dynamic program over (speed level, time) labels.
/// Throws PlanningError when no terminal state is reachable.
PlanResult plan_trajectory(const PlanRequest& request);

/// Sum of stage costs and red penalties along a trajectory, recomputed
/// from its samples with the public cost functions.
double evaluate_trajectory_cost(const PlanRequest& request, const Trajectory& traj);

}  // namespace ecocacc
