#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ecocacc/cacc.hpp"
#include "ecocacc/dp_planner.hpp"
#include "ecocacc/signal_timing.hpp"
#include "ecocacc/trajectory.hpp"
#include "ecocacc/vehicle_model.hpp"

namespace ecocacc {

struct Scenario;

enum class RoleKind { kLeader, kFollower, kNewLeader };
enum class NewLeaderReason { kNone, kCondition1, kCondition2 };

struct VehicleRole {
  RoleKind kind = RoleKind::kLeader;
  int follows = -1;  // 0-based predecessor index for followers
  NewLeaderReason reason = NewLeaderReason::kNone;

  friend bool operator==(const VehicleRole&, const VehicleRole&) = default;
};

std::string role_name(const VehicleRole& role);    // Leader | Follower | NewLeader
std::string reason_name(const VehicleRole& role);  // "", Condition1, Condition2

struct Condition1Result {
  bool pass = true;
  int signal_index = -1;  // first violating signal
  double arrival_s = 0.0;
};

/// Green passage of every signal the trajectory covers.
Condition1Result check_condition1(const Trajectory& candidate, const std::vector<TrafficSignal>& signals);

/// Passes unless avg_eta is strictly below the threshold.
bool check_condition2(double avg_eta, double threshold);

struct VehicleOutcome {
  int index = 0;  // 0-based
  VehicleClass vehicle_class = VehicleClass::kLight;
  VehicleRole role;
  Trajectory trajectory;
  double energy_wh = 0.0;
  double travel_time_s = 0.0;
  double avg_eta_tr = 0.0;
  std::vector<double> crossing_times_s;  // per signal, NaN if not covered
  bool red_unavoidable = false;
  // Diagnostics of the following prediction (absent for the first vehicle).
  bool predicted = false;
  Condition1Result predicted_condition1;
  double predicted_avg_eta = 0.0;
  std::size_t velocity_clamps = 0;
  std::size_t clamps_while_rolling = 0;
};

struct PlatoonResult {
  std::vector<VehicleOutcome> vehicles;
  double avg_energy_wh = 0.0;
  double avg_travel_time_s = 0.0;
  double max_velocity_mps = 0.0;
  double max_abs_accel_mps2 = 0.0;
};

/// Standstill queue: vehicle i waits at -sum_{j<i} (L_j + r), rounded back onto the ds grid.
std::vector<double> queue_start_positions(const Scenario& scenario);

/// Planner request for vehicle `index` starting at rest at its queue position.
PlanRequest make_plan_request(const Scenario& scenario, int index);

/// Runs the leader / follower / new-leader pipeline over the whole platoon.
PlatoonResult run_platoon(const Scenario& scenario);

/// Same pipeline, with the first prefix.size() vehicles frozen to the given
/// outcomes; only the suffix is recomputed.
PlatoonResult run_platoon(const Scenario& scenario, const std::vector<VehicleOutcome>& prefix);

void summarize(PlatoonResult& result);

}  // namespace ecocacc
