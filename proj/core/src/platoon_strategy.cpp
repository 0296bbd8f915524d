#include "ecocacc/platoon_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ecocacc/error.hpp"
#include "ecocacc/scenario.hpp"

namespace ecocacc {

std::string role_name(const VehicleRole& role) {
  switch (role.kind) {
    case RoleKind::kLeader:
      return "Leader";
    case RoleKind::kFollower:
      return "Follower";
    case RoleKind::kNewLeader:
      return "NewLeader";
  }
  return "Unknown";
}

std::string reason_name(const VehicleRole& role) {
  switch (role.reason) {
    case NewLeaderReason::kCondition1:
      return "Condition1";
    case NewLeaderReason::kCondition2:
      return "Condition2";
    case NewLeaderReason::kNone:
      break;
  }
  return "";
}

Condition1Result check_condition1(const Trajectory& candidate, const std::vector<TrafficSignal>& signals) {
  Condition1Result r;
  if (candidate.empty()) throw DomainError("candidate trajectory is empty");
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const auto& sig = signals[i];
    if (sig.position_m < candidate.start_position_m() || sig.position_m > candidate.end_position_m()) continue;
    const double t = candidate.time_at_position(sig.position_m);
    if (phase_at(sig, t) == Phase::kRed) {
      return {false, static_cast<int>(i), t};
    }
  }
  return r;
}

bool check_condition2(double avg_eta, double threshold) { return !(avg_eta < threshold); }

std::vector<double> queue_start_positions(const Scenario& scenario) {
  if (!scenario.start_positions_m.empty()) return scenario.start_positions_m;
  // Each vehicle is pushed back onto the distance grid behind its predecessor,
  // so every gap is at least r.
  const double ds = scenario.route.ds_m;
  std::vector<double> pos;
  for (std::size_t i = 0; i < scenario.vehicles.size(); ++i) {
    if (i == 0) {
      pos.push_back(0.0);
      continue;
    }
    const double want = pos.back() - scenario.vehicles[i - 1].length_m - scenario.cacc.spacing.standstill_m;
    pos.push_back(ds * std::floor(want / ds + 1e-9));
  }
  return pos;
}

PlanRequest make_plan_request(const Scenario& scenario, int index) {
  PlanRequest req;
  req.vehicle = &scenario.vehicles.at(static_cast<std::size_t>(index));
  req.signals = scenario.signals;
  req.weights = scenario.weights;
  req.grid = scenario.grid;
  req.grid.ds_m = scenario.route.ds_m;
  req.start_position_m = queue_start_positions(scenario).at(static_cast<std::size_t>(index));
  req.start_time_s = 0.0;
  req.start_velocity_mps = 0.0;
  req.route_end_m = scenario.route.length_m;
  req.speed_limit_mps = scenario.route.speed_limit_mps;
  req.v_des_mps = scenario.v_des_mps;
  req.green_end_guard_s = scenario.green_end_guard_s;
  req.exit_speed_min_mps = scenario.exit_speed_min_mps;
  return req;
}

namespace {

void fill_outcome(VehicleOutcome& o, const Scenario& scenario) {
  o.energy_wh = o.trajectory.energy_wh();
  o.travel_time_s = o.trajectory.travel_time_s();
  o.avg_eta_tr = average_efficiency(o.trajectory);
  o.crossing_times_s.clear();
  for (const auto& sig : scenario.signals) {
    if (sig.position_m < o.trajectory.start_position_m() || sig.position_m > o.trajectory.end_position_m()) {
      o.crossing_times_s.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      o.crossing_times_s.push_back(o.trajectory.time_at_position(sig.position_m));
    }
  }
}

// A replanned vehicle keeps at least the standstill gap plus one headway of
// time behind its predecessor, and departs once that is feasible.
void new_leader_time_bound(PlanRequest& req, const Trajectory& pred, double pred_length_m, const SpacingPolicy& pol) {
  const int steps = static_cast<int>(std::lround((req.route_end_m - req.start_position_m) / req.grid.ds_m));
  req.time_lower_bound.resize(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    const double s = req.start_position_m + k * req.grid.ds_m;
    req.time_lower_bound[static_cast<std::size_t>(k)] =
        time_reaching(pred, s + pred_length_m + pol.standstill_m) + pol.headway_s;
  }
  const std::vector<double> cands =
      req.grid.a_candidates.empty() ? default_accel_candidates(*req.vehicle) : req.grid.a_candidates;
  double gentlest = std::numeric_limits<double>::infinity();
  for (double a : cands) {
    if (a > 0.0) gentlest = std::min(gentlest, a);
  }
  double start = std::max(req.start_time_s, req.time_lower_bound[0]);
  if (std::isfinite(gentlest) && steps >= 1) {
    start = std::max(start, req.time_lower_bound[1] - std::sqrt(2.0 * req.grid.ds_m / gentlest));
  }
  req.start_time_s = start;
}

PlanResult plan_or_throw(const PlanRequest& req, int index) {
  try {
    return plan_trajectory(req);
  } catch (const PlanningError& e) {
    throw PipelineError(index + 1, "plan", e.what());
  }
}

}  // namespace

void summarize(PlatoonResult& result) {
  result.avg_energy_wh = 0.0;
  result.avg_travel_time_s = 0.0;
  result.max_velocity_mps = 0.0;
  result.max_abs_accel_mps2 = 0.0;
  if (result.vehicles.empty()) return;
  for (const auto& v : result.vehicles) {
    result.avg_energy_wh += v.energy_wh;
    result.avg_travel_time_s += v.travel_time_s;
    for (const auto& pt : v.trajectory.points) {
      result.max_velocity_mps = std::max(result.max_velocity_mps, pt.velocity_mps);
      result.max_abs_accel_mps2 = std::max(result.max_abs_accel_mps2, std::fabs(pt.accel_mps2));
    }
  }
  const double n = static_cast<double>(result.vehicles.size());
  result.avg_energy_wh /= n;
  result.avg_travel_time_s /= n;
}

PlatoonResult run_platoon(const Scenario& scenario) { return run_platoon(scenario, {}); }

PlatoonResult run_platoon(const Scenario& scenario, const std::vector<VehicleOutcome>& prefix) {
  scenario.validate();
  PlatoonResult result;
  result.vehicles = prefix;
  const int n = static_cast<int>(scenario.vehicles.size());
  if (static_cast<int>(prefix.size()) > n) throw ConfigError("prefix longer than the platoon");
  const std::vector<double> starts = queue_start_positions(scenario);

  for (int i = static_cast<int>(prefix.size()); i < n; ++i) {
    const VehicleParams& vp = scenario.vehicles[static_cast<std::size_t>(i)];
    VehicleOutcome o;
    o.index = i;
    o.vehicle_class = vp.class_tag;

    if (i == 0) {
      PlanResult plan = plan_or_throw(make_plan_request(scenario, i), i);
      o.role = {RoleKind::kLeader, -1, NewLeaderReason::kNone};
      o.trajectory = std::move(plan.trajectory);
      o.red_unavoidable = plan.red_unavoidable;
      fill_outcome(o, scenario);
      result.vehicles.push_back(std::move(o));
      continue;
    }

    const VehicleOutcome& pred = result.vehicles[static_cast<std::size_t>(i - 1)];
    const double pred_length = scenario.vehicles[static_cast<std::size_t>(i - 1)].length_m;
    FollowerState init;
    init.position_m = starts[static_cast<std::size_t>(i)];
    FollowerSimulation sim;
    try {
      sim = simulate_follower(pred.trajectory, pred_length, init, scenario.cacc, vp, scenario.route.length_m,
                              scenario.route.ds_m, scenario.grid.t_max_s);
    } catch (const SimulationError& e) {
      throw PipelineError(i + 1, "follow", e.what());
    }
    o.predicted = true;
    o.velocity_clamps = sim.velocity_clamps;
    o.clamps_while_rolling = sim.clamps_while_rolling;
    o.predicted_condition1 = check_condition1(sim.trajectory, scenario.signals);
    o.predicted_avg_eta = average_efficiency(sim.trajectory);

    NewLeaderReason reason = NewLeaderReason::kNone;
    if (!o.predicted_condition1.pass) {
      reason = NewLeaderReason::kCondition1;
    } else if (!check_condition2(o.predicted_avg_eta, scenario.condition2_threshold)) {
      reason = NewLeaderReason::kCondition2;
    }

    if (reason == NewLeaderReason::kNone) {
      o.role = {RoleKind::kFollower, i - 1, NewLeaderReason::kNone};
      o.trajectory = std::move(sim.trajectory);
    } else {
      PlanRequest req = make_plan_request(scenario, i);
      new_leader_time_bound(req, pred.trajectory, pred_length, scenario.cacc.spacing);
      PlanResult plan = plan_or_throw(req, i);
      o.role = {RoleKind::kNewLeader, -1, reason};
      o.trajectory = std::move(plan.trajectory);
      o.red_unavoidable = plan.red_unavoidable;
    }
    fill_outcome(o, scenario);
    result.vehicles.push_back(std::move(o));
  }
  summarize(result);
  return result;
}

}  // namespace ecocacc
