#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ecocacc/cacc.hpp"
#include "ecocacc/dp_planner.hpp"
#include "ecocacc/error.hpp"
#include "support/fixtures.hpp"

using namespace ecocacc;

namespace {

auto cruising(double x0, double v) {
  return [x0, v](double t) { return PredecessorState{x0 + v * t, v, 0.0, 0.0}; };
}

FollowerState behind(double pred_x, double pred_len, const SpacingPolicy& pol, double v, double extra_gap) {
  FollowerState s;
  s.velocity_mps = v;
  s.position_m = pred_x - pred_len - desired_spacing(pol, v) - extra_gap;
  return s;
}

}  // namespace

TEST(Spacing, Examples) {
  const SpacingPolicy pol{2.0, 0.6};
  EXPECT_EQ(desired_spacing(pol, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(desired_spacing(pol, 10.0), 8.0);
  EXPECT_NEAR(desired_spacing(pol, 20.0) - desired_spacing(pol, 10.0), 0.6 * 10.0, 1e-12);
  EXPECT_THROW(desired_spacing(pol, -1.0), DomainError);
}

TEST(Spacing, ErrorExamples) {
  const SpacingPolicy pol{2.0, 0.6};
  FollowerState s;
  s.position_m = 87.0;
  s.velocity_mps = 10.0;
  EXPECT_NEAR(spacing_error(100.0, s, 5.0, pol), 0.0, 1e-12);
  s.velocity_mps = 11.0;
  EXPECT_NEAR(spacing_error(100.0, s, 5.0, pol), -0.6, 1e-12);
  s.position_m = 96.0;
  EXPECT_THROW(spacing_error(100.0, s, 5.0, pol), SimulationError);
}

TEST(Spacing, PolicyValidation) {
  EXPECT_THROW((SpacingPolicy{0.0, 0.6}.validate()), ConfigError);
  EXPECT_THROW((SpacingPolicy{2.0, 0.0}.validate()), ConfigError);
}

TEST(Controller, EquilibriumIsStationary) {
  CaccParams params;
  FollowerState s;
  s.position_m = 100.0 - 5.0 - desired_spacing(params.spacing, 12.0);
  s.velocity_mps = 12.0;
  const PredecessorState pred{100.0, 12.0, 0.0, 0.0};
  const FollowerDerivatives d = follower_derivatives(s, pred, 5.0, params, s.input_u);
  EXPECT_NEAR(d.d_input, 0.0, 1e-12);
  EXPECT_NEAR(d.d_accel, 0.0, 1e-12);
}

TEST(Controller, ProportionalTerm) {
  CaccParams params;
  params.spacing = {2.0, 0.6};
  FollowerState s;
  s.position_m = 100.0 - 5.0 - 2.0 - 1.0;  // e = 1 at standstill
  const PredecessorState pred{100.0, 0.0, 0.0, 0.0};
  EXPECT_NEAR(follower_derivatives(s, pred, 5.0, params, 0.0).d_input, 0.001 / 0.6, 1e-12);
}

TEST(Controller, DrivelineLag) {
  CaccParams params;
  FollowerState s;
  s.input_u = 2.0;
  const PredecessorState pred{50.0, 0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(follower_derivatives(s, pred, 5.0, params, 2.0).d_accel, 4.0);
}

TEST(Follower, EquilibriumHeld) {
  CaccParams params;
  const VehicleParams p = ecocacc::testing::light_with(ecocacc::testing::flat_map(0.9));
  const auto series =
      integrate_follower(cruising(100.0, 15.0), 4.5, behind(100.0, 4.5, params.spacing, 15.0, 0.0), params, p, 100.0);
  for (const auto& x : series) EXPECT_LT(std::fabs(x.spacing_error_m), 1e-3);
}

// With kd = 10 the slowest closed-loop pole sits near -kp/kd, so the
// default kp = 0.001 leaves a 5 m error almost untouched after a minute.
TEST(Follower, DefaultGainsDecayAtKpOverKd) {
  CaccParams params;
  const VehicleParams p = ecocacc::testing::light_with(ecocacc::testing::flat_map(0.9));
  const auto series =
      integrate_follower(cruising(100.0, 15.0), 4.5, behind(100.0, 4.5, params.spacing, 15.0, 5.0), params, p, 60.0);
  const double rate = params.gains.kp / params.gains.kd;
  EXPECT_NEAR(series.back().spacing_error_m, 5.0 * std::exp(-rate * 60.0), 0.01);
  for (const auto& x : series) EXPECT_GT(x.spacing_error_m, 4.9);
}

TEST(Follower, ConvergesFromLargeGapWithStifferKp) {
  CaccParams params;
  params.spacing.headway_s = 1.0;
  params.gains.kp = 1.0;
  const VehicleParams p = ecocacc::testing::light_with(ecocacc::testing::flat_map(0.9));
  const auto series =
      integrate_follower(cruising(100.0, 15.0), 4.5, behind(100.0, 4.5, params.spacing, 15.0, 5.0), params, p, 60.0);
  EXPECT_LT(std::fabs(series.back().spacing_error_m), 0.1);
  for (const auto& x : series) EXPECT_GT(x.spacing_error_m, -1.0);
}

TEST(Follower, HalvingStepBarelyMovesResult) {
  CaccParams params;
  const VehicleParams p = ecocacc::testing::light_with(ecocacc::testing::flat_map(0.9));
  const FollowerState init = behind(100.0, 4.5, params.spacing, 15.0, 5.0);
  const auto coarse = integrate_follower(cruising(100.0, 15.0), 4.5, init, params, p, 30.0);
  CaccParams fine_params = params;
  fine_params.dt_sim_s = params.dt_sim_s / 2;
  const auto fine = integrate_follower(cruising(100.0, 15.0), 4.5, init, fine_params, p, 30.0);
  EXPECT_LT(std::fabs(coarse.back().state.position_m - fine.back().state.position_m), 1e-3);
}

TEST(Follower, ResampledBehindPlannedLeader) {
  const VehicleParams p = ecocacc::testing::light_with(ecocacc::testing::synthetic_map());
  PlanRequest r;
  r.vehicle = &p;
  r.route_end_m = 400.0;
  r.speed_limit_mps = 15.0;
  r.v_des_mps = 15.0;
  r.weights = {0.0, 1.0, 1.0, 1e6};
  r.exit_speed_min_mps = 5.0;
  const PlanResult lead = plan_trajectory(r);

  CaccParams params;
  FollowerState init;
  init.position_m = -7.0;
  const FollowerSimulation sim = simulate_follower(lead.trajectory, p.length_m, init, params, p, 400.0, 1.0);
  const Trajectory& t = sim.trajectory;
  ASSERT_EQ(t.points.size(), 408u);
  const KinematicResiduals kr = kinematic_residuals(t);
  EXPECT_LE(kr.max_velocity_residual, 1e-6);
  EXPECT_LE(kr.max_time_residual, 1e-6);
  for (const auto& pt : t.points) {
    EXPECT_GE(pt.accel_mps2, p.accel_min_mps2 - 1e-9);
    EXPECT_LE(pt.accel_mps2, p.accel_max_mps2 + 1e-9);
    EXPECT_GE(pt.velocity_mps, 0.0);
    // Behind the leader at every grid point.
    if (pt.position_m >= 0.0) EXPECT_GT(pt.time_s, lead.trajectory.time_at_position(pt.position_m));
  }
  EXPECT_EQ(sim.clamps_while_rolling, 0u);
}

TEST(Follower, StalledPredecessorExhaustsHorizon) {
  const VehicleParams p = ecocacc::testing::light_with(ecocacc::testing::flat_map(0.9));
  Trajectory parked;
  parked.points.resize(2);
  parked.points[0].position_m = 10.0;
  parked.points[1].position_m = 11.0;
  parked.points[1].time_s = 1.0;
  parked.points[0].velocity_mps = 2.0;
  parked.points[0].accel_mps2 = -2.0;
  CaccParams params;
  FollowerState init;
  init.position_m = -5.0;
  try {
    simulate_follower(parked, 4.5, init, params, p, 100.0, 1.0, 200.0);
    FAIL() << "expected SimulationError";
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.kind(), SimulationError::Kind::kHorizon);
  }
}
