#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "ecocacc/error.hpp"
#include "ecocacc/platoon_strategy.hpp"
#include "ecocacc/scenario.hpp"
#include "support/fixtures.hpp"

using namespace ecocacc;

namespace {

// Grid trajectory with the given crossing times at each ds = 200 m point.
Trajectory timed(const std::vector<double>& times) {
  Trajectory t;
  t.ds_m = 200.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    TrajectoryPoint p;
    p.step = static_cast<int>(k);
    p.position_m = 200.0 * static_cast<double>(k);
    p.time_s = times[k];
    t.points.push_back(p);
  }
  return t;
}

const std::vector<TrafficSignal> kArterial{{600.0, 72.0, 88.0, 0.0}, {2000.0, 75.0, 95.0, 0.0}};

Scenario short_route(int n_light, std::vector<TrafficSignal> signals) {
  Scenario sc;
  sc.name = "short";
  sc.route.length_m = 500.0;
  sc.route.speed_limit_mps = 15.0;
  sc.v_des_mps = 15.0;
  sc.signals = std::move(signals);
  sc.weights = {0.0, 1.0, 1.0, 1e6};
  sc.exit_speed_min_mps = 5.0;
  sc.cacc.spacing.headway_s = 1.0;
  const auto map = ecocacc::testing::synthetic_map();
  for (int i = 0; i < n_light; ++i) {
    sc.platoon.push_back("light");
    sc.vehicles.push_back(ecocacc::testing::light_with(map));
  }
  return sc;
}

}  // namespace

TEST(Condition1, PassesInsideGreen) {
  std::vector<double> times(11);
  for (int k = 0; k <= 10; ++k) times[static_cast<std::size_t>(k)] = k <= 3 ? 50.0 * k / 3 : 50.0 + 120.0 * (k - 3) / 7;
  const Condition1Result r = check_condition1(timed(times), kArterial);
  EXPECT_TRUE(r.pass);
}

TEST(Condition1, FailsAtFirstRedSignal) {
  std::vector<double> times(11);
  for (int k = 0; k <= 10; ++k) times[static_cast<std::size_t>(k)] = 100.0 * k / 3;
  const Condition1Result r = check_condition1(timed(times), kArterial);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.signal_index, 0);
  EXPECT_NEAR(r.arrival_s, 100.0, 1e-9);
}

TEST(Condition1, IgnoresSignalsOutsideTheTrajectory) {
  Trajectory t = timed({0.0, 10.0, 20.0});
  EXPECT_TRUE(check_condition1(t, kArterial).pass);
}

TEST(Condition2, ThresholdIsStrict) {
  EXPECT_TRUE(check_condition2(0.85, 0.80));
  EXPECT_FALSE(check_condition2(0.75, 0.80));
  EXPECT_TRUE(check_condition2(0.80, 0.80));
}

TEST(Queue, StandstillGapsOnGrid) {
  Scenario sc = short_route(3, {});
  sc.vehicles.push_back(ecocacc::testing::heavy_with(ecocacc::testing::synthetic_map()));
  sc.vehicles.push_back(ecocacc::testing::light_with(ecocacc::testing::synthetic_map()));
  sc.platoon = {"light", "light", "light", "heavy", "light"};
  const auto pos = queue_start_positions(sc);
  EXPECT_EQ(pos, (std::vector<double>{0.0, -7.0, -14.0, -21.0, -29.0}));
  for (std::size_t i = 1; i < pos.size(); ++i) {
    EXPECT_GE(pos[i - 1] - pos[i], sc.vehicles[i - 1].length_m + sc.cacc.spacing.standstill_m - 1e-9);
  }
}

TEST(Platoon, SingleVehicleIsThePlannedLeader) {
  const Scenario sc = short_route(1, {{300.0, 20.0, 20.0, 0.0}});
  const PlatoonResult res = run_platoon(sc);
  ASSERT_EQ(res.vehicles.size(), 1u);
  EXPECT_EQ(role_name(res.vehicles[0].role), "Leader");
  const PlanRequest req = make_plan_request(sc, 0);
  const PlanResult plan = plan_trajectory(req);
  ASSERT_EQ(plan.trajectory.points.size(), res.vehicles[0].trajectory.points.size());
  for (std::size_t k = 0; k < plan.trajectory.points.size(); ++k) {
    EXPECT_EQ(plan.trajectory.points[k].time_s, res.vehicles[0].trajectory.points[k].time_s);
    EXPECT_EQ(plan.trajectory.points[k].velocity_mps, res.vehicles[0].trajectory.points[k].velocity_mps);
  }
  EXPECT_DOUBLE_EQ(res.avg_energy_wh, plan.trajectory.energy_wh());
}

TEST(Platoon, AlwaysGreenHomogeneousNeedsNoReplans) {
  const Scenario sc = short_route(3, {{300.0, 1e5, 1.0, 0.0}});
  const PlatoonResult res = run_platoon(sc);
  ASSERT_EQ(res.vehicles.size(), 3u);
  EXPECT_EQ(role_name(res.vehicles[0].role), "Leader");
  EXPECT_EQ(role_name(res.vehicles[1].role), "Follower");
  EXPECT_EQ(role_name(res.vehicles[2].role), "Follower");
  EXPECT_EQ(res.vehicles[1].role.follows, 0);
  EXPECT_EQ(res.vehicles[2].role.follows, 1);
}

TEST(Platoon, ShortGreenSplitsThePlatoon) {
  // Green lasts just long enough for the first five vehicles.
  Scenario sc = short_route(6, {{250.0, 25.5, 60.0, 0.0}});
  sc.weights.beta = 1e4;
  const PlatoonResult res = run_platoon(sc);
  int condition1 = 0;
  for (const auto& v : res.vehicles) {
    if (v.role.reason == NewLeaderReason::kCondition1) ++condition1;
    for (std::size_t s = 0; s < sc.signals.size(); ++s) {
      EXPECT_EQ(phase_at(sc.signals[s], v.crossing_times_s[s]), Phase::kGreen) << "vehicle " << v.index + 1;
    }
  }
  EXPECT_EQ(condition1, 1);
  EXPECT_EQ(reason_name(res.vehicles[5].role), "Condition1");
}

TEST(Platoon, OrderPreservedAndSuffixReproducible) {
  const Scenario sc = short_route(5, {{250.0, 32.0, 40.0, 0.0}});
  const PlatoonResult full = run_platoon(sc);
  for (std::size_t i = 1; i < full.vehicles.size(); ++i) {
    const Trajectory& front = full.vehicles[i - 1].trajectory;
    for (const auto& pt : full.vehicles[i].trajectory.points) {
      if (pt.position_m < front.start_position_m()) continue;
      EXPECT_GT(pt.time_s, front.time_at_position(pt.position_m)) << "vehicle " << i + 1;
    }
  }
  for (std::size_t cut = 1; cut < full.vehicles.size(); ++cut) {
    const std::vector<VehicleOutcome> prefix(full.vehicles.begin(), full.vehicles.begin() + static_cast<long>(cut));
    const PlatoonResult again = run_platoon(sc, prefix);
    for (std::size_t i = cut; i < full.vehicles.size(); ++i) {
      EXPECT_EQ(again.vehicles[i].role, full.vehicles[i].role);
      EXPECT_EQ(again.vehicles[i].energy_wh, full.vehicles[i].energy_wh);
      EXPECT_EQ(again.vehicles[i].travel_time_s, full.vehicles[i].travel_time_s);
    }
  }
}

TEST(Platoon, FollowersRealizeTheirPrediction) {
  const Scenario sc = short_route(4, {{250.0, 32.0, 40.0, 0.0}});
  const PlatoonResult res = run_platoon(sc);
  for (const auto& v : res.vehicles) {
    if (v.role.kind != RoleKind::kFollower) continue;
    EXPECT_TRUE(check_condition1(v.trajectory, sc.signals).pass);
    EXPECT_GE(v.avg_eta_tr, sc.condition2_threshold);
  }
}

TEST(Platoon, HeavyFollowerTripsEfficiencyCheck) {
  Scenario sc = short_route(2, {});
  SyntheticMapSpec heavy_spec;
  heavy_spec.peak = 0.90;
  heavy_spec.torque_max_nm = 300.0;
  heavy_spec.speed_max_radps = 400.0;
  sc.vehicles.push_back(ecocacc::testing::heavy_with(std::make_shared<MotorMap>(make_synthetic_motor_map(heavy_spec))));
  sc.platoon.push_back("heavy");
  const PlatoonResult res = run_platoon(sc);
  EXPECT_EQ(role_name(res.vehicles[1].role), "Follower");
  EXPECT_EQ(role_name(res.vehicles[2].role), "NewLeader");
  EXPECT_EQ(reason_name(res.vehicles[2].role), "Condition2");
  EXPECT_LT(res.vehicles[2].predicted_avg_eta, 0.80);
}

TEST(Platoon, PrefixLongerThanPlatoonRejected) {
  const Scenario sc = short_route(1, {});
  std::vector<VehicleOutcome> prefix(2);
  EXPECT_THROW(run_platoon(sc, prefix), ConfigError);
}
