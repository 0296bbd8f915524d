#include <benchmark/benchmark.h>

#include <memory>

#include "ecocacc/cacc.hpp"
#include "ecocacc/dp_planner.hpp"
#include "ecocacc/motor_map.hpp"
#include "ecocacc/vehicle_model.hpp"

using namespace ecocacc;

namespace {

VehicleParams light() {
  SyntheticMapSpec spec;
  spec.torque_max_nm = 60.0;
  spec.speed_max_radps = 300.0;
  spec.exponent = 6.0;
  VehicleParams p = light_vehicle_preset();
  p.motor_map = std::make_shared<MotorMap>(make_synthetic_motor_map(spec));
  return p;
}

PlanRequest route(const VehicleParams& p, double length_m) {
  PlanRequest r;
  r.vehicle = &p;
  r.route_end_m = length_m;
  r.speed_limit_mps = 60.0 / 3.6;
  r.v_des_mps = 60.0 / 3.6;
  r.weights = {1000.0, 1000.0, 1.0, 1e6};
  r.signals = {{0.24 * length_m, 72.0, 88.0, 0.0}};
  r.exit_speed_min_mps = 5.0;
  return r;
}

}  // namespace

static void BM_StepEnergy(benchmark::State& state) {
  const VehicleParams p = light();
  double v = 0.0;
  for (auto _ : state) {
    v = v > 16.0 ? 0.5 : v + 0.37;
    benchmark::DoNotOptimize(step_energy(p, v, 0.5, 0.1));
  }
}
BENCHMARK(BM_StepEnergy);

static void BM_PlanRoute(benchmark::State& state) {
  const VehicleParams p = light();
  const PlanRequest r = route(p, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(plan_trajectory(r));
}
BENCHMARK(BM_PlanRoute)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_FollowPlannedLeader(benchmark::State& state) {
  const VehicleParams p = light();
  const PlanResult leader = plan_trajectory(route(p, 500.0));
  const CaccParams params;
  FollowerState init;
  init.position_m = -7.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_follower(leader.trajectory, p.length_m, init, params, p, 500.0, 1.0));
  }
}
BENCHMARK(BM_FollowPlannedLeader)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
