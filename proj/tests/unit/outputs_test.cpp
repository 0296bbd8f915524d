#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ecocacc/error.hpp"
#include "ecocacc/outputs.hpp"
#include "ecocacc/platoon_strategy.hpp"
#include "ecocacc/scenario.hpp"
#include "support/fixtures.hpp"

using namespace ecocacc;

namespace {

PlatoonResult two_vehicle_result() {
  PlatoonResult r;
  for (int i = 0; i < 2; ++i) {
    VehicleOutcome v;
    v.index = i;
    v.role = i == 0 ? VehicleRole{} : VehicleRole{RoleKind::kFollower, 0, NewLeaderReason::kNone};
    v.trajectory.ds_m = 1.0;
    for (int k = 0; k < 3; ++k) {
      TrajectoryPoint p;
      p.step = k;
      p.position_m = k - 7.0 * i;
      p.time_s = 0.5 * k;
      p.velocity_mps = k;
      p.accel_mps2 = k < 2 ? 1.0 : 0.0;
      p.step_energy_wh = 0.001 * k;
      p.eta_tr = 0.9;
      v.trajectory.points.push_back(p);
    }
    v.energy_wh = 0.003;
    v.travel_time_s = 1.0;
    v.avg_eta_tr = 0.9;
    v.crossing_times_s = {0.5, std::nan("")};
    r.vehicles.push_back(v);
  }
  summarize(r);
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Outputs, Headers) {
  EXPECT_STREQ(kTrajectoriesHeader, "vehicle_id,step_k,position_m,time_s,velocity_mps,accel_mps2,energy_wh,eta_tr");
  EXPECT_STREQ(kPlatoonHeader,
               "avg_energy_wh_per_veh,avg_travel_time_s_per_veh,max_velocity_mps,max_abs_accel_mps2");
  EXPECT_EQ(summary_header(2),
            "vehicle_id,role,reason,travel_time_s,energy_wh,avg_eta_tr,crossing_time_s_signal1,crossing_time_s_signal2");
}

TEST(Outputs, FormatNumberRoundTrips) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(2.5), "2.5");
  for (double x : {1.0 / 3.0, 2.0 / 7.0 * 1e-5, 16.666666666666668}) {
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
}

TEST(Outputs, SummaryRows) {
  std::ostringstream o;
  write_summary_csv(o, two_vehicle_result(), 2);
  std::istringstream in(o.str());
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "1,Leader,,1,0.003,0.9,0.5,");
  std::getline(in, line);
  EXPECT_EQ(line, "2,Follower,,1,0.003,0.9,0.5,");
}

TEST(Outputs, ComparisonAgainstReferenceTable) {
  const PlatoonMetrics a{1812.965, 234.86, 16.0, 3.0};
  const PlatoonMetrics b{1473.99, 305.85, 16.0, 3.0};
  const auto rows = compare_metrics(a, b);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NEAR(rows[0].delta, -338.975, 1e-9);
  EXPECT_NEAR(rows[0].delta_pct, -18.7, 0.05);
  EXPECT_NEAR(rows[1].delta, 70.99, 1e-9);
  EXPECT_NEAR(rows[1].delta_pct, 30.2, 0.05);
  EXPECT_EQ(rows[2].delta, 0.0);

  const auto same = compare_metrics(a, a);
  for (const auto& r : same) {
    EXPECT_EQ(r.delta, 0.0);
    EXPECT_EQ(r.delta_pct, 0.0);
  }
  const auto back = compare_metrics(b, a);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(back[i].delta, -rows[i].delta);

  const std::string table = format_comparison(rows);
  EXPECT_EQ(table.substr(0, table.find('\n')), "metric,run_a,run_b,delta,delta_pct");
}

TEST(Outputs, ZeroBaselineGivesNan) {
  const auto rows = compare_metrics({0.0, 1.0, 1.0, 1.0}, {2.0, 1.0, 1.0, 1.0});
  EXPECT_TRUE(std::isnan(rows[0].delta_pct));
}

TEST(Outputs, ReadPlatoonCsv) {
  std::ostringstream o;
  const PlatoonResult r = two_vehicle_result();
  write_platoon_csv(o, r);
  std::istringstream in(o.str());
  const PlatoonMetrics m = read_platoon_csv(in, "mem");
  EXPECT_EQ(m.avg_energy_wh, r.avg_energy_wh);
  EXPECT_EQ(m.max_velocity_mps, r.max_velocity_mps);

  std::istringstream empty("");
  EXPECT_THROW(read_platoon_csv(empty, "x"), ConfigError);
  std::istringstream wrong("a,b,c,d\n1,2,3,4\n");
  EXPECT_THROW(read_platoon_csv(wrong, "x"), ConfigError);
  std::istringstream short_row(std::string(kPlatoonHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_platoon_csv(short_row, "x"), ConfigError);
  std::istringstream text(std::string(kPlatoonHeader) + "\n1,2,x,4\n");
  EXPECT_THROW(read_platoon_csv(text, "x"), ConfigError);
  EXPECT_THROW(read_platoon_csv(std::filesystem::path("/nonexistent/platoon.csv")), ConfigError);
}

TEST(Outputs, WriteRunOutputsCreatesDirectory) {
  const auto dir = ecocacc::testing::scratch_dir("outputs") / "nested" / "run";
  write_run_outputs(dir, two_vehicle_result(), 2);
  for (const char* f : {"trajectories.csv", "summary.csv", "platoon.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const std::string traj = slurp(dir / "trajectories.csv");
  EXPECT_EQ(std::count(traj.begin(), traj.end(), '\n'), 7);
  EXPECT_EQ(traj.find('\r'), std::string::npos);
}

TEST(Outputs, RepeatedRunsAreByteIdentical) {
  Scenario sc;
  sc.name = "tiny";
  sc.route.length_m = 300.0;
  sc.route.speed_limit_mps = 15.0;
  sc.v_des_mps = 15.0;
  sc.signals = {{150.0, 20.0, 20.0, 0.0}};
  sc.weights = {1.0, 1.0, 1.0, 1e6};
  sc.exit_speed_min_mps = 5.0;
  const auto map = ecocacc::testing::synthetic_map();
  for (int i = 0; i < 3; ++i) {
    sc.platoon.push_back("light");
    sc.vehicles.push_back(ecocacc::testing::light_with(map));
  }
  const auto base = ecocacc::testing::scratch_dir("determinism");
  write_run_outputs(base / "a", run_platoon(sc), sc.signals.size());
  write_run_outputs(base / "b", run_platoon(sc), sc.signals.size());
  for (const char* f : {"trajectories.csv", "summary.csv", "platoon.csv"}) {
    EXPECT_EQ(slurp(base / "a" / f), slurp(base / "b" / f)) << f;
  }
}
