#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecocacc/platoon_strategy.hpp"

namespace ecocacc {

inline constexpr const char* kTrajectoriesHeader =
    "vehicle_id,step_k,position_m,time_s,velocity_mps,accel_mps2,energy_wh,eta_tr";
inline constexpr const char* kPlatoonHeader =
    "avg_energy_wh_per_veh,avg_travel_time_s_per_veh,max_velocity_mps,max_abs_accel_mps2";

/// summary.csv header; one crossing-time column per signal.
std::string summary_header(std::size_t signal_count);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double v);

void write_trajectories_csv(std::ostream& out, const PlatoonResult& result);
void write_summary_csv(std::ostream& out, const PlatoonResult& result, std::size_t signal_count);
void write_platoon_csv(std::ostream& out, const PlatoonResult& result);

/// Creates dir if needed and writes the three CSV files.
void write_run_outputs(const std::filesystem::path& dir, const PlatoonResult& result, std::size_t signal_count);

struct PlatoonMetrics {
  double avg_energy_wh = 0.0;
  double avg_travel_time_s = 0.0;
  double max_velocity_mps = 0.0;
  double max_abs_accel_mps2 = 0.0;
};

/// Throws ConfigError when the file is missing or does not match the schema.
PlatoonMetrics read_platoon_csv(std::istream& in, const std::string& source);
PlatoonMetrics read_platoon_csv(const std::filesystem::path& path);

struct MetricDelta {
  std::string metric;
  double run_a = 0.0;
  double run_b = 0.0;
  double delta = 0.0;      // b - a
  double delta_pct = 0.0;  // 100 * (b - a) / a; NaN when a is 0 and b is not
};

std::vector<MetricDelta> compare_metrics(const PlatoonMetrics& a, const PlatoonMetrics& b);

/// CSV table: metric,run_a,run_b,delta,delta_pct
std::string format_comparison(const std::vector<MetricDelta>& rows);

}  // namespace ecocacc
