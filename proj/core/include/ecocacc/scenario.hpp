#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ecocacc/cacc.hpp"
#include "ecocacc/dp_planner.hpp"
#include "ecocacc/signal_timing.hpp"
#include "ecocacc/vehicle_model.hpp"

namespace ecocacc {

struct Route {
  double length_m = 2500.0;
  double speed_limit_mps = 60.0 / 3.6;
  double ds_m = 1.0;

  friend bool operator==(const Route&, const Route&) = default;
};

/// A named vehicle type declared once in the config and referenced by the
/// platoon list.
struct VehicleClassConfig {
  std::string name;
  VehicleParams params;
  std::string motor_map_path;  // as written in the config
};

struct Scenario {
  std::string name = "scenario";
  Route route;
  std::vector<TrafficSignal> signals;
  std::vector<VehicleClassConfig> classes;
  std::vector<std::string> platoon;    // class name per vehicle, front to back
  std::vector<VehicleParams> vehicles;  // resolved from platoon + classes
  std::vector<double> start_positions_m;  // empty: standstill queue
  PlannerWeights weights;
  GridSpec grid;
  CaccParams cacc;
  double condition2_threshold = 0.80;
  double v_des_mps = 60.0 / 3.6;
  double green_end_guard_s = 0.0;
  double exit_speed_min_mps = 0.0;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

bool equivalent(const VehicleParams& a, const VehicleParams& b);
bool equivalent(const Scenario& a, const Scenario& b);

/// Parses scenario text. Relative motor-map paths resolve against base_dir.
Scenario parse_scenario(const std::string& text, const std::string& source,
                        const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

/// Writes the scenario back in the config grammar; exact for all numbers.
std::string serialize_scenario(const Scenario& scenario);

/// Applies `key=value` overrides to the [grid] section (plus route ds_m) and revalidates.
void apply_grid_override(Scenario& scenario, const std::string& assignment);

}  // namespace ecocacc
