#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "ecocacc/motor_map.hpp"
#include "ecocacc/vehicle_model.hpp"

namespace ecocacc::testing {

inline std::shared_ptr<const MotorMap> flat_map(double eta) {
  return std::make_shared<MotorMap>(std::vector<double>{0.0, 2000.0}, std::vector<double>{0.0, 3000.0},
                                    std::vector<double>{eta, eta, eta, eta});
}

inline std::shared_ptr<const MotorMap> synthetic_map() {
  SyntheticMapSpec spec;
  spec.torque_max_nm = 60.0;
  spec.speed_max_radps = 300.0;
  spec.exponent = 6.0;
  return std::make_shared<MotorMap>(make_synthetic_motor_map(spec));
}

inline VehicleParams light_with(std::shared_ptr<const MotorMap> map) {
  VehicleParams p = light_vehicle_preset();
  p.motor_map = std::move(map);
  return p;
}

inline VehicleParams heavy_with(std::shared_ptr<const MotorMap> map) {
  VehicleParams p = heavy_vehicle_preset();
  p.motor_map = std::move(map);
  return p;
}

inline std::filesystem::path scenario_dir() { return ECOCACC_TEST_SCENARIO_DIR; }

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ecocacc_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ecocacc::testing
