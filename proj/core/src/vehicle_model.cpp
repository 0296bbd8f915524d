#include "ecocacc/vehicle_model.hpp"

#include <cmath>

#include "ecocacc/error.hpp"

namespace ecocacc {
namespace {

void require_nonnegative_speed(double v) {
  if (!(v >= 0.0)) throw DomainError("speed must be non-negative, got " + std::to_string(v));
}

}  // namespace

std::string to_string(VehicleClass c) { return c == VehicleClass::kHeavy ? "heavy" : "light"; }

std::string to_string(RecuperationConvention c) {
  return c == RecuperationConvention::kDivideAsPrinted ? "divide_as_printed" : "multiply";
}

void VehicleParams::validate() const {
  if (!(mass_kg > 0.0)) throw ConfigError("vehicle: mass_kg must be > 0");
  if (!(frontal_area_m2 > 0.0)) throw ConfigError("vehicle: frontal_area_m2 must be > 0");
  if (!(wheel_radius_m > 0.0)) throw ConfigError("vehicle: wheel_radius_m must be > 0");
  if (!(gear_ratio > 0.0)) throw ConfigError("vehicle: gear_ratio must be > 0");
  if (!(drag_coeff >= 0.0)) throw ConfigError("vehicle: drag_coeff must be >= 0");
  if (!(air_density_kg_m3 >= 0.0)) throw ConfigError("vehicle: air_density_kg_m3 must be >= 0");
  if (!(rolling_friction_coeff >= 0.0)) throw ConfigError("vehicle: rolling_friction_coeff must be >= 0");
  if (!(drivetrain_eff > 0.0 && drivetrain_eff <= 1.0)) throw ConfigError("vehicle: drivetrain_eff must be in (0, 1]");
  if (!(recuperation_eff > 0.0 && recuperation_eff <= 1.0)) {
    throw ConfigError("vehicle: recuperation_eff must be in (0, 1]");
  }
  if (!(accel_min_mps2 < 0.0 && accel_max_mps2 > 0.0)) {
    throw ConfigError("vehicle: acceleration limits must satisfy accel_min < 0 < accel_max");
  }
  if (!(length_m > 0.0)) throw ConfigError("vehicle: length_m must be > 0");
  if (!motor_map || motor_map->empty()) throw ConfigError("vehicle: motor map missing");
}

VehicleParams light_vehicle_preset() { return VehicleParams{}; }

VehicleParams heavy_vehicle_preset() {
  VehicleParams p;
  p.mass_kg = 1900.0;
  p.drag_coeff = 0.7;
  p.frontal_area_m2 = 8.5;
  p.accel_max_mps2 = 2.5;
  p.length_m = 6.0;
  p.class_tag = VehicleClass::kHeavy;
  return p;
}

double total_resistance(const VehicleParams& p, double v_mps) {
  require_nonnegative_speed(v_mps);
  const double aero = 0.5 * p.drag_coeff * p.frontal_area_m2 * p.air_density_kg_m3 * v_mps * v_mps;
  const double rolling = p.rolling_friction_coeff * p.mass_kg * kGravity * std::cos(p.road_grade_rad);
  const double grade = p.mass_kg * kGravity * std::sin(p.road_grade_rad);
  return aero + rolling + grade;
}

double required_torque(const VehicleParams& p, double v_mps, double a_mps2) {
  return p.wheel_radius_m / (p.gear_ratio * p.drivetrain_eff) * (total_resistance(p, v_mps) + p.mass_kg * a_mps2);
}

double motor_speed(const VehicleParams& p, double v_mps) {
  require_nonnegative_speed(v_mps);
  return v_mps * p.gear_ratio / p.wheel_radius_m;
}

double motor_efficiency(const MotorMap& map, double torque_nm, double speed_radps) {
  return map.efficiency(torque_nm, speed_radps);
}

double wheel_power(const VehicleParams& p, double v_mps, double a_mps2) {
  return (p.mass_kg * a_mps2 + total_resistance(p, v_mps)) * v_mps;
}

StepEnergy step_energy(const VehicleParams& p, double v_mps, double a_mps2, double dt_s) {
  if (!(dt_s > 0.0)) throw DomainError("step duration must be > 0");
  if (!p.motor_map) throw ConfigError("vehicle: motor map missing");
  StepEnergy out;
  out.power_w = wheel_power(p, v_mps, a_mps2);
  out.eta_tr = motor_efficiency(*p.motor_map, required_torque(p, v_mps, a_mps2), motor_speed(p, v_mps));
  const double mechanical_wh = out.power_w * dt_s / 3600.0;
  if (out.power_w >= 0.0) {
    out.traction = true;
    out.energy_wh = mechanical_wh / out.eta_tr;
  } else {
    out.traction = false;
    out.energy_wh = p.recuperation == RecuperationConvention::kMultiply ? mechanical_wh * p.recuperation_eff
                                                                         : mechanical_wh / p.recuperation_eff;
  }
  return out;
}

StepEnergy distance_step_energy(const VehicleParams& p, double ds_m, double a_mps2, double dt_s) {
  if (!(dt_s > 0.0)) throw DomainError("step duration must be > 0");
  return step_energy(p, ds_m / dt_s, a_mps2, dt_s);
}

}  // namespace ecocacc
