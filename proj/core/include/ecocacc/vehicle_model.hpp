#pragma once

#include <memory>
#include <string>

#include "ecocacc/motor_map.hpp"

namespace ecocacc {

inline constexpr double kGravity = 9.81;

enum class VehicleClass { kLight, kHeavy };

/// How the recuperation branch applies eta_re. kMultiply recovers
/// P*dt*eta_re (never more than the braking energy); kDivideAsPrinted divides.
enum class RecuperationConvention { kMultiply, kDivideAsPrinted };

std::string to_string(VehicleClass c);
std::string to_string(RecuperationConvention c);

struct VehicleParams {
  double mass_kg = 1400.0;
  double drag_coeff = 0.36;
  double frontal_area_m2 = 4.5;
  double air_density_kg_m3 = 1.2;
  double rolling_friction_coeff = 0.008;
  double wheel_radius_m = 0.282;
  double gear_ratio = 3.92;
  double drivetrain_eff = 0.95;
  double recuperation_eff = 0.9;
  double road_grade_rad = 0.0;
  double accel_min_mps2 = -3.0;
  double accel_max_mps2 = 4.0;
  double length_m = 4.5;
  RecuperationConvention recuperation = RecuperationConvention::kMultiply;
  VehicleClass class_tag = VehicleClass::kLight;
  std::shared_ptr<const MotorMap> motor_map;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

/// Light and heavy presets from the vehicle parameter table; the caller
/// supplies the motor map and the unlisted fields keep their defaults.
VehicleParams light_vehicle_preset();
VehicleParams heavy_vehicle_preset();

/// Aerodynamic + rolling + grade resistance [N].
double total_resistance(const VehicleParams& p, double v_mps);

/// Motor torque required to hold acceleration a at speed v [N*m].
double required_torque(const VehicleParams& p, double v_mps, double a_mps2);

/// Motor shaft speed for a wheel speed v [rad/s].
double motor_speed(const VehicleParams& p, double v_mps);

double motor_efficiency(const MotorMap& map, double torque_nm, double speed_radps);

/// Power at the wheel [W]; negative while braking.
double wheel_power(const VehicleParams& p, double v_mps, double a_mps2);

struct StepEnergy {
  double energy_wh = 0.0;  // negative when energy is recovered
  double eta_tr = 0.0;     // motor efficiency looked up for this step
  double power_w = 0.0;
  bool traction = true;    // power_w >= 0
};

/// Battery-side energy for holding (v, a) over dt seconds.
StepEnergy step_energy(const VehicleParams& p, double v_mps, double a_mps2, double dt_s);

/// Energy for covering ds_m in dt_s at constant acceleration, evaluated at
/// the mean speed ds/dt so the wheel work is exactly force times distance.
StepEnergy distance_step_energy(const VehicleParams& p, double ds_m, double a_mps2, double dt_s);

}  // namespace ecocacc
