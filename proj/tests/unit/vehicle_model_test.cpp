#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ecocacc/error.hpp"
#include "ecocacc/vehicle_model.hpp"
#include "support/fixtures.hpp"

using namespace ecocacc;
using ecocacc::testing::flat_map;
using ecocacc::testing::light_with;
using ecocacc::testing::heavy_with;

TEST(Resistance, RollingOnlyAtStandstill) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_NEAR(total_resistance(p, 0.0), 109.872, 1e-9);
}

TEST(Resistance, LightAt10) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_NEAR(total_resistance(p, 10.0), 207.072, 1e-9);
}

TEST(Resistance, VanishesWithoutDragOrRolling) {
  VehicleParams p = light_with(flat_map(0.9));
  p.drag_coeff = 0.0;
  p.rolling_friction_coeff = 0.0;
  EXPECT_EQ(total_resistance(p, 23.0), 0.0);
}

TEST(Resistance, GradeAddsWeightComponent) {
  VehicleParams p = light_with(flat_map(0.9));
  p.road_grade_rad = 0.05;
  const double expected = 0.5 * 0.36 * 4.5 * 1.2 * 25.0 + 0.008 * 1400 * 9.81 * std::cos(0.05) +
                          1400 * 9.81 * std::sin(0.05);
  EXPECT_NEAR(total_resistance(p, 5.0), expected, 1e-9);
}

TEST(Resistance, NegativeSpeedRejected) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_THROW(total_resistance(p, -1.0), DomainError);
}

TEST(Resistance, StrictlyIncreasingInSpeed) {
  const VehicleParams p = light_with(flat_map(0.9));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> v(0.01, 40.0);
  for (int i = 0; i < 200; ++i) {
    const double a = v(rng);
    const double b = a + 0.01 + v(rng);
    EXPECT_LT(total_resistance(p, a), total_resistance(p, b));
  }
}

TEST(Torque, StandstillHoldsRollingResistance) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_NEAR(required_torque(p, 0.0, 0.0), 0.282 / (3.92 * 0.95) * 109.872, 1e-12);
  EXPECT_NEAR(required_torque(p, 0.0, 0.0), 8.320, 5e-4);
}

TEST(Torque, ZeroWhenAccelCancelsResistance) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_NEAR(required_torque(p, 0.0, -109.872 / 1400.0), 0.0, 1e-12);
}

TEST(Torque, HeavyNeedsMoreThanLight) {
  const VehicleParams light = light_with(flat_map(0.9));
  const VehicleParams heavy = heavy_with(flat_map(0.9));
  EXPECT_GT(required_torque(heavy, 10.0, 1.0), required_torque(light, 10.0, 1.0));
}

TEST(Torque, AffineInAccelWithFixedSlope) {
  const VehicleParams p = light_with(flat_map(0.9));
  const double slope = 0.282 * 1400 / (3.92 * 0.95);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> v(0.0, 30.0);
  std::uniform_real_distribution<double> a(-3.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double vv = v(rng);
    const double a1 = a(rng);
    const double a2 = a(rng);
    EXPECT_NEAR(required_torque(p, vv, a2) - required_torque(p, vv, a1), slope * (a2 - a1), 1e-9);
  }
}

TEST(MotorSpeed, Examples) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_EQ(motor_speed(p, 0.0), 0.0);
  EXPECT_NEAR(motor_speed(p, 10.0), 139.01, 5e-3);
  EXPECT_NEAR(motor_speed(p, 20.0), 2.0 * motor_speed(p, 10.0), 1e-12);
}

TEST(WheelPower, Examples) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_EQ(wheel_power(p, 0.0, 2.5), 0.0);
  EXPECT_NEAR(wheel_power(p, 16.67, 0.0), 6334.0, 0.5);
  EXPECT_NEAR(wheel_power(p, 10.0, -2.0), -25929.28, 1e-6);
}

TEST(StepEnergy, StandstillCostsNothing) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_EQ(step_energy(p, 0.0, 0.0, 1.0).energy_wh, 0.0);
}

TEST(StepEnergy, TractionDividesByMotorEfficiency) {
  const VehicleParams p = light_with(flat_map(0.9));
  const double a = (360.0 - 207.072) / 1400.0;  // 3600 W at 10 m/s
  const StepEnergy e = step_energy(p, 10.0, a, 1.0);
  EXPECT_NEAR(e.power_w, 3600.0, 1e-9);
  EXPECT_TRUE(e.traction);
  EXPECT_NEAR(e.eta_tr, 0.9, 1e-12);
  EXPECT_NEAR(e.energy_wh, 1.0 / 0.9, 1e-12);
}

TEST(StepEnergy, RecuperationMultipliesByDefault) {
  const VehicleParams p = light_with(flat_map(0.9));
  const double a = (-360.0 - 207.072) / 1400.0;
  const StepEnergy e = step_energy(p, 10.0, a, 1.0);
  EXPECT_FALSE(e.traction);
  EXPECT_NEAR(e.energy_wh, -0.9, 1e-12);
}

TEST(StepEnergy, DivideAsPrintedConvention) {
  VehicleParams p = light_with(flat_map(0.9));
  p.recuperation = RecuperationConvention::kDivideAsPrinted;
  const double a = (-360.0 - 207.072) / 1400.0;
  EXPECT_NEAR(step_energy(p, 10.0, a, 1.0).energy_wh, -1.0 / 0.9, 1e-12);
}

TEST(StepEnergy, RejectsNonPositiveDuration) {
  const VehicleParams p = light_with(flat_map(0.9));
  EXPECT_THROW(step_energy(p, 5.0, 0.0, 0.0), DomainError);
}

TEST(StepEnergy, BoundsAgainstMechanicalEnergy) {
  const VehicleParams p = light_with(ecocacc::testing::synthetic_map());
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> v(0.0, 25.0);
  std::uniform_real_distribution<double> a(-3.0, 4.0);
  std::uniform_real_distribution<double> dt(0.01, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double vv = v(rng);
    const double aa = a(rng);
    const double tt = dt(rng);
    const StepEnergy e = step_energy(p, vv, aa, tt);
    const double mech = wheel_power(p, vv, aa) * tt / 3600.0;
    if (mech >= 0.0) {
      EXPECT_GE(e.energy_wh, mech - 1e-15);
    } else {
      EXPECT_LE(std::fabs(e.energy_wh), std::fabs(mech) + 1e-15);
    }
  }
}

TEST(StepEnergy, DistanceFormUsesMeanSpeed) {
  const VehicleParams p = light_with(flat_map(0.9));
  const double v0 = 8.0;
  const double a = 1.0;
  const double v1 = std::sqrt(v0 * v0 + 2.0 * a * 1.0);
  const double dt = 2.0 / (v0 + v1);
  const StepEnergy e = distance_step_energy(p, 1.0, a, dt);
  // Wheel work over the step is force times distance.
  const double work_j = (1400.0 * a + total_resistance(p, 1.0 / dt)) * 1.0;
  EXPECT_NEAR(e.energy_wh, work_j / 3600.0 / 0.9, 1e-12);
}

TEST(StepEnergy, AccelerateThenBrakeNeverGains) {
  const VehicleParams p = light_with(ecocacc::testing::synthetic_map());
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    double total = 0.0;
    double v = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double vn = std::sqrt(v * v + 2.0 * a);
      total += distance_step_energy(p, 1.0, a, 2.0 / (v + vn)).energy_wh;
      v = vn;
    }
    for (int k = 0; k < 20 && v > 0.0; ++k) {
      const double vn = std::sqrt(std::max(0.0, v * v - 2.0 * a * (a > 3.0 ? 0.75 : 1.0)));
      const double aa = (vn * vn - v * v) / 2.0;
      total += distance_step_energy(p, 1.0, aa, 2.0 / (v + vn)).energy_wh;
      v = vn;
    }
    EXPECT_GT(total, 0.0) << "a = " << a;
  }
}

TEST(VehicleParams, ValidateNamesTheField) {
  VehicleParams p = light_with(flat_map(0.9));
  p.mass_kg = 0.0;
  try {
    p.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("mass_kg"), std::string::npos);
  }
  VehicleParams q = light_with(nullptr);
  EXPECT_THROW(q.validate(), ConfigError);
}

TEST(VehicleParams, Presets) {
  const VehicleParams l = light_vehicle_preset();
  const VehicleParams h = heavy_vehicle_preset();
  EXPECT_EQ(l.mass_kg, 1400.0);
  EXPECT_EQ(l.accel_max_mps2, 4.0);
  EXPECT_EQ(h.mass_kg, 1900.0);
  EXPECT_EQ(h.drag_coeff, 0.7);
  EXPECT_EQ(h.frontal_area_m2, 8.5);
  EXPECT_EQ(h.accel_max_mps2, 2.5);
  EXPECT_EQ(h.class_tag, VehicleClass::kHeavy);
}
