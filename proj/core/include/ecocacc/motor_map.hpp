#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ecocacc {

/// Motor efficiency lookup over (torque, rotational speed).
///
/// The grid is stored row-major with torque as the slow axis:
/// efficiency(i, j) is the value at torque_axis[i], speed_axis[j].
/// Construction validates the axes and values and throws ConfigError.
class MotorMap {
 public:
  MotorMap() = default;
  MotorMap(std::vector<double> torque_axis_nm, std::vector<double> speed_axis_radps,
           std::vector<double> efficiency);

  /// Bilinear interpolation at (|torque|, speed). Queries outside the grid are
  /// clamped to the boundary. Throws ConfigError on a default-constructed map.
  double efficiency(double torque_nm, double speed_radps) const;

  const std::vector<double>& torque_axis() const { return torque_axis_; }
  const std::vector<double>& speed_axis() const { return speed_axis_; }
  const std::vector<double>& values() const { return efficiency_; }
  double at(std::size_t torque_index, std::size_t speed_index) const {
    return efficiency_[torque_index * speed_axis_.size() + speed_index];
  }
  bool empty() const { return efficiency_.empty(); }

  friend bool operator==(const MotorMap&, const MotorMap&) = default;

 private:
  std::vector<double> torque_axis_;
  std::vector<double> speed_axis_;
  std::vector<double> efficiency_;
};

/// Parameters of the smooth synthetic efficiency surface used for the shipped maps.
///
/// eta(x, y) = edge + (peak - edge) * (1 - |x|^p) * (1 - |y|^p), where x and y
/// are the torque and speed coordinates mapped to [-1, 1] about the grid centre.
struct SyntheticMapSpec {
  double peak = 0.92;
  double edge = 0.60;
  double torque_max_nm = 200.0;
  double speed_max_radps = 600.0;
  double exponent = 2.0;
  int torque_points = 21;
  int speed_points = 21;
};

MotorMap make_synthetic_motor_map(const SyntheticMapSpec& spec);

/// CSV with header `torque_nm,speed_radps,efficiency`; rows must cover the full grid.
MotorMap read_motor_map_csv(std::istream& in, const std::string& source = "<stream>");
MotorMap read_motor_map_csv(const std::filesystem::path& path);
void write_motor_map_csv(std::ostream& out, const MotorMap& map);

}  // namespace ecocacc
