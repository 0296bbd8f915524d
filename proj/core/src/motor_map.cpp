#include "ecocacc/motor_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "ecocacc/error.hpp"

namespace ecocacc {
namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_strictly_increasing(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ConfigError(std::string("motor map: empty ") + name + " axis");
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) {
      throw ConfigError(std::string("motor map: ") + name + " axis not strictly increasing");
    }
  }
}

// Locate the cell [i, i+1] containing x after clamping; returns index and weight of i+1.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double x) {
  if (axis.size() == 1 || x <= axis.front()) return {0, 0.0};
  if (x >= axis.back()) return {axis.size() - 2, 1.0};
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - axis.begin());
  std::size_t lo = hi - 1;
  return {lo, (x - axis[lo]) / (axis[hi] - axis[lo])};
}

}  // namespace

MotorMap::MotorMap(std::vector<double> torque_axis_nm, std::vector<double> speed_axis_radps,
                   std::vector<double> efficiency)
    : torque_axis_(std::move(torque_axis_nm)),
      speed_axis_(std::move(speed_axis_radps)),
      efficiency_(std::move(efficiency)) {
  require_strictly_increasing(torque_axis_, "torque");
  require_strictly_increasing(speed_axis_, "speed");
  if (efficiency_.size() != torque_axis_.size() * speed_axis_.size()) {
    throw ConfigError("motor map: grid size does not match axes");
  }
  for (double e : efficiency_) {
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("motor map: efficiency outside (0, 1]");
  }
}

double MotorMap::efficiency(double torque_nm, double speed_radps) const {
  if (efficiency_.empty()) throw ConfigError("motor map: lookup on an empty map");
  const auto [ti, tw] = locate(torque_axis_, std::fabs(torque_nm));
  const auto [si, sw] = locate(speed_axis_, speed_radps);
  const std::size_t ti1 = std::min(ti + 1, torque_axis_.size() - 1);
  const std::size_t si1 = std::min(si + 1, speed_axis_.size() - 1);
  const double e00 = at(ti, si);
  const double e01 = at(ti, si1);
  const double e10 = at(ti1, si);
  const double e11 = at(ti1, si1);
  return (1.0 - tw) * ((1.0 - sw) * e00 + sw * e01) + tw * ((1.0 - sw) * e10 + sw * e11);
}

MotorMap make_synthetic_motor_map(const SyntheticMapSpec& spec) {
  if (spec.torque_points < 2 || spec.speed_points < 2) {
    throw ConfigError("synthetic motor map needs at least 2 points per axis");
  }
  std::vector<double> torque(static_cast<std::size_t>(spec.torque_points));
  std::vector<double> speed(static_cast<std::size_t>(spec.speed_points));
  for (int i = 0; i < spec.torque_points; ++i) {
    torque[static_cast<std::size_t>(i)] = spec.torque_max_nm * i / (spec.torque_points - 1);
  }
  for (int j = 0; j < spec.speed_points; ++j) {
    speed[static_cast<std::size_t>(j)] = spec.speed_max_radps * j / (spec.speed_points - 1);
  }
  std::vector<double> eta;
  eta.reserve(torque.size() * speed.size());
  for (double t : torque) {
    const double x = 2.0 * t / spec.torque_max_nm - 1.0;
    for (double w : speed) {
      const double y = 2.0 * w / spec.speed_max_radps - 1.0;
      const double shape =
          (1.0 - std::pow(std::fabs(x), spec.exponent)) * (1.0 - std::pow(std::fabs(y), spec.exponent));
      // Rounded so the CSV round-trips exactly.
      const double value = spec.edge + (spec.peak - spec.edge) * shape;
      eta.push_back(std::round(value * 1e6) / 1e6);
    }
  }
  return MotorMap(std::move(torque), std::move(speed), std::move(eta));
}

MotorMap read_motor_map_csv(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  if (line != "torque_nm,speed_radps,efficiency") {
    throw ParseError(source, line_no, 1, "expected header 'torque_nm,speed_radps,efficiency'");
  }

  std::map<std::pair<double, double>, double> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    double values[3];
    std::string field;
    int column = 1;
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(row, field, ',')) throw ParseError(source, line_no, column, "expected 3 fields");
      std::size_t used = 0;
      try {
        values[c] = std::stod(field, &used);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, column, "not a number: '" + field + "'");
      }
      if (used != field.size()) throw ParseError(source, line_no, column, "trailing characters in '" + field + "'");
      column += static_cast<int>(field.size()) + 1;
    }
    if (std::getline(row, field, ',')) throw ParseError(source, line_no, column, "too many fields");
    if (!cells.emplace(std::make_pair(values[0], values[1]), values[2]).second) {
      throw ParseError(source, line_no, 1, "duplicate grid node");
    }
  }
  if (cells.empty()) throw ConfigError(source + ": motor map has no rows");

  std::vector<double> torque;
  std::vector<double> speed;
  for (const auto& [key, value] : cells) {
    if (torque.empty() || torque.back() != key.first) torque.push_back(key.first);
    speed.push_back(key.second);
  }
  std::sort(speed.begin(), speed.end());
  speed.erase(std::unique(speed.begin(), speed.end()), speed.end());
  if (cells.size() != torque.size() * speed.size()) {
    throw ConfigError(source + ": motor map rows do not form a complete rectangular grid");
  }
  std::vector<double> eta;
  eta.reserve(cells.size());
  for (double t : torque) {
    for (double w : speed) {
      auto it = cells.find({t, w});
      if (it == cells.end()) {
        throw ConfigError(source + ": motor map rows do not form a complete rectangular grid");
      }
      eta.push_back(it->second);
    }
  }
  return MotorMap(std::move(torque), std::move(speed), std::move(eta));
}

MotorMap read_motor_map_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open motor map '" + path.string() + "'");
  return read_motor_map_csv(in, path.string());
}

void write_motor_map_csv(std::ostream& out, const MotorMap& map) {
  out << "torque_nm,speed_radps,efficiency\n";
  for (std::size_t i = 0; i < map.torque_axis().size(); ++i) {
    for (std::size_t j = 0; j < map.speed_axis().size(); ++j) {
      out << shortest(map.torque_axis()[i]) << ',' << shortest(map.speed_axis()[j]) << ','
          << shortest(map.at(i, j)) << '\n';
    }
  }
}

}  // namespace ecocacc
