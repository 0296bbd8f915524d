#include "ecocacc/outputs.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ecocacc/error.hpp"

namespace ecocacc {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string summary_header(std::size_t signal_count) {
  std::string h = "vehicle_id,role,reason,travel_time_s,energy_wh,avg_eta_tr";
  for (std::size_t i = 0; i < signal_count; ++i) h += ",crossing_time_s_signal" + std::to_string(i + 1);
  return h;
}

void write_trajectories_csv(std::ostream& out, const PlatoonResult& result) {
  out << kTrajectoriesHeader << '\n';
  for (const auto& v : result.vehicles) {
    const int id = v.index + 1;
    for (const auto& pt : v.trajectory.points) {
      out << id << ',' << pt.step << ',' << format_number(pt.position_m) << ',' << format_number(pt.time_s) << ','
          << format_number(pt.velocity_mps) << ',' << format_number(pt.accel_mps2) << ','
          << format_number(pt.step_energy_wh) << ',' << format_number(pt.eta_tr) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const PlatoonResult& result, std::size_t signal_count) {
  out << summary_header(signal_count) << '\n';
  for (const auto& v : result.vehicles) {
    out << v.index + 1 << ',' << role_name(v.role) << ',' << reason_name(v.role) << ','
        << format_number(v.travel_time_s) << ',' << format_number(v.energy_wh) << ','
        << format_number(v.avg_eta_tr);
    for (std::size_t i = 0; i < signal_count; ++i) {
      out << ',';
      if (i < v.crossing_times_s.size() && !std::isnan(v.crossing_times_s[i])) {
        out << format_number(v.crossing_times_s[i]);
      }
    }
    out << '\n';
  }
}

void write_platoon_csv(std::ostream& out, const PlatoonResult& result) {
  out << kPlatoonHeader << '\n'
      << format_number(result.avg_energy_wh) << ',' << format_number(result.avg_travel_time_s) << ','
      << format_number(result.max_velocity_mps) << ',' << format_number(result.max_abs_accel_mps2) << '\n';
}

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  writer(out);
  out.flush();
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace

void write_run_outputs(const std::filesystem::path& dir, const PlatoonResult& result, std::size_t signal_count) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "trajectories.csv", [&](std::ostream& o) { write_trajectories_csv(o, result); });
  write_file(dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, result, signal_count); });
  write_file(dir / "platoon.csv", [&](std::ostream& o) { write_platoon_csv(o, result); });
}

PlatoonMetrics read_platoon_csv(std::istream& in, const std::string& source) {
  std::string header;
  std::string row;
  if (!std::getline(in, header)) throw ConfigError(source + ": empty file");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != kPlatoonHeader) throw ConfigError(source + ": unexpected header '" + header + "'");
  if (!std::getline(in, row)) throw ConfigError(source + ": missing data row");
  if (!row.empty() && row.back() == '\r') row.pop_back();

  double values[4];
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t end = row.find(',', start);
    if ((i < 3) != (end != std::string::npos)) throw ConfigError(source + ": expected 4 fields");
    if (end == std::string::npos) end = row.size();
    const char* b = row.data() + start;
    const char* e = row.data() + end;
    const auto res = std::from_chars(b, e, values[i]);
    if (res.ec != std::errc() || res.ptr != e) {
      throw ConfigError(source + ": field " + std::to_string(i + 1) + " is not a number");
    }
    start = end + 1;
  }
  return {values[0], values[1], values[2], values[3]};
}

PlatoonMetrics read_platoon_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return read_platoon_csv(in, path.string());
}

std::vector<MetricDelta> compare_metrics(const PlatoonMetrics& a, const PlatoonMetrics& b) {
  auto row = [](const char* name, double x, double y) {
    MetricDelta d;
    d.metric = name;
    d.run_a = x;
    d.run_b = y;
    d.delta = y - x;
    if (x != 0.0) {
      d.delta_pct = 100.0 * (y - x) / x;
    } else {
      d.delta_pct = y == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    }
    return d;
  };
  return {
      row("avg_energy_wh_per_veh", a.avg_energy_wh, b.avg_energy_wh),
      row("avg_travel_time_s_per_veh", a.avg_travel_time_s, b.avg_travel_time_s),
      row("max_velocity_mps", a.max_velocity_mps, b.max_velocity_mps),
      row("max_abs_accel_mps2", a.max_abs_accel_mps2, b.max_abs_accel_mps2),
  };
}

std::string format_comparison(const std::vector<MetricDelta>& rows) {
  std::ostringstream o;
  o << "metric,run_a,run_b,delta,delta_pct\n";
  for (const auto& r : rows) {
    o << r.metric << ',' << format_number(r.run_a) << ',' << format_number(r.run_b) << ','
      << format_number(r.delta) << ',' << format_number(r.delta_pct) << '\n';
  }
  return o.str();
}

}  // namespace ecocacc
