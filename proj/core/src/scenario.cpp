#include "ecocacc/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "ecocacc/error.hpp"
#include "ecocacc/motor_map.hpp"

namespace ecocacc {

namespace {

bool grid_multiple(double value, double unit) {
  const double r = value / unit;
  return std::fabs(r - std::round(r)) <= 1e-6;
}

}  // namespace

void Scenario::validate() const {
  if (!(route.length_m > 0.0)) throw ConfigError("route: length_m must be > 0");
  if (!(route.ds_m > 0.0)) throw ConfigError("route: ds_m must be > 0");
  if (!(route.speed_limit_mps > 0.0)) throw ConfigError("route: speed limit must be > 0");
  if (!grid_multiple(route.length_m, route.ds_m)) throw ConfigError("route: length_m is not a multiple of ds_m");
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const auto& s = signals[i];
    s.validate();
    if (!(s.position_m >= 0.0 && s.position_m < route.length_m)) {
      throw ConfigError("signal " + std::to_string(i + 1) + ": position_m must lie within [0, route length)");
    }
    if (!grid_multiple(s.position_m, route.ds_m)) {
      throw ConfigError("signal " + std::to_string(i + 1) + ": position_m is not aligned to the distance grid");
    }
  }
  if (vehicles.empty()) throw ConfigError("platoon: vehicle list is empty");
  for (const auto& v : vehicles) v.validate();
  if (!start_positions_m.empty()) {
    if (start_positions_m.size() != vehicles.size()) {
      throw ConfigError("platoon: start_positions_m needs one entry per vehicle");
    }
    for (std::size_t i = 0; i < start_positions_m.size(); ++i) {
      if (!(start_positions_m[i] < route.length_m) || !grid_multiple(start_positions_m[i], route.ds_m)) {
        throw ConfigError("platoon: start position " + std::to_string(i + 1) + " is off the grid or past the end");
      }
      if (i > 0 && !(start_positions_m[i] < start_positions_m[i - 1])) {
        throw ConfigError("platoon: start positions must decrease front to back");
      }
    }
  }
  weights.validate();
  grid.validate();
  cacc.validate();
  if (!(condition2_threshold > 0.0 && condition2_threshold < 1.0)) {
    throw ConfigError("strategy: condition2_threshold must be in (0, 1)");
  }
  if (!(v_des_mps > 0.0)) throw ConfigError("planner: v_des_mps must be > 0");
  if (!(green_end_guard_s >= 0.0)) throw ConfigError("planner: green_end_guard_s must be >= 0");
  if (!(exit_speed_min_mps >= 0.0 && exit_speed_min_mps <= route.speed_limit_mps)) {
    throw ConfigError("planner: exit_speed_min_mps must be within [0, speed limit]");
  }
}

bool equivalent(const VehicleParams& a, const VehicleParams& b) {
  const bool maps_equal = (a.motor_map == b.motor_map) || (a.motor_map && b.motor_map && *a.motor_map == *b.motor_map);
  return a.mass_kg == b.mass_kg && a.drag_coeff == b.drag_coeff && a.frontal_area_m2 == b.frontal_area_m2 &&
         a.air_density_kg_m3 == b.air_density_kg_m3 && a.rolling_friction_coeff == b.rolling_friction_coeff &&
         a.wheel_radius_m == b.wheel_radius_m && a.gear_ratio == b.gear_ratio && a.drivetrain_eff == b.drivetrain_eff &&
         a.recuperation_eff == b.recuperation_eff && a.road_grade_rad == b.road_grade_rad &&
         a.accel_min_mps2 == b.accel_min_mps2 && a.accel_max_mps2 == b.accel_max_mps2 && a.length_m == b.length_m &&
         a.recuperation == b.recuperation && a.class_tag == b.class_tag && maps_equal;
}

bool equivalent(const Scenario& a, const Scenario& b) {
  if (a.vehicles.size() != b.vehicles.size()) return false;
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    if (!equivalent(a.vehicles[i], b.vehicles[i])) return false;
  }
  return a.name == b.name && a.route == b.route && a.signals == b.signals && a.platoon == b.platoon &&
         a.start_positions_m == b.start_positions_m && a.weights == b.weights && a.grid == b.grid && a.cacc == b.cacc &&
         a.condition2_threshold == b.condition2_threshold && a.v_des_mps == b.v_des_mps &&
         a.green_end_guard_s == b.green_end_guard_s && a.exit_speed_min_mps == b.exit_speed_min_mps;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;
  bool used = false;
};

struct Section {
  std::string name;
  std::string arg;
  int line = 0;
  std::map<std::string, Entry> entries;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::vector<Section> tokenize(const std::string& text, const std::string& source) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    // Strip comments: whole-line '#'/';' or ' #' inline.
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(raw[i - 1])))) {
        cut = i;
        break;
      }
    }
    const std::string line = raw.substr(0, cut);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == ';') continue;
    const int col = static_cast<int>(first) + 1;

    if (line[first] == '[') {
      const std::size_t close = line.find(']', first);
      if (close == std::string::npos) throw ParseError(source, line_no, col, "unterminated section header");
      if (!trim(line.substr(close + 1)).empty()) {
        throw ParseError(source, line_no, static_cast<int>(close) + 2, "unexpected text after section header");
      }
      const std::string inner = trim(line.substr(first + 1, close - first - 1));
      Section sec;
      sec.line = line_no;
      const std::size_t space = inner.find_first_of(" \t");
      sec.name = inner.substr(0, space);
      if (space != std::string::npos) sec.arg = trim(inner.substr(space));
      if (!valid_identifier(sec.name) || (!sec.arg.empty() && !valid_identifier(sec.arg))) {
        throw ParseError(source, line_no, col + 1, "malformed section name '" + inner + "'");
      }
      sections.push_back(std::move(sec));
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, col, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_identifier(key)) throw ParseError(source, line_no, col, "malformed key '" + key + "'");
    if (sections.empty()) throw ParseError(source, line_no, col, "assignment outside of any section");
    Entry entry;
    entry.value = trim(line.substr(eq + 1));
    entry.line = line_no;
    const std::size_t vstart = line.find_first_not_of(" \t", eq + 1);
    entry.column = vstart == std::string::npos ? static_cast<int>(eq) + 2 : static_cast<int>(vstart) + 1;
    if (entry.value.empty()) throw ParseError(source, line_no, entry.column, "empty value for '" + key + "'");
    auto& entries = sections.back().entries;
    if (entries.count(key)) throw ParseError(source, line_no, col, "duplicate key '" + key + "'");
    entries.emplace(key, std::move(entry));
  }
  return sections;
}

class Reader {
 public:
  Reader(Section& sec, const std::string& source) : sec_(sec), source_(source) {}

  std::optional<double> number(const std::string& key) {
    Entry* e = find(key);
    if (e == nullptr) return std::nullopt;
    return parse_number(*e, e->value, e->column);
  }

  double number(const std::string& key, double fallback) { return number(key).value_or(fallback); }

  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ParseError(source_, sec_.line, 1, "[" + label() + "] is missing required key '" + key + "'");
    return *v;
  }

  std::optional<std::string> text(const std::string& key) {
    Entry* e = find(key);
    if (e == nullptr) return std::nullopt;
    return e->value;
  }

  std::string required_text(const std::string& key) {
    auto v = text(key);
    if (!v) throw ParseError(source_, sec_.line, 1, "[" + label() + "] is missing required key '" + key + "'");
    return *v;
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    Entry* e = find(key);
    if (e == nullptr) return std::nullopt;
    std::vector<double> out;
    for (const auto& [item, column] : split(*e)) out.push_back(parse_number(*e, item, column));
    return out;
  }

  // Comma list where each item may be NAME or NAME*COUNT.
  std::optional<std::vector<std::string>> names(const std::string& key) {
    Entry* e = find(key);
    if (e == nullptr) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& [item, column] : split(*e)) {
      std::string name = item;
      long count = 1;
      const std::size_t star = item.find('*');
      if (star != std::string::npos) {
        name = trim(item.substr(0, star));
        const std::string count_text = trim(item.substr(star + 1));
        const auto res = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
        if (res.ec != std::errc() || res.ptr != count_text.data() + count_text.size() || count < 1) {
          throw ParseError(source_, e->line, column, "bad repeat count in '" + item + "'");
        }
      }
      if (!valid_identifier(name)) throw ParseError(source_, e->line, column, "bad name '" + name + "'");
      out.insert(out.end(), static_cast<std::size_t>(count), name);
    }
    return out;
  }

  void reject_unused() const {
    for (const auto& [key, entry] : sec_.entries) {
      if (!entry.used) throw ParseError(source_, entry.line, 1, "unknown key '" + key + "' in [" + label() + "]");
    }
  }

  ParseError error_at(const std::string& key, const std::string& what) const {
    auto it = sec_.entries.find(key);
    if (it == sec_.entries.end()) return ParseError(source_, sec_.line, 1, what);
    return ParseError(source_, it->second.line, it->second.column, what);
  }

 private:
  std::string label() const { return sec_.arg.empty() ? sec_.name : sec_.name + " " + sec_.arg; }

  Entry* find(const std::string& key) {
    auto it = sec_.entries.find(key);
    if (it == sec_.entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  double parse_number(const Entry& e, const std::string& s, int column) const {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ParseError(source_, e.line, column, "not a number: '" + s + "'");
    }
    return v;
  }

  std::vector<std::pair<std::string, int>> split(const Entry& e) const {
    std::vector<std::pair<std::string, int>> items;
    std::size_t start = 0;
    while (start <= e.value.size()) {
      std::size_t comma = e.value.find(',', start);
      if (comma == std::string::npos) comma = e.value.size();
      const std::string raw = e.value.substr(start, comma - start);
      const std::size_t lead = raw.find_first_not_of(" \t");
      const std::string item = trim(raw);
      const int column = e.column + static_cast<int>(start + (lead == std::string::npos ? 0 : lead));
      if (item.empty()) throw ParseError(source_, e.line, column, "empty list item");
      items.emplace_back(item, column);
      start = comma + 1;
    }
    return items;
  }

  Section& sec_;
  const std::string& source_;
};

void read_class(Reader& r, VehicleClassConfig& cls, const std::filesystem::path& base_dir) {
  const std::string tag = r.required_text("class_tag");
  if (tag == "light") {
    cls.params = light_vehicle_preset();
  } else if (tag == "heavy") {
    cls.params = heavy_vehicle_preset();
  } else {
    throw r.error_at("class_tag", "class_tag must be 'light' or 'heavy'");
  }
  VehicleParams& p = cls.params;
  p.mass_kg = r.number("mass_kg", p.mass_kg);
  p.drag_coeff = r.number("drag_coeff", p.drag_coeff);
  p.frontal_area_m2 = r.number("frontal_area_m2", p.frontal_area_m2);
  p.air_density_kg_m3 = r.number("air_density_kg_m3", p.air_density_kg_m3);
  p.rolling_friction_coeff = r.number("rolling_friction_coeff", p.rolling_friction_coeff);
  p.wheel_radius_m = r.number("wheel_radius_m", p.wheel_radius_m);
  p.gear_ratio = r.number("gear_ratio", p.gear_ratio);
  p.drivetrain_eff = r.number("drivetrain_eff", p.drivetrain_eff);
  p.recuperation_eff = r.number("recuperation_eff", p.recuperation_eff);
  p.road_grade_rad = r.number("road_grade_rad", p.road_grade_rad);
  p.accel_min_mps2 = r.number("accel_min_mps2", p.accel_min_mps2);
  p.accel_max_mps2 = r.number("accel_max_mps2", p.accel_max_mps2);
  p.length_m = r.number("length_m", p.length_m);
  if (auto conv = r.text("recuperation_convention")) {
    if (*conv == "multiply") {
      p.recuperation = RecuperationConvention::kMultiply;
    } else if (*conv == "divide_as_printed") {
      p.recuperation = RecuperationConvention::kDivideAsPrinted;
    } else {
      throw r.error_at("recuperation_convention", "recuperation_convention must be 'multiply' or 'divide_as_printed'");
    }
  }
  cls.motor_map_path = r.required_text("motor_map");
  std::filesystem::path map_path(cls.motor_map_path);
  if (map_path.is_relative()) map_path = base_dir / map_path;
  try {
    p.motor_map = std::make_shared<const MotorMap>(read_motor_map_csv(map_path));
  } catch (const ParseError&) {
    throw;
  } catch (const ConfigError& e) {
    throw r.error_at("motor_map", e.what());
  }
  try {
    p.validate();
  } catch (const ConfigError& e) {
    throw ConfigError("class " + cls.name + ": " + e.what());
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source, const std::filesystem::path& base_dir) {
  std::vector<Section> sections = tokenize(text, source);
  Scenario sc;
  std::set<std::string> singletons;
  std::vector<std::string> platoon;
  bool have_route = false;
  bool have_weights = false;
  bool have_platoon = false;
  std::optional<double> v_des;

  for (Section& sec : sections) {
    Reader r(sec, source);
    const bool repeatable = sec.name == "signal" || sec.name == "class";
    if (!repeatable && !singletons.insert(sec.name).second) {
      throw ParseError(source, sec.line, 1, "duplicate section [" + sec.name + "]");
    }
    if (sec.name != "class" && !sec.arg.empty()) {
      throw ParseError(source, sec.line, 1, "section [" + sec.name + "] takes no argument");
    }

    if (sec.name == "scenario") {
      sc.name = r.text("name").value_or(sc.name);
    } else if (sec.name == "route") {
      have_route = true;
      sc.route.length_m = r.required_number("length_m");
      const auto mps = r.number("speed_limit_mps");
      const auto kph = r.number("speed_limit_kph");
      if (mps && kph) throw r.error_at("speed_limit_kph", "give either speed_limit_mps or speed_limit_kph");
      if (!mps && !kph) throw ParseError(source, sec.line, 1, "[route] needs speed_limit_mps or speed_limit_kph");
      sc.route.speed_limit_mps = mps ? *mps : *kph / 3.6;
      sc.route.ds_m = r.number("ds_m", 1.0);
    } else if (sec.name == "planner") {
      v_des = r.number("v_des_mps");
      sc.green_end_guard_s = r.number("green_end_guard_s", 0.0);
      sc.exit_speed_min_mps = r.number("exit_speed_min_mps", 0.0);
    } else if (sec.name == "weights") {
      have_weights = true;
      sc.weights.alpha = r.required_number("alpha");
      sc.weights.beta = r.required_number("beta");
      sc.weights.gamma = r.required_number("gamma");
      sc.weights.p_red = r.number("p_red", 1e6);
    } else if (sec.name == "grid") {
      GridSpec& g = sc.grid;
      g.accel_quantum_mps2 = r.number("accel_quantum_mps2", g.accel_quantum_mps2);
      g.t_step_s = r.number("t_step_s", g.t_step_s);
      g.t_min_s = r.number("t_min_s", g.t_min_s);
      g.t_max_s = r.number("t_max_s", g.t_max_s);
      if (auto a = r.numbers("a_candidates")) g.a_candidates = *a;
      if (auto f = r.numbers("coarse_factors")) {
        g.coarse_factors.clear();
        for (double x : *f) {
          if (x != std::floor(x) || x < 1) throw r.error_at("coarse_factors", "coarse factors must be integers >= 1");
          g.coarse_factors.push_back(static_cast<int>(x));
        }
      }
    } else if (sec.name == "cacc") {
      CaccParams& c = sc.cacc;
      c.tau_s = r.number("tau_s", c.tau_s);
      c.spacing.standstill_m = r.number("standstill_m", c.spacing.standstill_m);
      c.spacing.headway_s = r.number("headway_s", c.spacing.headway_s);
      c.gains.kp = r.number("kp", c.gains.kp);
      c.gains.kd = r.number("kd", c.gains.kd);
      c.gains.ka = r.number("ka", c.gains.ka);
      c.dt_sim_s = r.number("dt_sim_s", c.dt_sim_s);
    } else if (sec.name == "strategy") {
      sc.condition2_threshold = r.number("condition2_threshold", sc.condition2_threshold);
    } else if (sec.name == "signal") {
      TrafficSignal s;
      s.position_m = r.required_number("position_m");
      s.green_s = r.required_number("green_s");
      s.red_s = r.required_number("red_s");
      s.offset_s = r.number("offset_s", 0.0);
      sc.signals.push_back(s);
    } else if (sec.name == "class") {
      if (sec.arg.empty()) throw ParseError(source, sec.line, 1, "[class] needs a name, e.g. [class light]");
      for (const auto& c : sc.classes) {
        if (c.name == sec.arg) throw ParseError(source, sec.line, 1, "duplicate class '" + sec.arg + "'");
      }
      VehicleClassConfig cls;
      cls.name = sec.arg;
      read_class(r, cls, base_dir);
      sc.classes.push_back(std::move(cls));
    } else if (sec.name == "platoon") {
      have_platoon = true;
      platoon = r.names("vehicles").value_or(std::vector<std::string>{});
      if (platoon.empty()) throw ParseError(source, sec.line, 1, "[platoon] needs a non-empty 'vehicles' list");
      if (auto s = r.numbers("start_positions_m")) sc.start_positions_m = *s;
    } else {
      throw ParseError(source, sec.line, 1, "unknown section [" + sec.name + "]");
    }
    r.reject_unused();
  }
  if (!have_route) throw ParseError(source, 1, 1, "missing [route] section");
  if (!have_weights) throw ParseError(source, 1, 1, "missing [weights] section");
  if (!have_platoon) throw ParseError(source, 1, 1, "missing [platoon] section");
  sc.v_des_mps = v_des.value_or(sc.route.speed_limit_mps);

  sc.platoon = platoon;
  for (const auto& name : platoon) {
    auto it = std::find_if(sc.classes.begin(), sc.classes.end(), [&](const auto& c) { return c.name == name; });
    if (it == sc.classes.end()) throw ConfigError(source + ": platoon references undefined class '" + name + "'");
    sc.vehicles.push_back(it->params);
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string(), path.parent_path());
}

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string list(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += num(static_cast<double>(xs[i]));
  }
  return out;
}

std::string platoon_list(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size();) {
    std::size_t j = i;
    while (j < names.size() && names[j] == names[i]) ++j;
    if (!out.empty()) out += ", ";
    out += names[i];
    if (j - i > 1) out += "*" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream o;
  o << "[scenario]\nname = " << sc.name << "\n\n";
  o << "[route]\nlength_m = " << num(sc.route.length_m) << "\nspeed_limit_mps = " << num(sc.route.speed_limit_mps)
    << "\nds_m = " << num(sc.route.ds_m) << "\n\n";
  o << "[planner]\nv_des_mps = " << num(sc.v_des_mps) << "\ngreen_end_guard_s = " << num(sc.green_end_guard_s)
    << "\nexit_speed_min_mps = " << num(sc.exit_speed_min_mps) << "\n\n";
  o << "[weights]\nalpha = " << num(sc.weights.alpha) << "\nbeta = " << num(sc.weights.beta)
    << "\ngamma = " << num(sc.weights.gamma) << "\np_red = " << num(sc.weights.p_red) << "\n\n";
  o << "[grid]\naccel_quantum_mps2 = " << num(sc.grid.accel_quantum_mps2) << "\nt_step_s = " << num(sc.grid.t_step_s)
    << "\nt_min_s = " << num(sc.grid.t_min_s) << "\nt_max_s = " << num(sc.grid.t_max_s) << "\n";
  if (!sc.grid.a_candidates.empty()) o << "a_candidates = " << list(sc.grid.a_candidates) << "\n";
  if (!sc.grid.coarse_factors.empty()) o << "coarse_factors = " << list(sc.grid.coarse_factors) << "\n";
  o << "\n[cacc]\ntau_s = " << num(sc.cacc.tau_s) << "\nstandstill_m = " << num(sc.cacc.spacing.standstill_m)
    << "\nheadway_s = " << num(sc.cacc.spacing.headway_s) << "\nkp = " << num(sc.cacc.gains.kp)
    << "\nkd = " << num(sc.cacc.gains.kd) << "\nka = " << num(sc.cacc.gains.ka)
    << "\ndt_sim_s = " << num(sc.cacc.dt_sim_s) << "\n\n";
  o << "[strategy]\ncondition2_threshold = " << num(sc.condition2_threshold) << "\n\n";
  for (const auto& s : sc.signals) {
    o << "[signal]\nposition_m = " << num(s.position_m) << "\ngreen_s = " << num(s.green_s)
      << "\nred_s = " << num(s.red_s) << "\noffset_s = " << num(s.offset_s) << "\n\n";
  }
  for (const auto& c : sc.classes) {
    const VehicleParams& p = c.params;
    o << "[class " << c.name << "]\nclass_tag = " << to_string(p.class_tag) << "\nmass_kg = " << num(p.mass_kg)
      << "\ndrag_coeff = " << num(p.drag_coeff) << "\nfrontal_area_m2 = " << num(p.frontal_area_m2)
      << "\nair_density_kg_m3 = " << num(p.air_density_kg_m3)
      << "\nrolling_friction_coeff = " << num(p.rolling_friction_coeff)
      << "\nwheel_radius_m = " << num(p.wheel_radius_m) << "\ngear_ratio = " << num(p.gear_ratio)
      << "\ndrivetrain_eff = " << num(p.drivetrain_eff) << "\nrecuperation_eff = " << num(p.recuperation_eff)
      << "\nrecuperation_convention = " << to_string(p.recuperation)
      << "\nroad_grade_rad = " << num(p.road_grade_rad) << "\naccel_min_mps2 = " << num(p.accel_min_mps2)
      << "\naccel_max_mps2 = " << num(p.accel_max_mps2) << "\nlength_m = " << num(p.length_m)
      << "\nmotor_map = " << c.motor_map_path << "\n\n";
  }
  o << "[platoon]\nvehicles = " << platoon_list(sc.platoon) << "\n";
  if (!sc.start_positions_m.empty()) o << "start_positions_m = " << list(sc.start_positions_m) << "\n";
  return o.str();
}

void apply_grid_override(Scenario& sc, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("grid override must look like key=value: '" + assignment + "'");
  Section sec;
  sec.name = "grid";
  sec.line = 1;
  const std::string key = trim(assignment.substr(0, eq));
  Entry e;
  e.value = trim(assignment.substr(eq + 1));
  e.line = 1;
  e.column = static_cast<int>(eq) + 2;
  sec.entries.emplace(key, e);
  const std::string source = "--grid-override";
  Reader r(sec, source);
  if (key == "ds_m") {
    sc.route.ds_m = r.required_number(key);
  } else if (key == "accel_quantum_mps2") {
    sc.grid.accel_quantum_mps2 = r.required_number(key);
  } else if (key == "t_step_s") {
    sc.grid.t_step_s = r.required_number(key);
  } else if (key == "t_min_s") {
    sc.grid.t_min_s = r.required_number(key);
  } else if (key == "t_max_s") {
    sc.grid.t_max_s = r.required_number(key);
  } else if (key == "a_candidates") {
    sc.grid.a_candidates = *r.numbers(key);
  } else if (key == "coarse_factors") {
    const std::vector<double> factors = *r.numbers(key);
    sc.grid.coarse_factors.clear();
    for (double x : factors) {
      if (x != std::floor(x) || x < 1) throw ConfigError("coarse factors must be integers >= 1");
      sc.grid.coarse_factors.push_back(static_cast<int>(x));
    }
  } else {
    throw ConfigError("unknown grid override key '" + key + "'");
  }
  sc.validate();
}

}  // namespace ecocacc
