#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ecocacc/error.hpp"
#include "ecocacc/motor_map.hpp"
#include "ecocacc/outputs.hpp"
#include "ecocacc/platoon_strategy.hpp"
#include "ecocacc/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigFailure = 1;
constexpr int kPipelineFailure = 2;

ecocacc::Scenario load_with_overrides(const std::string& path, const std::vector<std::string>& overrides) {
  ecocacc::Scenario sc = ecocacc::load_scenario(path);
  for (const auto& o : overrides) ecocacc::apply_grid_override(sc, o);
  return sc;
}

int cmd_run(const std::string& path, const std::string& out_dir, const std::vector<std::string>& overrides,
            bool quiet) {
  ecocacc::Scenario sc;
  try {
    sc = load_with_overrides(path, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigFailure;
  }
  try {
    const ecocacc::PlatoonResult result = ecocacc::run_platoon(sc);
    ecocacc::write_run_outputs(out_dir, result, sc.signals.size());
    if (!quiet) {
      for (const auto& v : result.vehicles) {
        std::printf("%2d %-5s %-9s %-10s t=%8.2f s  E=%9.2f Wh  eta=%.4f", v.index + 1,
                    ecocacc::to_string(v.vehicle_class).c_str(), ecocacc::role_name(v.role).c_str(),
                    ecocacc::reason_name(v.role).c_str(), v.travel_time_s, v.energy_wh, v.avg_eta_tr);
        for (double c : v.crossing_times_s) std::printf("  x=%.2f", c);
        if (v.predicted) std::printf("  (following: eta=%.4f)", v.predicted_avg_eta);
        std::printf("\n");
      }
      std::printf("avg energy %.3f Wh/veh, avg time %.3f s/veh\n", result.avg_energy_wh, result.avg_travel_time_s);
    }
  } catch (const ecocacc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPipelineFailure;
  } catch (const std::exception& e) {
    std::cerr << "pipeline failure: " << e.what() << '\n';
    return kPipelineFailure;
  }
  return kOk;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b, const std::string& out_file) {
  try {
    const auto a = ecocacc::read_platoon_csv(std::filesystem::path(dir_a) / "platoon.csv");
    const auto b = ecocacc::read_platoon_csv(std::filesystem::path(dir_b) / "platoon.csv");
    const std::string table = ecocacc::format_comparison(ecocacc::compare_metrics(a, b));
    std::cout << table;
    if (!out_file.empty()) {
      std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
      if (!out) throw ecocacc::ConfigError("cannot write " + out_file);
      out << table;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigFailure;
  }
  return kOk;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& overrides, bool print) {
  try {
    const ecocacc::Scenario sc = load_with_overrides(path, overrides);
    if (print) {
      std::cout << ecocacc::serialize_scenario(sc);
    } else {
      std::cout << sc.name << ": ok (" << sc.vehicles.size() << " vehicles, " << sc.signals.size()
                << " signals)\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eco-driving platoon planner"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Plan and simulate a scenario, write CSV outputs");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--grid-override", overrides, "Grid setting as key=value (repeatable)");
  run->add_flag("-q,--quiet", quiet, "Do not print the per-vehicle table");

  std::string dir_a;
  std::string dir_b;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "Compare platoon metrics of two runs (b relative to a)");
  compare->add_option("dir_a", dir_a, "Baseline run directory")->required();
  compare->add_option("dir_b", dir_b, "Run directory to compare")->required();
  compare->add_option("--out", compare_out, "Also write the table to this file");

  bool print = false;
  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
  validate->add_option("scenario", scenario_path, "Scenario file")->required();
  validate->add_option("--grid-override", overrides, "Grid setting as key=value (repeatable)");
  validate->add_flag("--print", print, "Print the scenario with all defaults filled in");

  ecocacc::SyntheticMapSpec map_spec;
  std::string map_out;
  auto* gen = app.add_subcommand("gen-map", "Write a synthetic motor map CSV");
  gen->add_option("--out", map_out, "Output file")->required();
  gen->add_option("--peak", map_spec.peak)->capture_default_str();
  gen->add_option("--edge", map_spec.edge)->capture_default_str();
  gen->add_option("--torque-max", map_spec.torque_max_nm)->capture_default_str();
  gen->add_option("--speed-max", map_spec.speed_max_radps)->capture_default_str();
  gen->add_option("--exponent", map_spec.exponent)->capture_default_str();
  gen->add_option("--torque-points", map_spec.torque_points)->capture_default_str();
  gen->add_option("--speed-points", map_spec.speed_points)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  if (*run) return cmd_run(scenario_path, out_dir, overrides, quiet);
  if (*compare) return cmd_compare(dir_a, dir_b, compare_out);
  if (*validate) return cmd_validate(scenario_path, overrides, print);
  if (*gen) {
    try {
      const auto map = ecocacc::make_synthetic_motor_map(map_spec);
      std::ofstream out(map_out, std::ios::binary | std::ios::trunc);
      if (!out) throw ecocacc::ConfigError("cannot write " + map_out);
      ecocacc::write_motor_map_csv(out, map);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kConfigFailure;
    }
  }
  return kOk;
}
