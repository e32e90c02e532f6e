#include "riskwarn/calibration.hpp"
#include "riskwarn/errors.hpp"
#include "riskwarn/harness.hpp"
#include "riskwarn/report.hpp"
#include "riskwarn/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

using namespace riskwarn;

ModelParameters resolve_parameters(const std::string& flag) {
  std::string file = flag;
  if (file.empty()) {
    if (const char* env = std::getenv("RISKWARN_PARAMS"); env && *env) file = env;
  }
  ModelParameters params = file.empty() ? ModelParameters{} : load_parameters(file);
  params.validate();
  return params;
}

ScenarioCatalog resolve_catalog(const std::string& dir) {
  return dir.empty() ? builtin_catalog() : load_catalog(dir);
}

int default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Personalized risk-based warning simulator"};
  app.require_subcommand(1);

  std::string params_file;
  std::string scenario_dir;
  app.add_option("--params", params_file, "Parameter JSON (default: $RISKWARN_PARAMS or built-in)");
  app.add_option("--scenario-dir", scenario_dir, "Directory of scenario JSON files");

  auto* run = app.add_subcommand("run", "Run a single episode");
  std::string scenario;
  int variation = 1;
  std::string error = "none";
  std::string driver = "normal";
  std::string model = "human";
  bool trace = false;
  run->add_option("--scenario", scenario, "Scenario name")->required();
  run->add_option("--variation", variation, "Variation 1..3")->check(CLI::Range(1, 3));
  run->add_option("--error", error, "none | ne | fe | ie");
  run->add_option("--driver", driver, "defensive | normal | confident");
  run->add_option("--model", model, "baseline | human");
  run->add_flag("--trace", trace, "Print the per-step trace as CSV");

  auto* sweep = app.add_subcommand("sweep", "Run the full variation grid and write reports");
  std::string out_dir = "results";
  int jobs = default_jobs();
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "Summarize an existing episodes.csv");
  std::string in_dir = "results";
  report->add_option("--in", in_dir, "Directory holding episodes.csv");

  auto* calibrate = app.add_subcommand("calibrate", "Search the warning threshold");
  calibrate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  std::string write_params;
  calibrate->add_option("--write", write_params, "Save the calibrated parameters to this file");

  auto* export_cmd = app.add_subcommand("export-scenarios", "Write the built-in catalog as JSON");
  std::string export_dir = "data/scenarios";
  export_cmd->add_option("--out", export_dir, "Output directory");

  auto* params_cmd = app.add_subcommand("params", "Print the effective parameters as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const ModelParameters params = resolve_parameters(params_file);

    if (*run) {
      const ScenarioCatalog catalog = resolve_catalog(scenario_dir);
      EpisodeConfig config{catalog.get(parse_scenario_name(scenario), variation),
                           parse_error_variant(error), parse_driver_type(driver),
                           parse_model_kind(model)};
      const EpisodeResult result = run_episode(config, params, trace);
      if (trace) {
        std::cout << "time,risk,warning,v_tar,ego_speed,timegap\n";
        for (const auto& row : result.trace) {
          std::cout << format_cell(row.time) << ',' << row.risk << ',' << row.warning << ','
                    << format_cell(row.v_tar) << ',' << format_cell(row.ego_speed) << ','
                    << format_cell(row.timegap) << '\n';
        }
      }
      std::cout << describe(result) << '\n';
    } else if (*sweep) {
      const ScenarioCatalog catalog = resolve_catalog(scenario_dir);
      const auto configs = variation_grid(catalog);
      const auto results = run_sweep(configs, params, jobs);
      for (const auto& path : emit_reports(results, params, out_dir)) {
        std::cout << "wrote " << path.string() << '\n';
      }
      const auto records = compare_all(results, params);
      print_summary(std::cout, summarize(records));
    } else if (*report) {
      const auto results = read_episodes(in_dir);
      print_summary(std::cout, summarize(compare_all(results, params)));
    } else if (*calibrate) {
      const ScenarioCatalog catalog = resolve_catalog(scenario_dir);
      const auto configs = variation_grid(catalog);
      const CalibrationResult c = calibrate_threshold(configs, params, jobs);
      std::cout << "theta=" << c.theta << " feasible=" << (c.feasible ? "true" : "false")
                << " defensive_nominal_warnings=" << c.defensive_nominal_warnings
                << " confident_fp human=" << c.confident_human_fp
                << " baseline=" << c.confident_baseline_fp << '\n';
      if (!write_params.empty()) {
        ModelParameters tuned = params;
        tuned.warning_threshold = c.theta;
        save_parameters(tuned, write_params);
        std::cout << "wrote " << write_params << '\n';
      }
      if (!c.feasible) return 1;
    } else if (*export_cmd) {
      save_catalog(builtin_catalog(), export_dir);
      std::cout << "wrote " << builtin_catalog().size() << " variations to " << export_dir << '\n';
    } else if (*params_cmd) {
      std::cout << parameters_to_json(params);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
