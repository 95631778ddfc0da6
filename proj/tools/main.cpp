#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "hygrofrac/oracles.hpp"
#include "hygrofrac/output.hpp"
#include "hygrofrac/scenario.hpp"

namespace {

bool is_preset(const std::string& target) {
  for (const auto& name : hygrofrac::preset_names()) {
    if (name == target) return true;
  }
  return false;
}

hygrofrac::ScenarioConfig resolve_target(const std::string& target) {
  if (is_preset(target)) return hygrofrac::preset(target);
  return hygrofrac::load_config_file(target);
}

int print_config_error(const hygrofrac::ConfigError& err) {
  for (const auto& problem : err.problems()) std::cerr << problem << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D plane-strain simulator for moisture-driven composite degradation: "
               "Fickian transport, hygroscopic swelling, AT2 phase-field fracture and a "
               "diffuse fibre-matrix interface"};
  app.require_subcommand(1);

  std::string target, out_dir;
  double mesh_scale = 0.0, dt_scale = 0.0;
  long long seed = -1;
  bool multi_pass = false, quiet = false;

  CLI::App* run = app.add_subcommand("run", "run a preset or a config file");
  run->add_option("target", target, "preset name or config path")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--mesh-scale", mesh_scale, "multiply the element size by this factor");
  run->add_option("--dt-scale", dt_scale, "multiply every stage dt by this factor");
  run->add_option("--seed", seed, "random layout seed");
  run->add_flag("--multi-pass", multi_pass, "iterate the staggered pass per increment");
  run->add_flag("--quiet", quiet, "suppress the summary and warnings");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "validate a config file");
  validate->add_option("config", validate_path, "config path")->required();

  std::string oracle_name;
  CLI::App* oracle = app.add_subcommand("oracle", "run a verification oracle");
  oracle->add_option("name", oracle_name, "oracle name (or 'all')")->required();

  CLI::App* list = app.add_subcommand("list-presets", "list built-in scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : hygrofrac::preset_names()) std::cout << name << "\n";
      return 0;
    }

    if (validate->parsed()) {
      hygrofrac::ScenarioConfig config = hygrofrac::load_config_file(validate_path);
      config.validate();
      std::cout << "ok: " << validate_path << "\n";
      return 0;
    }

    if (oracle->parsed()) {
      bool all_pass = true;
      if (oracle_name == "all") {
        for (const auto& name : hygrofrac::oracle_names()) {
          const auto report = hygrofrac::run_oracle_check(name);
          std::cout << hygrofrac::format_report(report) << "\n";
          all_pass = all_pass && report.pass;
        }
      } else {
        const auto report = hygrofrac::run_oracle_check(oracle_name);
        std::cout << hygrofrac::format_report(report) << "\n";
        all_pass = report.pass;
      }
      return all_pass ? 0 : 1;
    }

    // run
    hygrofrac::ScenarioConfig config = resolve_target(target);
    if (!out_dir.empty()) config.output_directory = out_dir;
    if (mesh_scale > 0) config.mesh_scale = mesh_scale;
    if (dt_scale > 0) {
      for (auto& stage : config.stages) stage.dt *= dt_scale;
    }
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (multi_pass) config.multi_pass = true;
    if (const char* env_dir = std::getenv("HYGROFRAC_OUT"); env_dir && out_dir.empty()) {
      config.output_directory = env_dir;
    }
    config.validate();

    hygrofrac::ScenarioRun result = hygrofrac::run_scenario(config, true, quiet);
    if (!quiet) {
      std::cout << hygrofrac::format_summary(config.name, result.summary,
                                             config.output_directory);
    }
    return result.summary.completed ? 0 : 1;
  } catch (const hygrofrac::ConfigError& err) {
    return print_config_error(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
