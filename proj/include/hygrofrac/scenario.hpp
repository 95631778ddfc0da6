#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hygrofrac/driver.hpp"

#include <nlohmann/json_fwd.hpp>

namespace hygrofrac {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

private:
  std::vector<std::string> problems_;
};

struct FibreSpec {
  std::string kind = "none";  // none | square_array | random | strips
  int rows = 0, cols = 0, count = 0;
  double diameter = 0.0;
  double min_gap = 0.0;
  double theta_deg = 0.0;
  std::vector<Strip> strips;
};

struct CrackSpec {
  double length = 0.0;
  double y = 0.0;
};

struct IsoMaterialSpec {
  double E = 0.0, nu = 0.0, Gc = 0.0, D = 0.0, alpha11 = 0.0, alpha22 = 0.0;
};

struct FibreMaterialSpec {
  double E11 = 0.0, E22 = 0.0, nu12 = 0.0, nu23 = 0.0;
  double Gc = 0.0, D = 0.0, alpha11 = 0.0, alpha22 = 0.0;
};

struct InterfaceSpec {
  double Gc = 0.0, D = 0.0, alpha11 = 0.0, alpha22 = 0.0;
};

struct MaterialsSpec {
  std::string catalog = "flax-epoxy";  // empty means inline values below
  IsoMaterialSpec matrix;
  FibreMaterialSpec fibre;
  InterfaceSpec interface;
  double interpolation_exponent = 1.0;
};

struct StageMoistureSpec {
  std::string set;
  double value = 0.0;
};

struct StageMechanicalSpec {
  std::string set;
  int component = 0;  // 0 = x, 1 = y
  double value = 0.0;
  double rate = 0.0;
  bool ramp = false;
};

struct StageSpec {
  std::string name;
  double duration = 0.0;
  double dt = 0.0;
  int output_every = 0;
  std::vector<StageMoistureSpec> moisture;
  std::vector<StageMechanicalSpec> mechanical;
};

struct ReportSpecConfig {
  std::string reaction_set = "bottom";
  int reaction_component = 1;
  std::string elongation_set = "left";
  std::optional<double> center_x, center_y;  // defaults to the domain centre
};

/// Complete run description; validates before any solve.
struct ScenarioConfig {
  std::string name = "custom";
  double width = 0.0, height = 0.0, origin_x = 0.0, origin_y = 0.0;
  FibreSpec fibres;
  std::optional<CrackSpec> crack;
  MaterialsSpec materials;

  double length_scale = 0.0;
  double indicator_length_scale = 0.0;  // <= 0: same as length_scale
  double kappa = 1e-7;
  double reference_concentration = 0.0;
  double initial_concentration = 0.0;
  double thickness = 1.0;
  bool out_of_plane_swelling = true;

  double mesh_h = 0.0;
  double mesh_scale = 1.0;
  std::string element_order = "bilinear";  // bilinear | quadratic

  std::vector<StageSpec> stages;

  std::string solver = "auto";  // auto | cholesky | cg
  bool multi_pass = false;
  double stagger_tolerance = 1e-4;
  int max_step_retries = 6;

  ReportSpecConfig report;

  std::string output_directory = "out";
  bool output_vtk = true;
  std::string output_csv = "timeseries.csv";

  std::uint64_t seed = 1;

  /// Full semantic validation; throws ConfigError listing every problem.
  void validate() const;
};

/// Built-in scenario presets: single_fibre, multi_fibre_sa, multi_fibre_rd,
/// secp_plate, ply, laminate.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

nlohmann::json config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const nlohmann::json& j);

/// Parse a config file; syntax and semantic problems carry line anchors when
/// they can be located in the source text.
ScenarioConfig load_config_file(const std::string& path);
void save_config_file(const ScenarioConfig& config, const std::string& path);

/// Everything needed to construct a Simulation.
struct BuiltScenario {
  Mesh mesh;
  MaterialCatalog catalog;
  FibreLayout layout;
  PhysicsParams physics;
  StageSchedule schedule;
  ReportSpec report;
  SimulationOptions options;
  std::optional<CrackSeam> crack;
};

BuiltScenario build_scenario(const ScenarioConfig& config);

struct ScenarioRun {
  std::unique_ptr<Simulation> sim;
  RunSummary summary;
  std::optional<CrackSeam> crack;
};

/// Build, run, and (optionally) write the configured outputs.
ScenarioRun run_scenario(const ScenarioConfig& config, bool write_outputs, bool quiet = false);

}  // namespace hygrofrac
