#include "hygrofrac/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hygrofrac/output.hpp"

namespace hygrofrac {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(problems.empty() ? "invalid configuration"
                                          : "invalid configuration: " + problems.front() +
                                                (problems.size() > 1 ? " (+more)" : "")),
      problems_(std::move(problems)) {}

namespace {

void require_positive(double v, const char* key, std::vector<std::string>& problems) {
  if (!(v > 0)) problems.push_back(std::string(key) + ": must be positive");
}

}  // namespace

void ScenarioConfig::validate() const {
  std::vector<std::string> problems;
  require_positive(width, "geometry.width", problems);
  require_positive(height, "geometry.height", problems);

  const std::string& kind = fibres.kind;
  if (kind != "none" && kind != "square_array" && kind != "random" && kind != "strips") {
    problems.push_back("geometry.fibres.kind: must be none|square_array|random|strips");
  }
  if (kind == "square_array" && fibres.rows > 0 && fibres.cols > 0) {
    require_positive(fibres.diameter, "geometry.fibres.diameter", problems);
    if (fibres.diameter > 0 && width > 0 && height > 0 &&
        (width / fibres.cols < fibres.diameter || height / fibres.rows < fibres.diameter)) {
      problems.push_back("geometry.fibres: square array pitch is smaller than the diameter");
    }
  }
  if (kind == "random" && fibres.count > 0) {
    require_positive(fibres.diameter, "geometry.fibres.diameter", problems);
    if (fibres.min_gap < 0) problems.push_back("geometry.fibres.min_gap: must be >= 0");
    if (width > 0 && height > 0 && fibres.diameter > 0) {
      const double vf =
          fibres.count * M_PI * fibres.diameter * fibres.diameter / 4.0 / (width * height);
      if (vf >= 0.5) {
        problems.push_back("geometry.fibres: packing fraction " + std::to_string(vf) +
                           " is too dense for dart throwing (< 0.5 required)");
      }
    }
  }
  if (kind == "strips") {
    for (std::size_t i = 0; i < fibres.strips.size(); ++i) {
      const Strip& s = fibres.strips[i];
      if (!(s.y_min < s.y_max)) {
        problems.push_back("geometry.fibres.strips[" + std::to_string(i) +
                           "]: y_min must be below y_max");
      }
      if (s.y_min < origin_y - 1e-12 || s.y_max > origin_y + height + 1e-12) {
        problems.push_back("geometry.fibres.strips[" + std::to_string(i) +
                           "]: outside the domain");
      }
    }
  }
  if (crack) {
    if (!(crack->length >= 0 && crack->length < width)) {
      problems.push_back("geometry.crack.length: must satisfy 0 <= length < width");
    }
    if (!(crack->y > origin_y && crack->y < origin_y + height)) {
      problems.push_back("geometry.crack.y: must lie strictly inside the domain");
    }
  }

  if (!materials.catalog.empty()) {
    if (materials.catalog != "flax-epoxy") {
      problems.push_back("materials.catalog: unknown catalog '" + materials.catalog + "'");
    }
  } else {
    require_positive(materials.matrix.E, "materials.matrix.E", problems);
    require_positive(materials.matrix.Gc, "materials.matrix.Gc", problems);
    require_positive(materials.matrix.D, "materials.matrix.D", problems);
    require_positive(materials.fibre.E11, "materials.fibre.E11", problems);
    require_positive(materials.fibre.E22, "materials.fibre.E22", problems);
    require_positive(materials.fibre.Gc, "materials.fibre.Gc", problems);
    require_positive(materials.fibre.D, "materials.fibre.D", problems);
    require_positive(materials.interface.Gc, "materials.interface.Gc", problems);
    require_positive(materials.interface.D, "materials.interface.D", problems);
    const std::pair<double, const char*> ratios[] = {
        {materials.matrix.nu, "materials.matrix.nu"},
        {materials.fibre.nu12, "materials.fibre.nu12"},
        {materials.fibre.nu23, "materials.fibre.nu23"}};
    for (auto [nu, key] : ratios) {
      if (!(nu > -1.0 && nu < 0.5)) {
        problems.push_back(std::string(key) + ": must lie in (-1, 0.5)");
      }
    }
  }
  if (!(materials.interpolation_exponent >= 1.0)) {
    problems.push_back("materials.interpolation_exponent: must be >= 1");
  }

  require_positive(length_scale, "physics.length_scale", problems);
  if (kappa < 0) problems.push_back("physics.kappa: must be >= 0");
  require_positive(thickness, "physics.thickness", problems);
  if (initial_concentration < 0) {
    problems.push_back("physics.initial_concentration: must be >= 0");
  }

  require_positive(mesh_h, "mesh.h", problems);
  require_positive(mesh_scale, "mesh.scale", problems);
  if (element_order != "bilinear" && element_order != "quadratic") {
    problems.push_back("mesh.element_order: must be bilinear|quadratic");
  }
  if (width > 0 && height > 0 && mesh_h * mesh_scale > std::min(width, height)) {
    problems.push_back("mesh.h: effective element size exceeds the smallest domain dimension");
  }

  for (std::size_t i = 0; i < stages.size(); ++i) {
    const StageSpec& s = stages[i];
    const std::string p = "schedule.stages[" + std::to_string(i) + "]";
    if (!(s.duration > 0)) problems.push_back(p + ".duration: must be positive");
    if (!(s.dt > 0)) problems.push_back(p + ".dt: must be positive");
    if (s.dt > s.duration) problems.push_back(p + ".dt: must not exceed the stage duration");
    for (const auto& m : s.moisture) {
      if (m.set.empty()) problems.push_back(p + ".moisture.set: must name a node set");
      if (m.value < 0) problems.push_back(p + ".moisture.value: must be >= 0");
    }
    for (const auto& m : s.mechanical) {
      if (m.set.empty()) problems.push_back(p + ".mechanical.set: must name a node set");
      if (m.component != 0 && m.component != 1) {
        problems.push_back(p + ".mechanical.component: must be x or y");
      }
    }
  }

  if (solver != "auto" && solver != "cholesky" && solver != "cg") {
    problems.push_back("numerics.solver: must be auto|cholesky|cg");
  }
  require_positive(stagger_tolerance, "numerics.stagger_tolerance", problems);
  if (max_step_retries < 0) problems.push_back("numerics.max_step_retries: must be >= 0");
  if (report.reaction_component != 0 && report.reaction_component != 1) {
    problems.push_back("report.reaction_component: must be x or y");
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
}

// ---------------------------------------------------------------------------
// presets

namespace {

StageSpec make_stage(std::string name, double duration, double dt, int output_every,
                     std::vector<StageMoistureSpec> moisture,
                     std::vector<StageMechanicalSpec> mech) {
  StageSpec s;
  s.name = std::move(name);
  s.duration = duration;
  s.dt = dt;
  s.output_every = output_every;
  s.moisture = std::move(moisture);
  s.mechanical = std::move(mech);
  return s;
}

std::vector<StageMechanicalSpec> clamp_top_bottom_right() {
  return {{"top", 1, 0.0, 0.0, false},
          {"bottom", 1, 0.0, 0.0, false},
          {"right", 0, 0.0, 0.0, false}};
}

std::vector<StageMechanicalSpec> symmetry_bottom_right() {
  return {{"bottom", 1, 0.0, 0.0, false}, {"right", 0, 0.0, 0.0, false}};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"single_fibre", "multi_fibre_sa", "multi_fibre_rd", "secp_plate", "ply", "laminate"};
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  c.materials.catalog = "flax-epoxy";

  if (name == "single_fibre") {
    c.width = c.height = 0.02;
    c.fibres.kind = "square_array";
    c.fibres.rows = c.fibres.cols = 1;
    c.fibres.diameter = 0.01;
    c.length_scale = 0.001;
    c.indicator_length_scale = 0.001;
    c.mesh_h = 0.0005;
    c.stages = {
        make_stage("wet", 2000.0, 10.0, 20, {{"left", 0.0745}}, clamp_top_bottom_right()),
        make_stage("dry", 5000.0, 25.0, 20, {{"left", 0.0}}, clamp_top_bottom_right())};
    return c;
  }
  if (name == "multi_fibre_sa" || name == "multi_fibre_rd") {
    c.width = c.height = 0.1;
    c.fibres.diameter = 0.01;
    if (name == "multi_fibre_sa") {
      c.fibres.kind = "square_array";
      c.fibres.rows = c.fibres.cols = 6;
    } else {
      c.fibres.kind = "random";
      c.fibres.count = 36;
      c.fibres.min_gap = 0.001;
    }
    c.length_scale = 0.0009;
    c.indicator_length_scale = 0.0009;
    c.mesh_h = 0.00045;
    c.stages = {
        make_stage("wet", 30000.0, 150.0, 20, {{"left", 0.0745}}, clamp_top_bottom_right()),
        make_stage("dry", 60000.0, 300.0, 20, {{"left", 0.0}}, clamp_top_bottom_right())};
    return c;
  }
  if (name == "secp_plate") {
    c.width = 0.1;
    c.height = 0.2;
    c.fibres.kind = "random";
    c.fibres.count = 72;  // same areal density as the 36-fibre square model
    c.fibres.diameter = 0.01;
    c.fibres.min_gap = 0.001;
    c.crack = CrackSpec{0.05, 0.1};
    c.length_scale = 0.0009;
    c.indicator_length_scale = 0.0009;
    c.mesh_h = 0.0005;  // keeps the mid-height seam and a0 on mesh lines
    std::vector<StageMechanicalSpec> grips = {{"bottom", 0, 0.0, 0.0, false},
                                              {"bottom", 1, 0.0, 0.0, false},
                                              {"top", 1, 0.0, 0.0, false}};
    std::vector<StageMechanicalSpec> pull = {{"bottom", 0, 0.0, 0.0, false},
                                             {"bottom", 1, 0.0, 0.0, false},
                                             {"top", 1, 0.0, 0.04, true}};
    // the saturated plate carries a compressive swelling preload, so the ramp
    // window leaves room to unload it before the tensile failure
    c.stages = {make_stage("wet", 30000.0, 150.0, 40, {{"left", 0.0745}}, grips),
                make_stage("pull", 1.0, 0.002, 50, {}, pull)};
    c.report.reaction_set = "bottom";
    c.report.reaction_component = 1;
    return c;
  }
  if (name == "ply") {
    c.width = 10.0;
    c.height = 1.5;
    c.fibres.kind = "strips";
    c.fibres.strips = {Strip{0.63, 0.87, 0.0}};  // d = H * Vf, yarn band at mid-height
    c.length_scale = 0.026;
    c.indicator_length_scale = 0.026;
    c.mesh_h = 0.013;
    c.stages = {make_stage("wet", 2.5e7, 1.25e5, 20, {{"top", 0.0745}, {"left", 0.0745}},
                           symmetry_bottom_right()),
                make_stage("dry", 5.0e7, 2.5e5, 20, {{"top", 0.0}, {"left", 0.0}},
                           symmetry_bottom_right())};
    return c;
  }
  if (name == "laminate") {
    c.width = 10.0;
    c.height = 6.0;  // quarter of the 8-ply stack, mid-plane at the bottom edge
    c.fibres.kind = "strips";
    c.fibres.strips = {Strip{0.63, 0.87, 90.0}, Strip{2.13, 2.37, 0.0},
                       Strip{3.63, 3.87, 90.0}, Strip{5.13, 5.37, 0.0}};
    c.length_scale = 0.026;
    c.indicator_length_scale = 0.026;
    c.mesh_h = 0.013;
    c.stages = {make_stage("wet", 1.0e8, 5.0e5, 20, {{"top", 0.0745}, {"left", 0.0745}},
                           symmetry_bottom_right()),
                make_stage("dry", 3.0e8, 1.5e6, 20, {{"top", 0.0}, {"left", 0.0}},
                           symmetry_bottom_right())};
    return c;
  }
  throw ConfigError({"unknown preset '" + name + "'"});
}

// ---------------------------------------------------------------------------
// JSON round trip

namespace {

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed,
                std::vector<std::string>& problems) {
  if (!j.is_object()) {
    problems.push_back(path + ": must be an object");
    return;
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) problems.push_back(path + "." + key + ": unknown key");
  }
}

double num_or(const json& j, const char* key, double def, const std::string& path,
              std::vector<std::string>& problems) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number()) {
    problems.push_back(path + "." + key + ": must be a number");
    return def;
  }
  return j[key].get<double>();
}

int int_or(const json& j, const char* key, int def, const std::string& path,
           std::vector<std::string>& problems) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number_integer()) {
    problems.push_back(path + "." + key + ": must be an integer");
    return def;
  }
  return j[key].get<int>();
}

std::string str_or(const json& j, const char* key, const std::string& def,
                   const std::string& path, std::vector<std::string>& problems) {
  if (!j.contains(key)) return def;
  if (!j[key].is_string()) {
    problems.push_back(path + "." + key + ": must be a string");
    return def;
  }
  return j[key].get<std::string>();
}

bool bool_or(const json& j, const char* key, bool def, const std::string& path,
             std::vector<std::string>& problems) {
  if (!j.contains(key)) return def;
  if (!j[key].is_boolean()) {
    problems.push_back(path + "." + key + ": must be a boolean");
    return def;
  }
  return j[key].get<bool>();
}

int component_from_string(const std::string& s, const std::string& path,
                          std::vector<std::string>& problems) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  problems.push_back(path + ": component must be \"x\" or \"y\"");
  return 0;
}

}  // namespace

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  json& g = j["geometry"];
  g["width"] = c.width;
  g["height"] = c.height;
  g["origin_x"] = c.origin_x;
  g["origin_y"] = c.origin_y;
  json& f = g["fibres"];
  f["kind"] = c.fibres.kind;
  if (c.fibres.kind == "square_array") {
    f["rows"] = c.fibres.rows;
    f["cols"] = c.fibres.cols;
  }
  if (c.fibres.kind == "random") {
    f["count"] = c.fibres.count;
    f["min_gap"] = c.fibres.min_gap;
  }
  if (c.fibres.kind == "square_array" || c.fibres.kind == "random") {
    f["diameter"] = c.fibres.diameter;
    f["theta_deg"] = c.fibres.theta_deg;
  }
  if (c.fibres.kind == "strips") {
    json strips = json::array();
    for (const Strip& s : c.fibres.strips) {
      strips.push_back({{"y_min", s.y_min}, {"y_max", s.y_max}, {"theta_deg", s.theta_deg}});
    }
    f["strips"] = strips;
  }
  if (c.crack) g["crack"] = {{"length", c.crack->length}, {"y", c.crack->y}};

  json& m = j["materials"];
  if (!c.materials.catalog.empty()) {
    m["catalog"] = c.materials.catalog;
  } else {
    m["matrix"] = {{"E", c.materials.matrix.E},       {"nu", c.materials.matrix.nu},
                   {"Gc", c.materials.matrix.Gc},     {"D", c.materials.matrix.D},
                   {"alpha11", c.materials.matrix.alpha11},
                   {"alpha22", c.materials.matrix.alpha22}};
    m["fibre"] = {{"E11", c.materials.fibre.E11},     {"E22", c.materials.fibre.E22},
                  {"nu12", c.materials.fibre.nu12},   {"nu23", c.materials.fibre.nu23},
                  {"Gc", c.materials.fibre.Gc},       {"D", c.materials.fibre.D},
                  {"alpha11", c.materials.fibre.alpha11},
                  {"alpha22", c.materials.fibre.alpha22}};
    m["interface"] = {{"Gc", c.materials.interface.Gc},
                      {"D", c.materials.interface.D},
                      {"alpha11", c.materials.interface.alpha11},
                      {"alpha22", c.materials.interface.alpha22}};
  }
  m["interpolation_exponent"] = c.materials.interpolation_exponent;

  j["physics"] = {{"length_scale", c.length_scale},
                  {"indicator_length_scale", c.indicator_length_scale},
                  {"kappa", c.kappa},
                  {"reference_concentration", c.reference_concentration},
                  {"initial_concentration", c.initial_concentration},
                  {"thickness", c.thickness},
                  {"out_of_plane_swelling", c.out_of_plane_swelling}};
  j["mesh"] = {{"h", c.mesh_h}, {"scale", c.mesh_scale}, {"element_order", c.element_order}};

  json stages = json::array();
  for (const StageSpec& s : c.stages) {
    json js;
    js["name"] = s.name;
    js["duration"] = s.duration;
    js["dt"] = s.dt;
    js["output_every"] = s.output_every;
    json moist = json::array();
    for (const auto& mo : s.moisture) moist.push_back({{"set", mo.set}, {"value", mo.value}});
    js["moisture"] = moist;
    json mech = json::array();
    for (const auto& me : s.mechanical) {
      json e;
      e["set"] = me.set;
      e["component"] = me.component == 0 ? "x" : "y";
      if (me.ramp) {
        e["rate"] = me.rate;
      } else {
        e["value"] = me.value;
      }
      mech.push_back(e);
    }
    js["mechanical"] = mech;
    stages.push_back(js);
  }
  j["schedule"] = {{"stages", stages}};

  j["numerics"] = {{"solver", c.solver},
                   {"multi_pass", c.multi_pass},
                   {"stagger_tolerance", c.stagger_tolerance},
                   {"max_step_retries", c.max_step_retries}};
  json rep = {{"reaction_set", c.report.reaction_set},
              {"reaction_component", c.report.reaction_component == 0 ? "x" : "y"},
              {"elongation_set", c.report.elongation_set}};
  if (c.report.center_x) rep["center_x"] = *c.report.center_x;
  if (c.report.center_y) rep["center_y"] = *c.report.center_y;
  j["report"] = rep;
  j["output"] = {{"directory", c.output_directory},
                 {"vtk", c.output_vtk},
                 {"csv", c.output_csv}};
  j["seed"] = c.seed;
  return j;
}

ScenarioConfig config_from_json(const json& j) {
  std::vector<std::string> problems;
  ScenarioConfig c;
  check_keys(j, "config",
             {"name", "geometry", "materials", "physics", "mesh", "schedule", "numerics",
              "report", "output", "seed"},
             problems);
  if (!problems.empty()) throw ConfigError(std::move(problems));

  c.name = str_or(j, "name", "custom", "config", problems);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      problems.push_back("seed: must be an integer");
    } else {
      c.seed = j["seed"].get<std::uint64_t>();
    }
  }

  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    check_keys(g, "geometry", {"width", "height", "origin_x", "origin_y", "fibres", "crack"},
               problems);
    c.width = num_or(g, "width", 0.0, "geometry", problems);
    c.height = num_or(g, "height", 0.0, "geometry", problems);
    c.origin_x = num_or(g, "origin_x", 0.0, "geometry", problems);
    c.origin_y = num_or(g, "origin_y", 0.0, "geometry", problems);
    if (g.contains("fibres")) {
      const json& f = g["fibres"];
      check_keys(f, "geometry.fibres",
                 {"kind", "rows", "cols", "count", "diameter", "min_gap", "theta_deg", "strips"},
                 problems);
      c.fibres.kind = str_or(f, "kind", "none", "geometry.fibres", problems);
      c.fibres.rows = int_or(f, "rows", 0, "geometry.fibres", problems);
      c.fibres.cols = int_or(f, "cols", 0, "geometry.fibres", problems);
      c.fibres.count = int_or(f, "count", 0, "geometry.fibres", problems);
      c.fibres.diameter = num_or(f, "diameter", 0.0, "geometry.fibres", problems);
      c.fibres.min_gap = num_or(f, "min_gap", 0.0, "geometry.fibres", problems);
      c.fibres.theta_deg = num_or(f, "theta_deg", 0.0, "geometry.fibres", problems);
      if (f.contains("strips")) {
        if (!f["strips"].is_array()) {
          problems.push_back("geometry.fibres.strips: must be an array");
        } else {
          int i = 0;
          for (const json& js : f["strips"]) {
            const std::string p = "geometry.fibres.strips[" + std::to_string(i++) + "]";
            check_keys(js, p, {"y_min", "y_max", "theta_deg"}, problems);
            Strip s;
            s.y_min = num_or(js, "y_min", 0.0, p, problems);
            s.y_max = num_or(js, "y_max", 0.0, p, problems);
            s.theta_deg = num_or(js, "theta_deg", 0.0, p, problems);
            c.fibres.strips.push_back(s);
          }
        }
      }
    }
    if (g.contains("crack")) {
      const json& cr = g["crack"];
      check_keys(cr, "geometry.crack", {"length", "y"}, problems);
      CrackSpec spec;
      spec.length = num_or(cr, "length", 0.0, "geometry.crack", problems);
      spec.y = num_or(cr, "y", 0.0, "geometry.crack", problems);
      c.crack = spec;
    }
  }

  if (j.contains("materials")) {
    const json& m = j["materials"];
    check_keys(m, "materials", {"catalog", "matrix", "fibre", "interface",
                                "interpolation_exponent"},
               problems);
    const bool has_inline = m.contains("matrix") || m.contains("fibre") || m.contains("interface");
    c.materials.catalog = str_or(m, "catalog", has_inline ? "" : "flax-epoxy", "materials",
                                 problems);
    if (m.contains("matrix")) {
      const json& mm = m["matrix"];
      check_keys(mm, "materials.matrix", {"E", "nu", "Gc", "D", "alpha11", "alpha22"}, problems);
      c.materials.matrix.E = num_or(mm, "E", 0.0, "materials.matrix", problems);
      c.materials.matrix.nu = num_or(mm, "nu", 0.0, "materials.matrix", problems);
      c.materials.matrix.Gc = num_or(mm, "Gc", 0.0, "materials.matrix", problems);
      c.materials.matrix.D = num_or(mm, "D", 0.0, "materials.matrix", problems);
      c.materials.matrix.alpha11 = num_or(mm, "alpha11", 0.0, "materials.matrix", problems);
      c.materials.matrix.alpha22 = num_or(mm, "alpha22", 0.0, "materials.matrix", problems);
    }
    if (m.contains("fibre")) {
      const json& mf = m["fibre"];
      check_keys(mf, "materials.fibre",
                 {"E11", "E22", "nu12", "nu23", "Gc", "D", "alpha11", "alpha22"}, problems);
      c.materials.fibre.E11 = num_or(mf, "E11", 0.0, "materials.fibre", problems);
      c.materials.fibre.E22 = num_or(mf, "E22", 0.0, "materials.fibre", problems);
      c.materials.fibre.nu12 = num_or(mf, "nu12", 0.0, "materials.fibre", problems);
      c.materials.fibre.nu23 = num_or(mf, "nu23", 0.0, "materials.fibre", problems);
      c.materials.fibre.Gc = num_or(mf, "Gc", 0.0, "materials.fibre", problems);
      c.materials.fibre.D = num_or(mf, "D", 0.0, "materials.fibre", problems);
      c.materials.fibre.alpha11 = num_or(mf, "alpha11", 0.0, "materials.fibre", problems);
      c.materials.fibre.alpha22 = num_or(mf, "alpha22", 0.0, "materials.fibre", problems);
    }
    if (m.contains("interface")) {
      const json& mi = m["interface"];
      check_keys(mi, "materials.interface", {"Gc", "D", "alpha11", "alpha22"}, problems);
      c.materials.interface.Gc = num_or(mi, "Gc", 0.0, "materials.interface", problems);
      c.materials.interface.D = num_or(mi, "D", 0.0, "materials.interface", problems);
      c.materials.interface.alpha11 = num_or(mi, "alpha11", 0.0, "materials.interface", problems);
      c.materials.interface.alpha22 = num_or(mi, "alpha22", 0.0, "materials.interface", problems);
    }
    c.materials.interpolation_exponent =
        num_or(m, "interpolation_exponent", 1.0, "materials", problems);
  }

  if (j.contains("physics")) {
    const json& p = j["physics"];
    check_keys(p, "physics",
               {"length_scale", "indicator_length_scale", "kappa", "reference_concentration",
                "initial_concentration", "thickness", "out_of_plane_swelling"},
               problems);
    c.length_scale = num_or(p, "length_scale", 0.0, "physics", problems);
    c.indicator_length_scale = num_or(p, "indicator_length_scale", 0.0, "physics", problems);
    c.kappa = num_or(p, "kappa", 1e-7, "physics", problems);
    c.reference_concentration = num_or(p, "reference_concentration", 0.0, "physics", problems);
    c.initial_concentration = num_or(p, "initial_concentration", 0.0, "physics", problems);
    c.thickness = num_or(p, "thickness", 1.0, "physics", problems);
    c.out_of_plane_swelling = bool_or(p, "out_of_plane_swelling", true, "physics", problems);
  }

  if (j.contains("mesh")) {
    const json& m = j["mesh"];
    check_keys(m, "mesh", {"h", "scale", "element_order"}, problems);
    c.mesh_h = num_or(m, "h", 0.0, "mesh", problems);
    c.mesh_scale = num_or(m, "scale", 1.0, "mesh", problems);
    c.element_order = str_or(m, "element_order", "bilinear", "mesh", problems);
  }

  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    check_keys(s, "schedule", {"stages"}, problems);
    if (s.contains("stages")) {
      if (!s["stages"].is_array()) {
        problems.push_back("schedule.stages: must be an array");
      } else {
        int i = 0;
        for (const json& js : s["stages"]) {
          const std::string p = "schedule.stages[" + std::to_string(i++) + "]";
          check_keys(js, p, {"name", "duration", "dt", "output_every", "moisture", "mechanical"},
                     problems);
          StageSpec stage;
          stage.name = str_or(js, "name", "stage" + std::to_string(i), p, problems);
          stage.duration = num_or(js, "duration", 0.0, p, problems);
          stage.dt = num_or(js, "dt", 0.0, p, problems);
          stage.output_every = int_or(js, "output_every", 0, p, problems);
          if (js.contains("moisture")) {
            for (const json& jm : js["moisture"]) {
              check_keys(jm, p + ".moisture", {"set", "value"}, problems);
              StageMoistureSpec mo;
              mo.set = str_or(jm, "set", "", p + ".moisture", problems);
              mo.value = num_or(jm, "value", 0.0, p + ".moisture", problems);
              stage.moisture.push_back(mo);
            }
          }
          if (js.contains("mechanical")) {
            for (const json& jm : js["mechanical"]) {
              check_keys(jm, p + ".mechanical", {"set", "component", "value", "rate"}, problems);
              StageMechanicalSpec me;
              me.set = str_or(jm, "set", "", p + ".mechanical", problems);
              me.component = component_from_string(
                  str_or(jm, "component", "x", p + ".mechanical", problems),
                  p + ".mechanical.component", problems);
              me.value = num_or(jm, "value", 0.0, p + ".mechanical", problems);
              if (jm.contains("rate")) {
                me.rate = num_or(jm, "rate", 0.0, p + ".mechanical", problems);
                me.ramp = true;
              }
              stage.mechanical.push_back(me);
            }
          }
          c.stages.push_back(stage);
        }
      }
    }
  }

  if (j.contains("numerics")) {
    const json& n = j["numerics"];
    check_keys(n, "numerics", {"solver", "multi_pass", "stagger_tolerance", "max_step_retries"},
               problems);
    c.solver = str_or(n, "solver", "auto", "numerics", problems);
    c.multi_pass = bool_or(n, "multi_pass", false, "numerics", problems);
    c.stagger_tolerance = num_or(n, "stagger_tolerance", 1e-4, "numerics", problems);
    c.max_step_retries = int_or(n, "max_step_retries", 6, "numerics", problems);
  }

  if (j.contains("report")) {
    const json& r = j["report"];
    check_keys(r, "report",
               {"reaction_set", "reaction_component", "elongation_set", "center_x", "center_y"},
               problems);
    c.report.reaction_set = str_or(r, "reaction_set", "bottom", "report", problems);
    c.report.reaction_component = component_from_string(
        str_or(r, "reaction_component", "y", "report", problems), "report.reaction_component",
        problems);
    c.report.elongation_set = str_or(r, "elongation_set", "left", "report", problems);
    if (r.contains("center_x")) c.report.center_x = num_or(r, "center_x", 0.0, "report", problems);
    if (r.contains("center_y")) c.report.center_y = num_or(r, "center_y", 0.0, "report", problems);
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"directory", "vtk", "csv"}, problems);
    c.output_directory = str_or(o, "directory", "out", "output", problems);
    c.output_vtk = bool_or(o, "vtk", true, "output", problems);
    c.output_csv = str_or(o, "csv", "timeseries.csv", "output", problems);
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

namespace {

int line_of_key(const std::string& text, const std::string& key) {
  const std::string needle = "\"" + key + "\"";
  const auto pos = text.find(needle);
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

std::string last_key_of(const std::string& problem) {
  const auto colon = problem.find(':');
  std::string path = colon == std::string::npos ? problem : problem.substr(0, colon);
  const auto bracket = path.find('[');
  if (bracket != std::string::npos) path = path.substr(0, bracket);
  const auto dot = path.rfind('.');
  return dot == std::string::npos ? path : path.substr(dot + 1);
}

}  // namespace

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError({path + ": cannot open file"});
  std::stringstream buf;
  buf << is.rdbuf();
  const std::string text = buf.str();

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    const int line =
        1 + static_cast<int>(std::count(text.begin(),
                                        text.begin() + std::min<std::size_t>(err.byte, text.size()),
                                        '\n'));
    throw ConfigError({path + ":" + std::to_string(line) + ": " + err.what()});
  }

  try {
    ScenarioConfig c = config_from_json(j);
    c.validate();
    return c;
  } catch (const ConfigError& err) {
    std::vector<std::string> anchored;
    for (const std::string& p : err.problems()) {
      const int line = line_of_key(text, last_key_of(p));
      anchored.push_back(line > 0 ? path + ":" + std::to_string(line) + ": " + p
                                  : path + ": " + p);
    }
    throw ConfigError(std::move(anchored));
  }
}

void save_config_file(const ScenarioConfig& config, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError({path + ": cannot write file"});
  os << config_to_json(config).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// building and running

BuiltScenario build_scenario(const ScenarioConfig& config) {
  config.validate();
  BuiltScenario built;

  const Domain2D domain{config.width, config.height, config.origin_x, config.origin_y};
  const ElementOrder order = config.element_order == "quadratic" ? ElementOrder::Serendipity8
                                                                 : ElementOrder::Bilinear4;
  built.mesh = build_rect_mesh(domain, config.mesh_h * config.mesh_scale, order);

  if (config.fibres.kind == "square_array") {
    built.layout =
        place_fibres_square_array(config.fibres.rows, config.fibres.cols, config.fibres.diameter,
                                  domain);
    built.layout.circle_theta_deg = config.fibres.theta_deg;
  } else if (config.fibres.kind == "random") {
    built.layout = place_fibres_random(config.fibres.count, config.fibres.diameter, domain,
                                       config.seed, config.fibres.min_gap);
    built.layout.circle_theta_deg = config.fibres.theta_deg;
  } else if (config.fibres.kind == "strips") {
    built.layout = make_strip_layout(config.fibres.strips);
  }
  classify_regions(built.mesh, built.layout);

  if (config.crack && config.crack->length > 0) {
    // snap the seam onto mesh lines; insert_edge_crack requires alignment
    const double hy = built.mesh.hy;
    const double hx = built.mesh.hx;
    double y_snap = domain.y0 + std::round((config.crack->y - domain.y0) / hy) * hy;
    y_snap = std::min(std::max(y_snap, domain.y0 + hy), domain.y1() - hy);
    const double a_snap = std::max(hx, std::round(config.crack->length / hx) * hx);
    built.crack = insert_edge_crack(built.mesh, a_snap, y_snap);
  }

  if (!config.materials.catalog.empty()) {
    built.catalog = builtin_catalog(config.materials.catalog);
  } else {
    built.catalog.matrix.elastic =
        ElasticParams::make_isotropic(config.materials.matrix.E, config.materials.matrix.nu);
    built.catalog.matrix.hygro = {config.materials.matrix.alpha11,
                                  config.materials.matrix.alpha22,
                                  config.reference_concentration};
    built.catalog.matrix.Gc = config.materials.matrix.Gc;
    built.catalog.matrix.D = config.materials.matrix.D;
    built.catalog.fibre.elastic =
        ElasticParams::make_transverse(config.materials.fibre.E11, config.materials.fibre.E22,
                                       config.materials.fibre.nu12, config.materials.fibre.nu23,
                                       0.0);
    built.catalog.fibre.hygro = {config.materials.fibre.alpha11, config.materials.fibre.alpha22,
                                 config.reference_concentration};
    built.catalog.fibre.Gc = config.materials.fibre.Gc;
    built.catalog.fibre.D = config.materials.fibre.D;
    built.catalog.interface = {config.materials.interface.Gc, config.materials.interface.D,
                               config.materials.interface.alpha11,
                               config.materials.interface.alpha22};
  }
  built.catalog.interpolation_exponent = config.materials.interpolation_exponent;

  built.physics.ell = config.length_scale;
  built.physics.ell_d = config.indicator_length_scale;
  built.physics.kappa = config.kappa;
  built.physics.C0 = config.reference_concentration;
  built.physics.C_initial = config.initial_concentration;
  built.physics.thickness = config.thickness;
  built.physics.out_of_plane_swelling = config.out_of_plane_swelling;

  for (const StageSpec& s : config.stages) {
    Stage stage;
    stage.name = s.name;
    stage.duration = s.duration;
    stage.dt = s.dt;
    stage.output_every = s.output_every;
    for (const auto& m : s.moisture) stage.moisture.push_back({m.set, m.value});
    for (const auto& m : s.mechanical) {
      stage.mechanical.push_back({m.set, m.component, m.value, m.rate, m.ramp});
    }
    built.schedule.stages.push_back(std::move(stage));
  }

  built.report.reaction_set = config.report.reaction_set;
  built.report.reaction_component = config.report.reaction_component;
  built.report.elongation_set = config.report.elongation_set;
  built.report.center_x = config.report.center_x.value_or(domain.x0 + 0.5 * domain.width);
  built.report.center_y = config.report.center_y.value_or(domain.y0 + 0.5 * domain.height);
  if (config.report.elongation_set == "right") {
    built.report.elongation_outward_x = 1.0;
    built.report.elongation_outward_y = 0.0;
  } else if (config.report.elongation_set == "top") {
    built.report.elongation_outward_x = 0.0;
    built.report.elongation_outward_y = 1.0;
  } else if (config.report.elongation_set == "bottom") {
    built.report.elongation_outward_x = 0.0;
    built.report.elongation_outward_y = -1.0;
  } else {
    built.report.elongation_outward_x = -1.0;
    built.report.elongation_outward_y = 0.0;
  }

  if (config.solver == "cholesky") built.options.solver.kind = SolverKind::Cholesky;
  if (config.solver == "cg") built.options.solver.kind = SolverKind::ConjugateGradient;
  built.options.multi_pass = config.multi_pass;
  built.options.stagger_tolerance = config.stagger_tolerance;
  built.options.max_step_retries = config.max_step_retries;
  return built;
}

ScenarioRun run_scenario(const ScenarioConfig& config, bool write_outputs, bool quiet) {
  BuiltScenario built = build_scenario(config);
  built.options.quiet = quiet;
  ScenarioRun run;
  run.crack = built.crack;
  run.sim = std::make_unique<Simulation>(std::move(built.mesh), std::move(built.catalog),
                                         std::move(built.layout), built.physics, built.options);

  SnapshotHook hook;
  if (write_outputs && config.output_vtk) {
    std::filesystem::create_directories(config.output_directory);
    const std::string prefix = config.output_directory + "/" + config.name + "_";
    hook = [prefix](const Simulation& sim, double, const std::string&, int seq) {
      char suffix[16];
      std::snprintf(suffix, sizeof(suffix), "%04d.vtk", seq);
      write_vtk(sim, prefix + suffix);
    };
  }

  run.summary = run.sim->run(built.schedule, built.report, hook);

  if (write_outputs) {
    std::filesystem::create_directories(config.output_directory);
    write_timeseries(run.summary.series, config.output_directory + "/" + config.output_csv);
  }
  return run;
}

}  // namespace hygrofrac
