#include <doctest.h>

#include <cmath>

#include "hygrofrac/scenario.hpp"

using namespace hygrofrac;

namespace {

ScenarioConfig coarse_single_fibre() {
  ScenarioConfig c = preset("single_fibre");
  c.mesh_scale = 4.0;
  c.output_vtk = false;
  return c;
}

ScenarioConfig inline_materials(ScenarioConfig c) {
  c.materials.catalog.clear();
  c.materials.matrix = {3600.0, 0.4, 1.2, 1.45e-6, 0.6, 0.6};
  c.materials.fibre = {31500.0, 5100.0, 0.28, 0.41, 2.1, 1.19e-6, 1.06, 0.85};
  c.materials.interface = {0.213, 0.8e-6, 0.1, 0.1};
  return c;
}

}  // namespace

TEST_CASE("state is a fixed point without loads or moisture") {
  ScenarioConfig c = coarse_single_fibre();
  for (auto& stage : c.stages) stage.moisture.clear();
  c.stages.resize(1);
  c.stages[0].duration = 100.0;
  c.stages[0].dt = 20.0;
  ScenarioRun run = run_scenario(c, false, true);
  CHECK(run.summary.completed);
  CHECK(run.summary.peak_force_abs < 1e-12);
  CHECK(run.summary.peak_damage < 1e-14);
  CHECK(run.sim->displacement().cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("empty schedule reports only the initial state") {
  ScenarioConfig c = coarse_single_fibre();
  c.stages.clear();
  ScenarioRun run = run_scenario(c, false, true);
  CHECK(run.summary.completed);
  CHECK(run.summary.series.size() == 1);
  CHECK(run.summary.final_time == 0.0);
  CHECK(run.summary.steps_accepted == 0);
}

TEST_CASE("single-fibre trend: force rises, plateaus, then decays on drying") {
  ScenarioRun run = run_scenario(coarse_single_fibre(), false, true);
  REQUIRE(run.summary.completed);
  const auto& series = run.summary.series;

  double peak_wet = 0.0;
  double end_wet = 0.0;
  double end_dry = 0.0;
  for (const auto& row : series) {
    if (row.stage == "wet") {
      peak_wet = std::max(peak_wet, std::abs(row.reaction_force));
      end_wet = std::abs(row.reaction_force);
    } else {
      end_dry = std::abs(row.reaction_force);
    }
  }
  CHECK(peak_wet > 0.0);
  CHECK(end_wet > 0.9 * peak_wet);   // plateau reached while wet
  CHECK(end_dry < 0.05 * peak_wet);  // force released by drying

  // centre concentration rises then falls back
  double c_peak = 0.0;
  for (const auto& row : series) c_peak = std::max(c_peak, row.C_center);
  CHECK(c_peak == doctest::Approx(0.0745).epsilon(0.02));
  CHECK(series.back().C_center < 0.01);
}

TEST_CASE("accepted steps advance time strictly and rows stay ordered") {
  ScenarioRun run = run_scenario(coarse_single_fibre(), false, true);
  const auto& series = run.summary.series;
  for (std::size_t i = 1; i < series.size(); ++i) {
    CHECK(series[i].time > series[i - 1].time);
  }
  CHECK(run.summary.steps_rejected == 0);
  CHECK(run.summary.irreversibility_violations == 0);
}

TEST_CASE("repeated runs are bitwise identical") {
  ScenarioRun a = run_scenario(coarse_single_fibre(), false, true);
  ScenarioRun b = run_scenario(coarse_single_fibre(), false, true);
  REQUIRE(a.summary.series.size() == b.summary.series.size());
  for (std::size_t i = 0; i < a.summary.series.size(); ++i) {
    CHECK(a.summary.series[i].reaction_force == b.summary.series[i].reaction_force);
    CHECK(a.summary.series[i].C_center == b.summary.series[i].C_center);
    CHECK(a.summary.series[i].max_damage == b.summary.series[i].max_damage);
  }
}

TEST_CASE("zero expansion coefficients decouple mechanics from moisture history") {
  ScenarioConfig wet = inline_materials(coarse_single_fibre());
  wet.materials.matrix.alpha11 = wet.materials.matrix.alpha22 = 0.0;
  wet.materials.fibre.alpha11 = wet.materials.fibre.alpha22 = 0.0;
  wet.materials.interface.alpha11 = wet.materials.interface.alpha22 = 0.0;

  ScenarioConfig dry = wet;
  for (auto& stage : dry.stages) stage.moisture.clear();

  ScenarioRun run_wet = run_scenario(wet, false, true);
  ScenarioRun run_dry = run_scenario(dry, false, true);
  REQUIRE(run_wet.summary.series.size() == run_dry.summary.series.size());
  bool moisture_differs = false;
  for (std::size_t i = 0; i < run_wet.summary.series.size(); ++i) {
    const auto& a = run_wet.summary.series[i];
    const auto& b = run_dry.summary.series[i];
    CHECK(a.reaction_force == b.reaction_force);  // bitwise
    CHECK(a.elongation == b.elongation);
    CHECK(a.max_damage == b.max_damage);
    moisture_differs = moisture_differs || a.C_center != b.C_center;
  }
  CHECK(moisture_differs);  // the transport problem itself did run
}

TEST_CASE("huge toughness suppresses damage and recovers hygro-elasticity") {
  ScenarioConfig c = inline_materials(coarse_single_fibre());
  c.materials.matrix.Gc *= 1e6;
  c.materials.fibre.Gc *= 1e6;
  c.materials.interface.Gc *= 1e6;
  c.stages.resize(1);  // wet stage only
  ScenarioRun run = run_scenario(c, false, true);
  REQUIRE(run.summary.completed);
  CHECK(run.summary.peak_damage < 1e-3);

  // reference hygro-elastic solution at the final moisture state
  const Simulation& sim = *run.sim;
  PropertyFields props = build_property_fields(sim.indicator(), sim.mesh(), sim.catalog(),
                                               sim.layout());
  MechanicsContext ctx = MechanicsContext::build(sim.mesh(), sim.catalog(), props, 1e-7, 0.0);
  std::vector<MechanicalBCEntry> bcs;
  bcs.push_back({"top", 1, 0.0, 0.0, false});
  bcs.push_back({"bottom", 1, 0.0, 0.0, false});
  bcs.push_back({"right", 0, 0.0, 0.0, false});
  const Eigen::VectorXd u_ref = solve_displacement(
      ctx, Eigen::VectorXd::Zero(sim.mesh().node_count()), sim.concentration(),
      mechanical_constraints(sim.mesh(), bcs, 0.0));
  const double scale = u_ref.cwiseAbs().maxCoeff();
  CHECK((sim.displacement() - u_ref).cwiseAbs().maxCoeff() < 1e-3 * scale);
}

TEST_CASE("multi-pass matches a finer single-pass run at the percent level") {
  ScenarioConfig single = coarse_single_fibre();
  single.mesh_scale = 5.0;
  single.stages.resize(1);
  single.stages[0].duration = 600.0;
  single.stages[0].dt = 3.0;  // tenth of the multi-pass step

  ScenarioConfig multi = single;
  multi.stages[0].dt = 30.0;
  multi.multi_pass = true;

  ScenarioRun run_single = run_scenario(single, false, true);
  ScenarioRun run_multi = run_scenario(multi, false, true);
  const double f_single = std::abs(run_single.summary.series.back().reaction_force);
  const double f_multi = std::abs(run_multi.summary.series.back().reaction_force);
  CHECK(std::abs(f_single - f_multi) / f_single < 0.01);
}

TEST_CASE("initial saturation equilibrates before the first step") {
  ScenarioConfig c = coarse_single_fibre();
  c.initial_concentration = 0.0745;
  c.stages.resize(1);
  c.stages[0].name = "dry";
  c.stages[0].moisture = {{"left", 0.0}};
  ScenarioRun run = run_scenario(c, false, true);
  // the clamped saturated state starts loaded and relaxes while drying
  const double f0 = std::abs(run.summary.series.front().reaction_force);
  const double f_end = std::abs(run.summary.series.back().reaction_force);
  CHECK(f0 > 0.5);
  CHECK(f_end < 0.25 * f0);
}

TEST_CASE("stage records capture per-stage end states") {
  ScenarioRun run = run_scenario(coarse_single_fibre(), false, true);
  REQUIRE(run.summary.stage_records.size() == 2);
  CHECK(run.summary.stage_records[0].name == "wet");
  CHECK(run.summary.stage_records[1].name == "dry");
  CHECK(run.summary.stage_records[0].t_end == doctest::Approx(2000.0));
  CHECK(run.summary.stage_records[1].t_end == doctest::Approx(7000.0));
  // damage frozen while drying
  const Eigen::VectorXd& phi_wet = run.summary.stage_records[0].phi;
  const Eigen::VectorXd& phi_dry = run.summary.stage_records[1].phi;
  CHECK((phi_dry - phi_wet).maxCoeff() >= 0.0);
}
