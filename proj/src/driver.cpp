#include "hygrofrac/driver.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

namespace hygrofrac {

Simulation::Simulation(Mesh mesh, MaterialCatalog catalog, FibreLayout layout,
                       PhysicsParams physics, SimulationOptions options)
    : mesh_(std::move(mesh)),
      catalog_(std::move(catalog)),
      layout_(std::move(layout)),
      physics_(physics),
      options_(options) {
  if (!(physics_.ell > 0)) throw StepError("phase-field length scale must be positive");
  catalog_.validate();
}

void Simulation::initialize() {
  if (initialized_) return;

  const double ell_d = physics_.indicator_length();
  if (ell_d < 2 * mesh_.h && !options_.quiet) {
    std::cerr << "warning: indicator length scale " << ell_d
              << " mm is under-resolved by the mesh (h = " << mesh_.h << " mm)\n";
  }
  indicator_ = solve_indicator(mesh_, mesh_.node_set("interface"), ell_d, options_.solver);
  props_ = build_property_fields(indicator_, mesh_, catalog_, layout_);
  ctx_ = MechanicsContext::build(mesh_, catalog_, props_, physics_.kappa, physics_.C0,
                                 physics_.out_of_plane_swelling);

  const int nn = mesh_.node_count();
  u_ = Eigen::VectorXd::Zero(2 * nn);
  phi_ = Eigen::VectorXd::Zero(nn);
  C_ = Eigen::VectorXd::Constant(nn, physics_.C_initial);
  H_.assign(static_cast<std::size_t>(mesh_.element_count()) * mesh_.qp_per_elem(), 0.0);
  time_ = 0.0;
  irreversibility_violations_ = 0;
  initialized_ = true;
}

QPState Simulation::qp_state() const { return compute_qp_state(ctx_, u_, C_, phi_); }

double Simulation::measure_elongation(const ReportSpec& report) const {
  if (!mesh_.has_node_set(report.elongation_set)) return 0.0;
  double best = 0.0;
  for (int n : mesh_.node_set(report.elongation_set)) {
    best = std::max(best, report.elongation_outward_x * u_[2 * n] +
                              report.elongation_outward_y * u_[2 * n + 1]);
  }
  return best;
}

void Simulation::record_row(const ReportSpec& report, const std::string& stage, double reaction,
                            RunSummary& summary) const {
  TimeSeriesRow row;
  row.time = time_;
  row.reaction_force = reaction;
  row.C_center = C_[mesh_.nearest_node(report.center_x, report.center_y)];
  row.total_moisture = total_moisture(ConcentrationField{C_, time_}, mesh_);
  row.elongation = measure_elongation(report);
  row.max_damage = phi_.size() > 0 ? phi_.maxCoeff() : 0.0;
  row.stage = stage;
  summary.series.push_back(row);
  summary.peak_force_abs = std::max(summary.peak_force_abs, std::abs(reaction));
  summary.peak_damage = std::max(summary.peak_damage, row.max_damage);
}

Simulation::StepOutcome Simulation::staggered_step(const Stage& stage, const MoistureBC& bc,
                                                   double t_stage_start, double dt,
                                                   const ReportSpec& report) {
  const double t_new = time_ + dt;

  // (1) moisture transport to t + dt
  ConcentrationField C_new =
      step_diffusion(mesh_, props_.D, ConcentrationField{C_, time_}, bc, dt, options_.solver);

  // (2)-(4) displacement, driving energy, damage; iterated in multi-pass mode
  const auto constraints =
      mechanical_constraints(mesh_, stage.mechanical, t_new - t_stage_start);
  Eigen::VectorXd phi_used = phi_;
  Eigen::VectorXd u_new, phi_new;
  std::vector<double> H_trial;
  int pass = 0;
  while (true) {
    u_new = solve_displacement(ctx_, phi_used, C_new.C, constraints, options_.solver);
    const QPState qp = compute_qp_state(ctx_, u_new, C_new.C, phi_used);
    H_trial = H_;
    for (std::size_t k = 0; k < H_trial.size(); ++k) {
      H_trial[k] = update_history(H_trial[k], qp.psi_plus[k]);
    }
    phi_new = solve_phase_field(mesh_, H_trial, props_.Gc, physics_.ell, options_.solver);
    ++pass;
    if (!options_.multi_pass) break;
    if ((phi_new - phi_used).cwiseAbs().maxCoeff() < options_.stagger_tolerance) break;
    if (pass >= options_.max_passes) {
      throw StepError("staggered pass did not converge within " +
                      std::to_string(options_.max_passes) + " passes");
    }
    phi_used = phi_new;
  }

  // reaction measured in the converged equilibrium (the damage that entered
  // the displacement solve)
  StepOutcome outcome;
  outcome.reaction_force = reaction_force(ctx_, phi_used, C_new.C, u_new,
                                          mesh_.node_set(report.reaction_set),
                                          report.reaction_component) /
                           physics_.thickness;

  // commit; irreversibility is enforced pointwise on the accepted state. The
  // raw solve can undershoot the previous step by ~1e-7 when ell < h (the
  // reaction term breaks the discrete M-matrix property); the largest raw
  // drop is kept as a diagnostic.
  for (int n = 0; n < phi_.size(); ++n) {
    const double drop = phi_[n] - phi_new[n];
    max_phi_decrease_ = std::max(max_phi_decrease_, drop);
    if (drop > 0) phi_new[n] = phi_[n];
    if (phi_new[n] < phi_[n] - 1e-8) ++irreversibility_violations_;
  }
  C_ = std::move(C_new.C);
  u_ = std::move(u_new);
  phi_ = std::move(phi_new);
  H_ = std::move(H_trial);
  time_ = t_new;
  return outcome;
}

RunSummary Simulation::run(const StageSchedule& schedule, const ReportSpec& report,
                           const SnapshotHook& snapshot) {
  const auto wall_start = std::chrono::steady_clock::now();
  initialize();

  RunSummary summary;
  int snapshot_seq = 0;

  // equilibrate the initial state (nontrivial when C_initial != 0)
  {
    std::vector<std::pair<int, double>> constraints;
    if (!schedule.stages.empty()) {
      constraints = mechanical_constraints(mesh_, schedule.stages.front().mechanical, 0.0);
    }
    double reaction = 0.0;
    if (!constraints.empty()) {
      u_ = solve_displacement(ctx_, phi_, C_, constraints, options_.solver);
      reaction = reaction_force(ctx_, phi_, C_, u_, mesh_.node_set(report.reaction_set),
                                report.reaction_component) /
                 physics_.thickness;
      const QPState qp = compute_qp_state(ctx_, u_, C_, phi_);
      for (std::size_t k = 0; k < H_.size(); ++k) H_[k] = update_history(H_[k], qp.psi_plus[k]);
      phi_ = solve_phase_field(mesh_, H_, props_.Gc, physics_.ell, options_.solver);
    }
    const std::string stage0 =
        schedule.stages.empty() ? std::string("initial") : schedule.stages.front().name;
    record_row(report, stage0, reaction, summary);
    if (snapshot) snapshot(*this, time_, stage0, snapshot_seq++);
  }

  for (const Stage& stage : schedule.stages) {
    if (!(stage.duration > 0)) throw StepError("stage '" + stage.name + "' needs duration > 0");
    if (!(stage.dt > 0)) throw StepError("stage '" + stage.name + "' needs dt > 0");

    MoistureBC bc;
    const double t_start = time_;
    const double t_end = t_start + stage.duration;
    for (const auto& m : stage.moisture) {
      bc.dirichlet.push_back({m.node_set, m.value, t_start, t_end});
    }

    long step_in_stage = 0;
    while (time_ < t_end - 1e-9 * stage.duration) {
      double dt_try = std::min(stage.dt, t_end - time_);
      int retries = 0;
      while (true) {
        try {
          const StepOutcome outcome = staggered_step(stage, bc, t_start, dt_try, report);
          ++summary.steps_accepted;
          ++step_in_stage;
          record_row(report, stage.name, outcome.reaction_force, summary);
          break;
        } catch (const SolverError& err) {
          ++summary.steps_rejected;
          if (++retries > options_.max_step_retries) {
            throw StepError("stage '" + stage.name + "' aborted at t = " +
                            std::to_string(time_) + " s after " + std::to_string(retries) +
                            " retries: " + err.what());
          }
          dt_try *= 0.5;
        }
      }
      const bool stage_done = time_ >= t_end - 1e-9 * stage.duration;
      if (snapshot && ((stage.output_every > 0 && step_in_stage % stage.output_every == 0) ||
                       stage_done)) {
        snapshot(*this, time_, stage.name, snapshot_seq++);
      }
    }

    StageRecord rec;
    rec.name = stage.name;
    rec.t_end = time_;
    rec.phi = phi_;
    rec.C = C_;
    rec.reaction_force = summary.series.back().reaction_force;
    rec.elongation = summary.series.back().elongation;
    summary.stage_records.push_back(std::move(rec));
  }

  summary.completed = true;
  summary.final_time = time_;
  summary.final_elongation = measure_elongation(report);
  summary.irreversibility_violations = irreversibility_violations_;
  summary.max_phi_decrease = max_phi_decrease_;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return summary;
}

}  // namespace hygrofrac
