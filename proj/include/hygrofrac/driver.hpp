#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "hygrofrac/diffusion.hpp"
#include "hygrofrac/indicator.hpp"
#include "hygrofrac/mechanics.hpp"
#include "hygrofrac/mesh.hpp"

namespace hygrofrac {

class StepError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct StageMoistureBC {
  std::string node_set;
  double value = 0.0;
};

struct Stage {
  std::string name;
  double duration = 0.0;  // s
  double dt = 0.0;        // s
  std::vector<StageMoistureBC> moisture;
  std::vector<MechanicalBCEntry> mechanical;
  int output_every = 0;  // snapshot cadence in steps; 0 disables intermediate snapshots
};

struct StageSchedule {
  std::vector<Stage> stages;
};

struct PhysicsParams {
  double ell = 0.0;       // phase-field length scale (mm)
  double ell_d = 0.0;     // indicator length scale; <= 0 means equal to ell
  double kappa = 1e-7;
  double C0 = 0.0;        // reference concentration
  double C_initial = 0.0; // initial concentration
  double thickness = 1.0; // out-of-plane thickness (mm), forces reported per thickness
  bool out_of_plane_swelling = true;  // keep the e33 eigenstrain under plane strain

  double indicator_length() const { return ell_d > 0 ? ell_d : ell; }
};

struct SimulationOptions {
  bool multi_pass = false;
  double stagger_tolerance = 1e-4;
  int max_passes = 50;
  int max_step_retries = 6;
  bool quiet = false;
  SolverOptions solver;
};

/// What the time series reports: where the reaction force is summed, which
/// free edge measures elongation, where the sampled concentration lives.
struct ReportSpec {
  std::string reaction_set = "bottom";
  int reaction_component = 1;
  std::string elongation_set = "left";
  double elongation_outward_x = -1.0;
  double elongation_outward_y = 0.0;
  double center_x = 0.0;
  double center_y = 0.0;
};

struct TimeSeriesRow {
  double time = 0.0;
  double reaction_force = 0.0;
  double C_center = 0.0;
  double total_moisture = 0.0;
  double elongation = 0.0;
  double max_damage = 0.0;
  std::string stage;
};

struct StageRecord {
  std::string name;
  double t_end = 0.0;
  Eigen::VectorXd phi;
  Eigen::VectorXd C;
  double reaction_force = 0.0;
  double elongation = 0.0;
};

struct RunSummary {
  bool completed = false;
  double final_time = 0.0;
  double final_elongation = 0.0;
  double peak_force_abs = 0.0;
  double peak_damage = 0.0;
  double wall_seconds = 0.0;
  long steps_accepted = 0;
  long steps_rejected = 0;
  long irreversibility_violations = 0;
  double max_phi_decrease = 0.0;  // largest per-node damage drop seen between steps
  std::vector<TimeSeriesRow> series;
  std::vector<StageRecord> stage_records;
};

class Simulation;

/// Called whenever a field snapshot is due (t = 0, cadence steps, stage ends).
using SnapshotHook = std::function<void(const Simulation&, double time, const std::string& stage,
                                        int sequence)>;

/// Weakly coupled diffusion -> displacement -> damage driver. One pass per
/// increment by default; opt-in multi-pass iterates the mechanical pair until
/// the damage update stalls.
class Simulation {
public:
  Simulation(Mesh mesh, MaterialCatalog catalog, FibreLayout layout, PhysicsParams physics,
             SimulationOptions options = {});

  /// Indicator pre-solve plus property interpolation; called by run() when
  /// not invoked explicitly.
  void initialize();

  RunSummary run(const StageSchedule& schedule, const ReportSpec& report,
                 const SnapshotHook& snapshot = {});

  const Mesh& mesh() const { return mesh_; }
  const MaterialCatalog& catalog() const { return catalog_; }
  const FibreLayout& layout() const { return layout_; }
  const PhysicsParams& physics() const { return physics_; }
  const IndicatorField& indicator() const { return indicator_; }
  const PropertyFields& properties() const { return props_; }
  const Eigen::VectorXd& displacement() const { return u_; }
  const Eigen::VectorXd& damage() const { return phi_; }
  const Eigen::VectorXd& concentration() const { return C_; }
  const std::vector<double>& history() const { return H_; }
  double time() const { return time_; }

  /// Stress and driving-energy state of the current fields.
  QPState qp_state() const;

private:
  struct StepOutcome {
    double reaction_force = 0.0;
  };

  StepOutcome staggered_step(const Stage& stage, const MoistureBC& bc, double t_stage_start,
                             double dt, const ReportSpec& report);
  void record_row(const ReportSpec& report, const std::string& stage, double reaction,
                  RunSummary& summary) const;
  double measure_elongation(const ReportSpec& report) const;

  Mesh mesh_;
  MaterialCatalog catalog_;
  FibreLayout layout_;
  PhysicsParams physics_;
  SimulationOptions options_;

  bool initialized_ = false;
  IndicatorField indicator_;
  PropertyFields props_;
  MechanicsContext ctx_;

  Eigen::VectorXd u_, phi_, C_;
  std::vector<double> H_;
  double time_ = 0.0;
  long irreversibility_violations_ = 0;
  double max_phi_decrease_ = 0.0;
};

}  // namespace hygrofrac
