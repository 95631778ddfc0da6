#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hygrofrac/constitutive.hpp"
#include "hygrofrac/indicator.hpp"
#include "hygrofrac/linear_system.hpp"
#include "hygrofrac/mesh.hpp"

namespace hygrofrac {

/// Prescribed displacement component on a node set, fixed or ramped in time.
struct MechanicalBCEntry {
  std::string node_set;
  int component = 0;  // 0 = x, 1 = y
  double value = 0.0;
  double rate = 0.0;  // mm/s, applied relative to the stage start
  bool ramp = false;

  double value_at(double t_in_stage) const { return ramp ? value + rate * t_in_stage : value; }
};

std::vector<std::pair<int, double>> mechanical_constraints(
    const Mesh& mesh, const std::vector<MechanicalBCEntry>& entries, double t_in_stage);

/// Bound material data for the mechanical sub-problems: per-element stiffness
/// and split parameters, per-quadrature-point interpolated swelling data.
///
/// With out_of_plane_swelling the eigenstrain keeps its through-thickness
/// component under the plane-strain condensation (isotropic swelling then
/// expands in-plane by (1 + nu) alpha dC); without it only the in-plane
/// components act.
struct MechanicsContext {
  const Mesh* mesh = nullptr;
  const PropertyFields* props = nullptr;
  double kappa = 1e-7;
  double C0 = 0.0;  // reference concentration for the eigenstrain

  std::vector<Eigen::Matrix3d> C_el;        // per element, global frame
  std::vector<ElasticParams> params_el;     // per element, for the energy split
  std::vector<Eigen::Vector2d> zz_coupling; // per element, material frame

  static MechanicsContext build(const Mesh& mesh, const MaterialCatalog& catalog,
                                const PropertyFields& props, double kappa, double C0,
                                bool out_of_plane_swelling = true);
};

/// Degraded linear-elastic system K u = F with the hygroscopic eigenstrain
/// load on the right-hand side.
SparseLinearSystem assemble_displacement(const MechanicsContext& ctx,
                                         const Eigen::VectorXd& phi,
                                         const Eigen::VectorXd& C_nodal);

/// Unconstrained internal force vector for the current state.
Eigen::VectorXd internal_force(const MechanicsContext& ctx, const Eigen::VectorXd& phi,
                               const Eigen::VectorXd& C_nodal, const Eigen::VectorXd& u);

/// Newton solve of the displacement sub-problem (linear for fixed phi and C;
/// the loop verifies the residual contract).
Eigen::VectorXd solve_displacement(const MechanicsContext& ctx, const Eigen::VectorXd& phi,
                                   const Eigen::VectorXd& C_nodal,
                                   const std::vector<std::pair<int, double>>& constraints,
                                   const SolverOptions& opts = {});

/// Per-quadrature-point mechanical state derived from a solved displacement.
struct QPState {
  std::vector<double> psi_plus;             // damage driving energy
  std::vector<Eigen::Vector3d> stress;      // degraded Cauchy stress
};

QPState compute_qp_state(const MechanicsContext& ctx, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& C_nodal, const Eigen::VectorXd& phi);

/// Sum of internal-force components over a constrained node set: the force
/// the supports exert on the body, N per unit thickness.
double reaction_force(const MechanicsContext& ctx, const Eigen::VectorXd& phi,
                      const Eigen::VectorXd& C_nodal, const Eigen::VectorXd& u,
                      const std::vector<int>& node_set, int component);

/// AT2 phase-field system: linear SPD in phi thanks to the history field.
SparseLinearSystem assemble_phase_field(const Mesh& mesh, const std::vector<double>& H_qp,
                                        const std::vector<double>& Gc_qp, double ell);

Eigen::VectorXd solve_phase_field(const Mesh& mesh, const std::vector<double>& H_qp,
                                  const std::vector<double>& Gc_qp, double ell,
                                  const SolverOptions& opts = {});

/// Integrated AT2 crack surface density (diagnostic).
double crack_density_integral(const Mesh& mesh, const Eigen::VectorXd& phi, double ell);

}  // namespace hygrofrac
