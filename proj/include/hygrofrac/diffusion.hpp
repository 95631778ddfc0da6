#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hygrofrac/linear_system.hpp"
#include "hygrofrac/mesh.hpp"

namespace hygrofrac {

struct ConcentrationField {
  Eigen::VectorXd C;  // nodal mass fraction
  double time = 0.0;  // s
};

struct MoistureDirichlet {
  std::string node_set;
  double value = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;  // active for t in (t_start, t_end]
};

struct MoistureFlux {
  std::string node_set;  // boundary segment: edges whose nodes all lie in the set
  double q = 0.0;        // outward flux J.n (fraction * mm/s); positive = outflow
};

struct MoistureBC {
  std::vector<MoistureDirichlet> dirichlet;
  std::vector<MoistureFlux> flux;

  /// Active Dirichlet (node, value) pairs at time t; conflicting entries on
  /// the same node are an error.
  std::vector<std::pair<int, double>> active_constraints(const Mesh& mesh, double t) const;
};

/// Backward-Euler transport system (M/dt + K) C_new = M/dt C_old + f with
/// conservative weighting: M = int(N N^T) dV, K = int(D grad(N).grad(N)) dV.
SparseLinearSystem assemble_diffusion(const Mesh& mesh, const std::vector<double>& D_qp,
                                      const ConcentrationField& C_old, double dt);

/// One implicit step to C_old.time + dt; Dirichlet values are evaluated at
/// the new time.
ConcentrationField step_diffusion(const Mesh& mesh, const std::vector<double>& D_qp,
                                  const ConcentrationField& C_old, const MoistureBC& bc,
                                  double dt, const SolverOptions& opts = {});

/// Quadrature-integrated total moisture content, fraction * mm^2.
double total_moisture(const ConcentrationField& state, const Mesh& mesh);

}  // namespace hygrofrac
