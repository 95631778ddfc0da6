#include "hygrofrac/diffusion.hpp"

#include <map>

namespace hygrofrac {

std::vector<std::pair<int, double>> MoistureBC::active_constraints(const Mesh& mesh,
                                                                   double t) const {
  std::map<int, double> values;
  for (const auto& entry : dirichlet) {
    if (!(t > entry.t_start && t <= entry.t_end)) continue;
    for (int n : mesh.node_set(entry.node_set)) {
      auto [it, inserted] = values.emplace(n, entry.value);
      if (!inserted && it->second != entry.value) {
        throw SolverError("conflicting moisture Dirichlet values at node " + std::to_string(n));
      }
    }
  }
  return {values.begin(), values.end()};
}

SparseLinearSystem assemble_diffusion(const Mesh& mesh, const std::vector<double>& D_qp,
                                      const ConcentrationField& C_old, double dt) {
  if (!(dt > 0)) throw SolverError("diffusion step requires dt > 0");

  SparseLinearSystem system(mesh.node_count());
  const auto& rule = gauss_rule(mesh.quadrature_points_per_dir);
  const int nen = mesh.nodes_per_elem();
  const int nqp = mesh.qp_per_elem();

  for (int e = 0; e < mesh.element_count(); ++e) {
    const Eigen::Matrix2Xd coords = mesh.element_coords(e);
    Eigen::VectorXd c_old(nen);
    for (int a = 0; a < nen; ++a) c_old(a) = C_old.C[mesh.conn[e][a]];

    Eigen::MatrixXd Ae = Eigen::MatrixXd::Zero(nen, nen);
    Eigen::VectorXd be = Eigen::VectorXd::Zero(nen);
    for (int q = 0; q < nqp; ++q) {
      const ShapeData sd = element_shape(mesh.order, coords, rule[q]);
      const double D = D_qp[static_cast<std::size_t>(e) * nqp + q];
      if (!(D > 0)) throw SolverError("diffusivity must be positive everywhere");
      const Eigen::MatrixXd Me = sd.N * sd.N.transpose() * (sd.jxw() / dt);
      Ae.noalias() += Me + D * sd.dN_dx.transpose() * sd.dN_dx * sd.jxw();
      be.noalias() += Me * c_old;
    }
    for (int a = 0; a < nen; ++a) {
      const int ga = mesh.conn[e][a];
      system.add_rhs(ga, be(a));
      for (int b = 0; b < nen; ++b) system.add(ga, mesh.conn[e][b], Ae(a, b));
    }
  }
  return system;
}

namespace {

void add_flux_contributions(const Mesh& mesh, const MoistureBC& bc,
                            SparseLinearSystem& system) {
  if (bc.flux.empty()) return;
  const bool q8 = mesh.order == ElementOrder::Serendipity8;
  const int edges[4][3] = {{0, 1, 4}, {1, 2, 5}, {2, 3, 6}, {3, 0, 7}};

  for (const auto& flux : bc.flux) {
    std::vector<char> in_set(mesh.node_count(), 0);
    for (int n : mesh.node_set(flux.node_set)) in_set[n] = 1;

    for (int e = 0; e < mesh.element_count(); ++e) {
      for (const auto& edge : edges) {
        const int n0 = mesh.conn[e][edge[0]];
        const int n1 = mesh.conn[e][edge[1]];
        const int nm = q8 ? mesh.conn[e][edge[2]] : -1;
        if (!in_set[n0] || !in_set[n1] || (q8 && !in_set[nm])) continue;
        const double dx = mesh.x[n1] - mesh.x[n0];
        const double dy = mesh.y[n1] - mesh.y[n0];
        const double len = std::sqrt(dx * dx + dy * dy);
        if (q8) {
          system.add_rhs(n0, -flux.q * len / 6.0);
          system.add_rhs(n1, -flux.q * len / 6.0);
          system.add_rhs(nm, -flux.q * 2.0 * len / 3.0);
        } else {
          system.add_rhs(n0, -flux.q * 0.5 * len);
          system.add_rhs(n1, -flux.q * 0.5 * len);
        }
      }
    }
  }
}

}  // namespace

ConcentrationField step_diffusion(const Mesh& mesh, const std::vector<double>& D_qp,
                                  const ConcentrationField& C_old, const MoistureBC& bc,
                                  double dt, const SolverOptions& opts) {
  const double t_new = C_old.time + dt;
  SparseLinearSystem system = assemble_diffusion(mesh, D_qp, C_old, dt);
  add_flux_contributions(mesh, bc, system);
  apply_dirichlet(system, bc.active_constraints(mesh, t_new));

  ConcentrationField out;
  out.C = system.solve(opts);
  out.time = t_new;
  return out;
}

double total_moisture(const ConcentrationField& state, const Mesh& mesh) {
  const auto& rule = gauss_rule(mesh.quadrature_points_per_dir);
  const int nen = mesh.nodes_per_elem();
  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const Eigen::Matrix2Xd coords = mesh.element_coords(e);
    Eigen::VectorXd c(nen);
    for (int a = 0; a < nen; ++a) c(a) = state.C[mesh.conn[e][a]];
    for (const auto& qp : rule) {
      const ShapeData sd = element_shape(mesh.order, coords, qp);
      total += sd.N.dot(c) * sd.jxw();
    }
  }
  return total;
}

}  // namespace hygrofrac
