#include "hygrofrac/indicator.hpp"

#include <algorithm>
#include <cmath>

namespace hygrofrac {

IndicatorField solve_indicator(const Mesh& mesh, const std::vector<int>& interface_nodes,
                               double ell_d, const SolverOptions& opts) {
  if (!(ell_d > 0)) throw MaterialError("indicator length scale must be positive");

  IndicatorField field;
  field.ell = ell_d;
  if (interface_nodes.empty()) {
    field.values = Eigen::VectorXd::Zero(mesh.node_count());
    return field;
  }

  SparseLinearSystem system(mesh.node_count());
  const auto& rule = gauss_rule(mesh.quadrature_points_per_dir);
  const int nen = mesh.nodes_per_elem();
  const double ell2 = ell_d * ell_d;

  for (int e = 0; e < mesh.element_count(); ++e) {
    const Eigen::Matrix2Xd coords = mesh.element_coords(e);
    Eigen::MatrixXd Ke = Eigen::MatrixXd::Zero(nen, nen);
    for (const auto& qp : rule) {
      const ShapeData sd = element_shape(mesh.order, coords, qp);
      Ke.noalias() += (sd.N * sd.N.transpose() +
                       ell2 * sd.dN_dx.transpose() * sd.dN_dx) *
                      sd.jxw();
    }
    for (int a = 0; a < nen; ++a)
      for (int b = 0; b < nen; ++b) system.add(mesh.conn[e][a], mesh.conn[e][b], Ke(a, b));
  }

  for (int n : interface_nodes) system.set_dirichlet(n, 1.0);
  field.values = system.solve(opts);
  return field;
}

double interpolate_property(double d, double bulk, double interface_value, double n) {
  const double dc = std::clamp(d, 0.0, 1.0);
  const double h = std::pow(1.0 - dc, n);
  return h * (bulk - interface_value) + interface_value;
}

PropertyFields build_property_fields(const IndicatorField& indicator, const Mesh& mesh,
                                     const MaterialCatalog& catalog,
                                     const FibreLayout& layout) {
  if (indicator.values.size() != mesh.node_count()) {
    throw MaterialError("indicator field does not match the mesh");
  }
  catalog.validate();

  PropertyFields props;
  const int nqp = mesh.qp_per_elem();
  const int nel = mesh.element_count();
  props.Gc.resize(static_cast<std::size_t>(nel) * nqp);
  props.D.resize(props.Gc.size());
  props.alpha11.resize(props.Gc.size());
  props.alpha22.resize(props.Gc.size());
  props.theta_deg.resize(nel);
  props.is_fibre.resize(nel);

  const auto& rule = gauss_rule(mesh.quadrature_points_per_dir);
  const double n = catalog.interpolation_exponent;
  const int nen = mesh.nodes_per_elem();

  for (int e = 0; e < nel; ++e) {
    const int tag = mesh.region[e];
    const bool fibre = tag >= 0;
    if (fibre && static_cast<std::size_t>(tag) >= layout.region_count()) {
      throw MaterialError("element region tag " + std::to_string(tag) +
                          " has no entry in the fibre layout");
    }
    props.is_fibre[e] = fibre;
    props.theta_deg[e] =
        fibre ? layout.region_theta(static_cast<std::size_t>(tag)) : 0.0;
    const MaterialRegion& bulk = fibre ? catalog.fibre : catalog.matrix;

    Eigen::VectorXd d_nodes(nen);
    for (int a = 0; a < nen; ++a) d_nodes(a) = indicator.values[mesh.conn[e][a]];

    for (int q = 0; q < nqp; ++q) {
      Eigen::VectorXd N;
      Eigen::Matrix2Xd dN;
      shape_functions(mesh.order, rule[q].xi, rule[q].eta, N, dN);
      const double d = N.dot(d_nodes);
      const std::size_t k = static_cast<std::size_t>(e) * nqp + q;
      props.Gc[k] = interpolate_property(d, bulk.Gc, catalog.interface.Gc, n);
      props.D[k] = interpolate_property(d, bulk.D, catalog.interface.D, n);
      props.alpha11[k] =
          interpolate_property(d, bulk.hygro.alpha11, catalog.interface.alpha11, n);
      props.alpha22[k] =
          interpolate_property(d, bulk.hygro.alpha22, catalog.interface.alpha22, n);
    }
  }
  return props;
}

}  // namespace hygrofrac
