#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hygrofrac/linear_system.hpp"
#include "hygrofrac/materials.hpp"
#include "hygrofrac/mesh.hpp"

namespace hygrofrac {

/// Diffuse interface indicator field: 1 on the fibre-matrix seam, decaying
/// into the bulk with length scale ell_d.
struct IndicatorField {
  Eigen::VectorXd values;  // nodal
  double ell = 0.0;
};

/// Weak solution of d - ell^2 lap(d) = 0 with d = 1 on interface_nodes and
/// natural (zero-flux) conditions elsewhere. An empty interface set yields
/// the all-zero field.
IndicatorField solve_indicator(const Mesh& mesh, const std::vector<int>& interface_nodes,
                               double ell_d, const SolverOptions& opts = {});

/// h(d) * (bulk - interface) + interface with h(d) = (1-d)^n; d is clamped
/// to [0, 1].
double interpolate_property(double d, double bulk, double interface_value, double n);

/// Per-quadrature-point interpolated material data plus per-element frame.
struct PropertyFields {
  // indexed [e * qp_per_elem + q]
  std::vector<double> Gc;
  std::vector<double> D;
  std::vector<double> alpha11;  // material frame
  std::vector<double> alpha22;
  // per element
  std::vector<double> theta_deg;
  std::vector<char> is_fibre;
};

/// Bulk endpoints are chosen by each element's region tag, then pulled toward
/// the interface values by the local indicator.
PropertyFields build_property_fields(const IndicatorField& indicator, const Mesh& mesh,
                                     const MaterialCatalog& catalog,
                                     const FibreLayout& layout);

}  // namespace hygrofrac
