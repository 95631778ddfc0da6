#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace hygrofrac {

enum class ElementOrder { Bilinear4, Serendipity8 };

inline int nodes_per_element(ElementOrder order) {
  return order == ElementOrder::Bilinear4 ? 4 : 8;
}

struct QuadraturePoint {
  double xi, eta, w;
};

/// Tensor-product Gauss rule with n points per direction (n = 1..3).
const std::vector<QuadraturePoint>& gauss_rule(int points_per_dir);

/// Shape functions and parent-space derivatives at (xi, eta).
/// Node ordering: corners CCW from (-1,-1), then mid-edge nodes
/// bottom, right, top, left (matches VTK quad / quadratic-quad ordering).
void shape_functions(ElementOrder order, double xi, double eta,
                     Eigen::VectorXd& N, Eigen::Matrix2Xd& dN_dxi);

/// Shape data mapped to physical coordinates at one quadrature point.
struct ShapeData {
  Eigen::VectorXd N;        // nen
  Eigen::Matrix2Xd dN_dx;   // 2 x nen, physical gradients
  double detJ = 0.0;
  double weight = 0.0;      // quadrature weight (parent space)

  double jxw() const { return detJ * weight; }
};

/// Evaluate shape data for an element given its node coordinates (2 x nen).
ShapeData element_shape(ElementOrder order, const Eigen::Matrix2Xd& coords,
                        const QuadraturePoint& qp);

/// Strain-displacement matrix (3 x 2*nen), Voigt [exx, eyy, gxy].
Eigen::MatrixXd strain_displacement(const ShapeData& sd);

}  // namespace hygrofrac
