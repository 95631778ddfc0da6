#include "hygrofrac/element.hpp"

#include <cmath>
#include <stdexcept>

namespace hygrofrac {

const std::vector<QuadraturePoint>& gauss_rule(int points_per_dir) {
  static const std::vector<QuadraturePoint> rule1 = {{0.0, 0.0, 4.0}};
  static const std::vector<QuadraturePoint> rule2 = [] {
    const double g = 1.0 / std::sqrt(3.0);
    std::vector<QuadraturePoint> r;
    for (double eta : {-g, g})
      for (double xi : {-g, g}) r.push_back({xi, eta, 1.0});
    return r;
  }();
  static const std::vector<QuadraturePoint> rule3 = [] {
    const double g = std::sqrt(0.6);
    const double w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double p[3] = {-g, 0.0, g};
    std::vector<QuadraturePoint> r;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) r.push_back({p[i], p[j], w[i] * w[j]});
    return r;
  }();
  switch (points_per_dir) {
    case 1: return rule1;
    case 2: return rule2;
    case 3: return rule3;
    default: throw std::invalid_argument("gauss_rule: points_per_dir must be 1..3");
  }
}

void shape_functions(ElementOrder order, double xi, double eta,
                     Eigen::VectorXd& N, Eigen::Matrix2Xd& dN_dxi) {
  if (order == ElementOrder::Bilinear4) {
    N.resize(4);
    dN_dxi.resize(2, 4);
    const double xs[4] = {-1, 1, 1, -1};
    const double es[4] = {-1, -1, 1, 1};
    for (int i = 0; i < 4; ++i) {
      N(i) = 0.25 * (1 + xs[i] * xi) * (1 + es[i] * eta);
      dN_dxi(0, i) = 0.25 * xs[i] * (1 + es[i] * eta);
      dN_dxi(1, i) = 0.25 * es[i] * (1 + xs[i] * xi);
    }
    return;
  }

  N.resize(8);
  dN_dxi.resize(2, 8);
  const double xs[4] = {-1, 1, 1, -1};
  const double es[4] = {-1, -1, 1, 1};
  for (int i = 0; i < 4; ++i) {
    const double xx = xs[i] * xi, ee = es[i] * eta;
    N(i) = 0.25 * (1 + xx) * (1 + ee) * (xx + ee - 1);
    dN_dxi(0, i) = 0.25 * xs[i] * (1 + ee) * (2 * xx + ee);
    dN_dxi(1, i) = 0.25 * es[i] * (1 + xx) * (xx + 2 * ee);
  }
  // mid-edge: 4 bottom (0,-1), 5 right (1,0), 6 top (0,1), 7 left (-1,0)
  N(4) = 0.5 * (1 - xi * xi) * (1 - eta);
  dN_dxi(0, 4) = -xi * (1 - eta);
  dN_dxi(1, 4) = -0.5 * (1 - xi * xi);

  N(5) = 0.5 * (1 + xi) * (1 - eta * eta);
  dN_dxi(0, 5) = 0.5 * (1 - eta * eta);
  dN_dxi(1, 5) = -eta * (1 + xi);

  N(6) = 0.5 * (1 - xi * xi) * (1 + eta);
  dN_dxi(0, 6) = -xi * (1 + eta);
  dN_dxi(1, 6) = 0.5 * (1 - xi * xi);

  N(7) = 0.5 * (1 - xi) * (1 - eta * eta);
  dN_dxi(0, 7) = -0.5 * (1 - eta * eta);
  dN_dxi(1, 7) = -eta * (1 - xi);
}

ShapeData element_shape(ElementOrder order, const Eigen::Matrix2Xd& coords,
                        const QuadraturePoint& qp) {
  ShapeData sd;
  Eigen::Matrix2Xd dN_dxi;
  shape_functions(order, qp.xi, qp.eta, sd.N, dN_dxi);

  const Eigen::Matrix2d J = coords * dN_dxi.transpose();  // dx/dxi
  sd.detJ = J.determinant();
  if (!(sd.detJ > 0.0)) {
    throw std::runtime_error("element_shape: non-positive Jacobian determinant");
  }
  sd.dN_dx = J.inverse().transpose() * dN_dxi;
  sd.weight = qp.w;
  return sd;
}

Eigen::MatrixXd strain_displacement(const ShapeData& sd) {
  const int nen = static_cast<int>(sd.N.size());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3, 2 * nen);
  for (int i = 0; i < nen; ++i) {
    B(0, 2 * i) = sd.dN_dx(0, i);
    B(1, 2 * i + 1) = sd.dN_dx(1, i);
    B(2, 2 * i) = sd.dN_dx(1, i);
    B(2, 2 * i + 1) = sd.dN_dx(0, i);
  }
  return B;
}

}  // namespace hygrofrac
