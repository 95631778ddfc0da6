#include "hygrofrac/constitutive.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hygrofrac {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

/// Voigt stress rotation T(theta): sigma_material = T * sigma_global.
Eigen::Matrix3d stress_rotation(double theta_rad) {
  const double c = std::cos(theta_rad), s = std::sin(theta_rad);
  Eigen::Matrix3d T;
  T << c * c, s * s, 2 * c * s,
       s * s, c * c, -2 * c * s,
       -c * s, c * s, c * c - s * s;
  return T;
}

/// Normal-strain stiffness block of the 3D law in the material frame, axes
/// (1, 2) in-plane and 3 out-of-plane.
Eigen::Matrix3d normal_stiffness_block(const ElasticParams& p) {
  if (p.isotropic) {
    const double lambda = p.lambda_split();
    const double mu = p.mu_split();
    Eigen::Matrix3d Cn = Eigen::Matrix3d::Constant(lambda);
    Cn.diagonal().array() += 2 * mu;
    return Cn;
  }
  Eigen::Matrix3d S;
  const double s11 = 1.0 / p.E11;
  const double s12 = -p.nu12 / p.E11;
  const double s22 = 1.0 / p.E22;
  const double s23 = -p.nu23 / p.E22;
  S << s11, s12, s12,
       s12, s22, s23,
       s12, s23, s22;
  return S.inverse();
}

Eigen::Matrix3d material_frame_stiffness(const ElasticParams& p) {
  if (p.isotropic) {
    const double E = p.E11, nu = p.nu12;
    const double f = E / ((1 + nu) * (1 - 2 * nu));
    Eigen::Matrix3d C;
    C << f * (1 - nu), f * nu, 0,
         f * nu, f * (1 - nu), 0,
         0, 0, 0.5 * f * (1 - 2 * nu);
    return C;
  }

  const Eigen::Matrix3d Cn = normal_stiffness_block(p);

  // in-plane shear modulus is not an independent input here; Saint-Venant
  // estimate, which recovers E/(2(1+nu)) for isotropic inputs
  const double nu21 = p.nu12 * p.E22 / p.E11;
  const double G12 = 1.0 / ((1 + p.nu12) / p.E11 + (1 + nu21) / p.E22);

  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  C(0, 0) = Cn(0, 0);
  C(0, 1) = C(1, 0) = Cn(0, 1);
  C(1, 1) = Cn(1, 1);
  C(2, 2) = G12;
  return C;
}

}  // namespace

Eigen::Matrix3d plane_strain_stiffness(const ElasticParams& p) {
  const Eigen::Matrix3d Cm = material_frame_stiffness(p);
  const Eigen::Matrix3d Tinv = stress_rotation(-p.theta_deg * kDegToRad);
  const Eigen::Matrix3d C = Tinv * Cm * Tinv.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (C + C.transpose()));
  if (es.eigenvalues().minCoeff() <= 0) {
    throw MaterialError("elastic parameters give a non-positive-definite stiffness");
  }
  return C;
}

Eigen::Vector2d plane_strain_swelling_coupling(const ElasticParams& p) {
  if (p.isotropic) return Eigen::Vector2d::Constant(p.nu12);
  const Eigen::Matrix3d Cn = normal_stiffness_block(p);
  const Eigen::Matrix2d Cps = Cn.topLeftCorner<2, 2>();
  const Eigen::Vector2d c3(Cn(0, 2), Cn(1, 2));
  return Cps.inverse() * c3;
}

Eigen::Vector3d hygroscopic_strain(double C, const HygroParams& h, double theta_deg) {
  const double dC = C - h.C0;
  const double t = theta_deg * kDegToRad;
  const double c = std::cos(t), s = std::sin(t);
  const double e1 = h.alpha11 * dC, e2 = h.alpha22 * dC;
  Eigen::Vector3d eps;
  eps << c * c * e1 + s * s * e2,
         s * s * e1 + c * c * e2,
         2 * c * s * (e1 - e2);
  return eps;
}

EnergySplit split_energy(const Eigen::Vector3d& eps_e, const ElasticParams& p) {
  const double lambda = p.lambda_split();
  const double mu = p.mu_split();
  const double tr = eps_e(0) + eps_e(1);  // ezz = 0 under plane strain
  const double tr_pos = std::max(tr, 0.0);
  const double tr_neg = std::min(tr, 0.0);
  const double m = tr / 3.0;
  const double exy = 0.5 * eps_e(2);
  const double dev2 = (eps_e(0) - m) * (eps_e(0) - m) + (eps_e(1) - m) * (eps_e(1) - m) +
                      m * m + 2 * exy * exy;

  EnergySplit split;
  if (p.isotropic) {
    split.psi_plus = 0.5 * lambda * tr_pos * tr_pos + mu * dev2;
    split.psi_minus = 0.5 * lambda * tr_neg * tr_neg;
  } else {
    const double psi0 = strain_energy(eps_e, plane_strain_stiffness(p));
    split.psi_minus = 0.5 * lambda * tr_neg * tr_neg;
    split.psi_plus = std::max(psi0 - split.psi_minus, 0.0);
  }
  return split;
}

double strain_energy(const Eigen::Vector3d& eps_e, const Eigen::Matrix3d& C) {
  return 0.5 * eps_e.dot(C * eps_e);
}

double degradation(double phi, double kappa) {
  return (1.0 - phi) * (1.0 - phi) + kappa;
}

Eigen::Vector3d degraded_stress(const Eigen::Vector3d& sigma0, double phi, double kappa) {
  return degradation(phi, kappa) * sigma0;
}

double update_history(double H_old, double psi_plus) {
  return std::max(H_old, psi_plus);
}

}  // namespace hygrofrac
