#pragma once

#include <Eigen/Dense>

#include "hygrofrac/materials.hpp"

namespace hygrofrac {

// Voigt conventions throughout: strain [exx, eyy, gxy] with engineering
// shear, stress [sxx, syy, sxy].

/// 3x3 plane-strain stiffness in the global frame (rotated by theta).
/// Throws MaterialError when the parameters give a non-SPD matrix.
Eigen::Matrix3d plane_strain_stiffness(const ElasticParams& p);

/// Stress-free hygroscopic strain alpha*(C - C0), diagonal in the material
/// frame and rotated to the global frame.
Eigen::Vector3d hygroscopic_strain(double C, const HygroParams& h, double theta_deg);

/// Plane-strain condensation factors (a1, a2) for the out-of-plane swelling
/// component: an out-of-plane eigenstrain e33 acts like the additional
/// in-plane eigenstrain (a1, a2) * e33. Equals (nu, nu) for isotropic
/// materials, giving the classic (1 + nu) free-swelling amplification.
Eigen::Vector2d plane_strain_swelling_coupling(const ElasticParams& p);

struct EnergySplit {
  double psi_plus = 0.0;   // damage driving part (MPa = mJ/mm^3)
  double psi_minus = 0.0;  // protected compressive-volumetric part
};

/// Volumetric-deviatoric split of the elastic strain energy. The trace uses
/// the plane-strain convention (ezz = 0 included); the deviator is 3D.
/// Transversely isotropic materials split off psi_minus with the (E22, nu23)
/// isotropic fit and take psi_plus as the energy remainder, floored at zero.
EnergySplit split_energy(const Eigen::Vector3d& eps_e, const ElasticParams& p);

/// Total strain energy density 0.5 * eps : C : eps.
double strain_energy(const Eigen::Vector3d& eps_e, const Eigen::Matrix3d& C);

/// sigma = ((1-phi)^2 + kappa) * sigma0.
Eigen::Vector3d degraded_stress(const Eigen::Vector3d& sigma0, double phi, double kappa);
double degradation(double phi, double kappa);

/// History field update: running maximum of psi_plus.
double update_history(double H_old, double psi_plus);

}  // namespace hygrofrac
