#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace hygrofrac {

class MaterialError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Plane-strain elasticity, isotropic or transversely isotropic with the
/// symmetry axis in-plane at angle theta (degrees from the x axis).
struct ElasticParams {
  double E11 = 0.0;   // MPa
  double E22 = 0.0;   // MPa
  double nu12 = 0.0;
  double nu23 = 0.0;
  double theta_deg = 0.0;
  bool isotropic = false;

  static ElasticParams make_isotropic(double E, double nu);
  static ElasticParams make_transverse(double E11, double E22, double nu12, double nu23,
                                       double theta_deg);

  /// Lame pair used by the energy split: the actual pair for isotropic
  /// materials, an isotropic fit on (E22, nu23) otherwise.
  double lambda_split() const;
  double mu_split() const;
};

/// Hygroscopic expansion, strain per unit concentration fraction, in the
/// material frame.
struct HygroParams {
  double alpha11 = 0.0;
  double alpha22 = 0.0;
  double C0 = 0.0;  // reference concentration (mass fraction)
};

/// One bulk phase: elasticity plus fracture/diffusion/swelling data.
struct MaterialRegion {
  ElasticParams elastic;
  HygroParams hygro;
  double Gc = 0.0;  // N/mm
  double D = 0.0;   // mm^2/s
};

struct InterfaceProps {
  double Gc = 0.0;
  double D = 0.0;
  double alpha11 = 0.0;
  double alpha22 = 0.0;
};

struct MaterialCatalog {
  MaterialRegion matrix;
  MaterialRegion fibre;
  InterfaceProps interface;
  double interpolation_exponent = 1.0;  // n in h(d) = (1-d)^n

  void validate() const;
};

/// Built-in catalogs; "flax-epoxy" is the only one shipped.
MaterialCatalog builtin_catalog(const std::string& name);

}  // namespace hygrofrac
