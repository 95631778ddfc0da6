#include "hygrofrac/materials.hpp"

namespace hygrofrac {

ElasticParams ElasticParams::make_isotropic(double E, double nu) {
  ElasticParams p;
  p.E11 = p.E22 = E;
  p.nu12 = p.nu23 = nu;
  p.isotropic = true;
  return p;
}

ElasticParams ElasticParams::make_transverse(double E11, double E22, double nu12, double nu23,
                                             double theta_deg) {
  ElasticParams p;
  p.E11 = E11;
  p.E22 = E22;
  p.nu12 = nu12;
  p.nu23 = nu23;
  p.theta_deg = theta_deg;
  p.isotropic = false;
  return p;
}

double ElasticParams::lambda_split() const {
  const double E = isotropic ? E11 : E22;
  const double nu = isotropic ? nu12 : nu23;
  return E * nu / ((1 + nu) * (1 - 2 * nu));
}

double ElasticParams::mu_split() const {
  const double E = isotropic ? E11 : E22;
  const double nu = isotropic ? nu12 : nu23;
  return E / (2 * (1 + nu));
}

void MaterialCatalog::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0)) throw MaterialError(std::string(name) + " must be positive");
  };
  positive(matrix.elastic.E11, "matrix E11");
  positive(fibre.elastic.E11, "fibre E11");
  positive(matrix.Gc, "matrix Gc");
  positive(fibre.Gc, "fibre Gc");
  positive(interface.Gc, "interface Gc");
  positive(matrix.D, "matrix D");
  positive(fibre.D, "fibre D");
  positive(interface.D, "interface D");
  if (!(interpolation_exponent >= 1.0)) {
    throw MaterialError("interpolation exponent n must be >= 1");
  }
}

MaterialCatalog builtin_catalog(const std::string& name) {
  if (name != "flax-epoxy") throw MaterialError("unknown material catalog '" + name + "'");
  MaterialCatalog cat;
  cat.matrix.elastic = ElasticParams::make_isotropic(3600.0, 0.4);
  cat.matrix.hygro = {0.6, 0.6, 0.0};
  cat.matrix.Gc = 1.2;
  cat.matrix.D = 1.45e-6;

  cat.fibre.elastic = ElasticParams::make_transverse(31500.0, 5100.0, 0.28, 0.41, 0.0);
  cat.fibre.hygro = {1.06, 0.85, 0.0};
  cat.fibre.Gc = 2.1;
  cat.fibre.D = 1.19e-6;

  cat.interface = {0.213, 0.8e-6, 0.1, 0.1};
  cat.interpolation_exponent = 1.0;
  return cat;
}

}  // namespace hygrofrac
