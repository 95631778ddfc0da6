#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace hygrofrac {

/// Finite-slab uptake: boundary value C_s at x = 0, insulated edge at x = L,
/// zero initial state. Eigenfunction series with `terms` terms.
double slab_diffusion_oracle(double x, double t, double D, double C_s, double L,
                             int terms = 200);

/// Semi-infinite screened Poisson profile exp(-x / ell) with unit seam value.
double screened_poisson_oracle(double x, double ell);

/// Homogeneous AT2 damage 2*ell*psi / (Gc + 2*ell*psi).
double at2_homogeneous_oracle(double psi, double Gc, double ell);

/// Free elongation alpha * dC * L of a homogeneous unconstrained body.
double free_swelling_oracle(double alpha, double dC, double L);

/// Central-difference Jacobian of `residual` compared against the analytic
/// matrix; returns the max entry error relative to the largest analytic
/// entry. `rel_perturbation` scales with max(|state|, 1).
double fd_jacobian_check(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
                         const Eigen::MatrixXd& analytic, const Eigen::VectorXd& state,
                         double rel_perturbation);

struct OracleReport {
  std::string name;
  double metric = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
};

/// Named solver-verification checks comparing finite element results against
/// the closed forms above. Names: slab-diffusion, screened-poisson,
/// at2-homogeneous, jacobian-fd, free-swelling.
OracleReport run_oracle_check(const std::string& name);
std::vector<std::string> oracle_names();
std::string format_report(const OracleReport& report);

}  // namespace hygrofrac
