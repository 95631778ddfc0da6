#include "hygrofrac/linear_system.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace hygrofrac {

SparseLinearSystem::SparseLinearSystem(int n)
    : n_(n),
      rhs_(Eigen::VectorXd::Zero(n)),
      constrained_(n, 0),
      constraint_value_(Eigen::VectorXd::Zero(n)) {}

void SparseLinearSystem::add(int i, int j, double v) {
  triplets_.emplace_back(i, j, v);
  finalized_ = false;
}

void SparseLinearSystem::set_dirichlet(int dof, double value) {
  if (dof < 0 || dof >= n_) throw SolverError("constraint DOF out of range");
  if (constrained_[dof] && constraint_value_[dof] != value) {
    throw SolverError("conflicting Dirichlet values at DOF " + std::to_string(dof));
  }
  if (!constrained_[dof]) constraints_.emplace_back(dof, value);
  constrained_[dof] = 1;
  constraint_value_[dof] = value;
  finalized_ = false;
}

void apply_dirichlet(SparseLinearSystem& system,
                     const std::vector<std::pair<int, double>>& constraints) {
  for (auto [dof, value] : constraints) system.set_dirichlet(dof, value);
}

void SparseLinearSystem::finalize() {
  if (finalized_) return;
  b_ = rhs_;

  std::vector<Eigen::Triplet<double>> kept;
  kept.reserve(triplets_.size() + constraints_.size());
  for (const auto& t : triplets_) {
    const bool ci = constrained_[t.row()];
    const bool cj = constrained_[t.col()];
    if (ci) continue;  // row eliminated
    if (cj) {
      b_[t.row()] -= t.value() * constraint_value_[t.col()];
      continue;
    }
    kept.push_back(t);
  }
  for (auto [dof, value] : constraints_) {
    kept.emplace_back(dof, dof, 1.0);
    b_[dof] = value;
  }

  A_.resize(n_, n_);
  A_.setFromTriplets(kept.begin(), kept.end());
  A_.makeCompressed();
  finalized_ = true;
}

const Eigen::SparseMatrix<double>& SparseLinearSystem::matrix() {
  finalize();
  return A_;
}

double SparseLinearSystem::asymmetry() {
  finalize();
  const Eigen::SparseMatrix<double> At = A_.transpose();
  double max_diff = 0.0, max_abs = 0.0;
  for (int k = 0; k < A_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A_, k); it; ++it) {
      max_abs = std::max(max_abs, std::abs(it.value()));
      max_diff = std::max(max_diff, std::abs(it.value() - At.coeff(it.row(), it.col())));
    }
  }
  return max_abs > 0 ? max_diff / max_abs : 0.0;
}

Eigen::VectorXd SparseLinearSystem::solve(const SolverOptions& opts) {
  finalize();

  SolverKind kind = opts.kind;
  if (kind == SolverKind::Auto) {
    kind = n_ <= opts.auto_direct_dof_limit ? SolverKind::Cholesky
                                            : SolverKind::ConjugateGradient;
  }

  Eigen::VectorXd x;
  double residual_limit;
  if (kind == SolverKind::Cholesky) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(A_);
    if (ldlt.info() != Eigen::Success) {
      throw SolverError("sparse LDLT factorization failed (matrix not SPD)");
    }
    const auto& D = ldlt.vectorD();
    for (int i = 0; i < D.size(); ++i) {
      if (!(D[i] > 0.0)) {
        throw SolverError("sparse LDLT: non-positive pivot at index " + std::to_string(i));
      }
    }
    x = ldlt.solve(b_);
    residual_limit = opts.direct_residual_limit;
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setMaxIterations(opts.cg_max_iterations);
    cg.setTolerance(opts.cg_residual_limit * 1e-2);
    cg.compute(A_);
    x = cg.solve(b_);
    if (cg.info() != Eigen::Success) {
      throw SolverError("conjugate gradient did not converge after " +
                        std::to_string(cg.iterations()) + " iterations (error " +
                        std::to_string(cg.error()) + ")");
    }
    residual_limit = opts.cg_residual_limit;
  }

  const double bnorm = b_.norm();
  last_residual_ = bnorm > 0 ? (A_ * x - b_).norm() / bnorm : (A_ * x).norm();
  if (!(last_residual_ <= residual_limit) && bnorm > 0) {
    throw SolverError("linear solve residual " + std::to_string(last_residual_) +
                      " exceeds contract " + std::to_string(residual_limit));
  }

  for (auto [dof, value] : constraints_) x[dof] = value;  // exact at constraints
  return x;
}

void SparseLinearSystem::dump_coordinate(std::ostream& os) {
  finalize();
  for (int k = 0; k < A_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A_, k); it; ++it) {
      os << it.row() << " " << it.col() << " " << it.value() << "\n";
    }
  }
}

}  // namespace hygrofrac
