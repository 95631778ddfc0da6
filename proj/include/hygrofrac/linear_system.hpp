#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace hygrofrac {

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class SolverKind { Auto, Cholesky, ConjugateGradient };

struct SolverOptions {
  SolverKind kind = SolverKind::Auto;
  int auto_direct_dof_limit = 200000;  // Auto: direct at or below, CG above
  double direct_residual_limit = 1e-10;
  double cg_residual_limit = 1e-8;
  int cg_max_iterations = 50000;
};

/// Symmetric sparse system with deferred Dirichlet elimination.
///
/// Entries accumulate as triplets in assembly order; constraints are applied
/// by symmetric row/column elimination when the matrix is finalised, so the
/// system stays SPD and constrained solution entries are exact.
class SparseLinearSystem {
public:
  explicit SparseLinearSystem(int n);

  int size() const { return n_; }
  void add(int i, int j, double v);
  void add_rhs(int i, double v) { rhs_[i] += v; }
  void set_rhs(int i, double v) { rhs_[i] = v; }
  double rhs(int i) const { return rhs_[i]; }
  Eigen::VectorXd& rhs_vector() { return rhs_; }

  /// Register a Dirichlet constraint; conflicting duplicates are an error.
  void set_dirichlet(int dof, double value);
  const std::vector<std::pair<int, double>>& constraints() const { return constraints_; }

  /// Solve to the residual contract of the chosen solver. Throws SolverError
  /// on breakdown or when the residual contract is not met.
  Eigen::VectorXd solve(const SolverOptions& opts = {});

  /// Relative residual ||Ax-b|| / ||b|| of the last solve.
  double last_relative_residual() const { return last_residual_; }

  /// Finalised matrix with constraints eliminated (for tests and dumps).
  const Eigen::SparseMatrix<double>& matrix();

  /// Max relative asymmetry |A - A^T| / max|A| of the finalised matrix.
  double asymmetry();

  /// Plain-text coordinate dump: "row col value" per line.
  void dump_coordinate(std::ostream& os);

private:
  void finalize();

  int n_;
  std::vector<Eigen::Triplet<double>> triplets_;
  Eigen::VectorXd rhs_;
  std::vector<std::pair<int, double>> constraints_;
  std::vector<char> constrained_;
  Eigen::VectorXd constraint_value_;
  Eigen::SparseMatrix<double> A_;
  Eigen::VectorXd b_;
  bool finalized_ = false;
  double last_residual_ = 0.0;
};

/// Batch form of the Dirichlet registration.
void apply_dirichlet(SparseLinearSystem& system,
                     const std::vector<std::pair<int, double>>& constraints);

}  // namespace hygrofrac
