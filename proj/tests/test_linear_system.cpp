#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <sstream>

#include "hygrofrac/diffusion.hpp"
#include "hygrofrac/linear_system.hpp"
#include "hygrofrac/mesh.hpp"

using namespace hygrofrac;

namespace {

// textbook Gaussian elimination with partial pivoting, used as the dense oracle
Eigen::VectorXd dense_solve(Eigen::MatrixXd A, Eigen::VectorXd b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
    A.row(k).swap(A.row(piv));
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      const double f = A(i, k) / A(k, k);
      A.row(i) -= f * A.row(k);
      b[i] -= f * b[k];
    }
  }
  Eigen::VectorXd x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

}  // namespace

TEST_CASE("identity system returns the right-hand side") {
  SparseLinearSystem sys(4);
  for (int i = 0; i < 4; ++i) {
    sys.add(i, i, 1.0);
    sys.add_rhs(i, 2.5 * i - 1.0);
  }
  const Eigen::VectorXd x = sys.solve();
  for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(2.5 * i - 1.0).epsilon(1e-14));
}

TEST_CASE("1D Laplacian with a point load matches the discrete Green function") {
  // stiffness of -u'' with linear elements, spacing h, fixed ends
  const int m = 17;  // interior nodes
  const double h = 1.0 / (m + 1);
  const int k_load = 5;
  SparseLinearSystem sys(m);
  for (int i = 0; i < m; ++i) {
    sys.add(i, i, 2.0 / h);
    if (i + 1 < m) {
      sys.add(i, i + 1, -1.0 / h);
      sys.add(i + 1, i, -1.0 / h);
    }
  }
  sys.add_rhs(k_load, 1.0);
  const Eigen::VectorXd x = sys.solve();
  for (int i = 0; i < m; ++i) {
    const int a = std::min(i, k_load) + 1, b = std::max(i, k_load) + 1;
    const double exact = h * a * (m + 1 - b) / static_cast<double>(m + 1);
    CHECK(x[i] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("constrain all DOFs to zero gives the zero vector") {
  SparseLinearSystem sys(6);
  for (int i = 0; i < 6; ++i) {
    sys.add(i, i, 3.0);
    sys.add_rhs(i, 1.0);
  }
  std::vector<std::pair<int, double>> constraints;
  for (int i = 0; i < 6; ++i) constraints.emplace_back(i, 0.0);
  apply_dirichlet(sys, constraints);
  CHECK(sys.solve().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("2x2 system with one constrained DOF reduces to the 1x1 equation") {
  SparseLinearSystem sys(2);
  sys.add(0, 0, 4.0);
  sys.add(0, 1, 1.0);
  sys.add(1, 0, 1.0);
  sys.add(1, 1, 3.0);
  sys.add_rhs(0, 5.0);
  sys.add_rhs(1, 7.0);
  sys.set_dirichlet(0, 2.0);
  const Eigen::VectorXd x = sys.solve();
  CHECK(x[0] == 2.0);
  CHECK(x[1] == doctest::Approx((7.0 - 1.0 * 2.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("random SPD system with constraints matches the dense oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 50;
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = u(rng);
  Eigen::MatrixXd A = M.transpose() * M + 5.0 * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = u(rng);

  SparseLinearSystem sys(n);
  for (int i = 0; i < n; ++i) {
    sys.add_rhs(i, b[i]);
    for (int j = 0; j < n; ++j) sys.add(i, j, A(i, j));
  }
  std::vector<std::pair<int, double>> constraints;
  std::vector<char> is_constrained(n, 0);
  for (int k = 0; k < 10; ++k) {
    constraints.emplace_back(5 * k, 0.1 * k - 0.3);
    is_constrained[5 * k] = 1;
  }
  apply_dirichlet(sys, constraints);

  // dense elimination of the same symmetric reduction
  Eigen::MatrixXd Ad = A;
  Eigen::VectorXd bd = b;
  for (auto [dof, value] : constraints) {
    for (int i = 0; i < n; ++i) {
      if (!is_constrained[i]) bd[i] -= Ad(i, dof) * value;
    }
  }
  for (auto [dof, value] : constraints) {
    Ad.row(dof).setZero();
    Ad.col(dof).setZero();
    Ad(dof, dof) = 1.0;
    bd[dof] = value;
  }

  const Eigen::VectorXd x = sys.solve();
  const Eigen::VectorXd x_oracle = dense_solve(Ad, bd);
  CHECK((x - x_oracle).cwiseAbs().maxCoeff() < 1e-10);
  for (auto [dof, value] : constraints) CHECK(x[dof] == value);  // bitwise
}

TEST_CASE("diffusion solve on a 5x5-element mesh matches the dense oracle") {
  Mesh mesh = build_rect_mesh(Domain2D{1.0, 1.0}, 0.2, ElementOrder::Bilinear4);
  const std::size_t nqp = static_cast<std::size_t>(mesh.element_count()) * mesh.qp_per_elem();
  std::vector<double> D_qp(nqp, 1.45e-6);
  ConcentrationField old_field;
  old_field.C = Eigen::VectorXd::Zero(mesh.node_count());
  for (int i = 0; i < mesh.node_count(); ++i) old_field.C[i] = 0.01 * (i % 7);

  SparseLinearSystem sys = assemble_diffusion(mesh, D_qp, old_field, 100.0);
  Eigen::VectorXd b_raw(mesh.node_count());
  for (int i = 0; i < mesh.node_count(); ++i) b_raw[i] = sys.rhs(i);
  for (int n : mesh.node_set("left")) sys.set_dirichlet(n, 0.0745);

  std::vector<char> is_constrained(mesh.node_count(), 0);
  for (int n : mesh.node_set("left")) is_constrained[n] = 1;

  // dense oracle built from the raw (unconstrained) operator
  SparseLinearSystem raw = assemble_diffusion(mesh, D_qp, old_field, 100.0);
  Eigen::MatrixXd Ad(raw.matrix());
  Eigen::VectorXd bd = b_raw;
  for (int n : mesh.node_set("left")) {
    for (int i = 0; i < mesh.node_count(); ++i)
      if (!is_constrained[i]) bd[i] -= Ad(i, n) * 0.0745;
  }
  for (int n : mesh.node_set("left")) {
    Ad.row(n).setZero();
    Ad.col(n).setZero();
    Ad(n, n) = 1.0;
    bd[n] = 0.0745;
  }

  const Eigen::VectorXd x = sys.solve();
  const Eigen::VectorXd x_oracle = dense_solve(Ad, bd);
  CHECK((x - x_oracle).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("conjugate gradient path satisfies its residual contract") {
  Mesh mesh = build_rect_mesh(Domain2D{1.0, 1.0}, 0.05, ElementOrder::Bilinear4);
  const std::size_t nqp = static_cast<std::size_t>(mesh.element_count()) * mesh.qp_per_elem();
  std::vector<double> D_qp(nqp, 1.0);
  ConcentrationField old_field;
  old_field.C = Eigen::VectorXd::Constant(mesh.node_count(), 0.3);

  SparseLinearSystem sys = assemble_diffusion(mesh, D_qp, old_field, 0.5);
  for (int n : mesh.node_set("left")) sys.set_dirichlet(n, 1.0);
  SolverOptions opts;
  opts.kind = SolverKind::ConjugateGradient;
  const Eigen::VectorXd x = sys.solve(opts);
  CHECK(sys.last_relative_residual() < opts.cg_residual_limit);
  for (int n : mesh.node_set("left")) CHECK(x[n] == 1.0);
}

TEST_CASE("non-SPD matrix is rejected") {
  SparseLinearSystem sys(2);
  sys.add(0, 0, 1.0);
  sys.add(1, 1, -1.0);
  sys.add_rhs(0, 1.0);
  sys.add_rhs(1, 1.0);
  CHECK_THROWS_AS(sys.solve(), SolverError);
}

TEST_CASE("conflicting Dirichlet values are rejected") {
  SparseLinearSystem sys(3);
  sys.add(0, 0, 1.0);
  sys.set_dirichlet(1, 0.5);
  CHECK_THROWS_AS(sys.set_dirichlet(1, 0.6), SolverError);
  CHECK_NOTHROW(sys.set_dirichlet(1, 0.5));  // duplicate with the same value is fine
}

TEST_CASE("assembled systems are symmetric and dumpable") {
  Mesh mesh = build_rect_mesh(Domain2D{2.0, 1.0}, 0.5, ElementOrder::Bilinear4);
  const std::size_t nqp = static_cast<std::size_t>(mesh.element_count()) * mesh.qp_per_elem();
  std::vector<double> D_qp(nqp, 2.0);
  ConcentrationField old_field;
  old_field.C = Eigen::VectorXd::Zero(mesh.node_count());
  SparseLinearSystem sys = assemble_diffusion(mesh, D_qp, old_field, 1.0);
  CHECK(sys.asymmetry() < 1e-12);

  std::ostringstream os;
  sys.dump_coordinate(os);
  CHECK(os.str().find(' ') != std::string::npos);
}
