#include <doctest.h>

#include <cmath>

#include "hygrofrac/oracles.hpp"

using namespace hygrofrac;

TEST_CASE("slab series: initial and saturated limits") {
  const double D = 1.45e-6, L = 1.0, Cs = 0.0745;
  CHECK(slab_diffusion_oracle(0.3, 0.0, D, Cs, L) == 0.0);
  CHECK(slab_diffusion_oracle(0.0, 123.0, D, Cs, L) == doctest::Approx(Cs).epsilon(1e-12));
  const double t_large = 50 * L * L / D;
  CHECK(slab_diffusion_oracle(0.9, t_large, D, Cs, L) == doctest::Approx(Cs).epsilon(1e-9));
}

TEST_CASE("slab series agrees with an explicit finite-difference march") {
  // two independent routes to C(L/2) at Fourier number 0.2
  const double D = 2.0e-6, L = 2.0, Cs = 1.0;
  const double t_end = 0.2 * L * L / D;

  const int nx = 800;
  const double dx = L / nx;
  const double dt = 0.2 * dx * dx / D;
  const long steps = static_cast<long>(std::ceil(t_end / dt));
  std::vector<double> c(nx + 1, 0.0), next(nx + 1, 0.0);
  c[0] = Cs;
  const double r = D * dt / (dx * dx);
  for (long s = 0; s < steps; ++s) {
    const double dt_eff = (s == steps - 1) ? t_end - (steps - 1) * dt : dt;
    const double r_eff = D * dt_eff / (dx * dx);
    next[0] = Cs;
    for (int i = 1; i < nx; ++i) next[i] = c[i] + r_eff * (c[i + 1] - 2 * c[i] + c[i - 1]);
    next[nx] = c[nx] + 2 * r_eff * (c[nx - 1] - c[nx]);  // insulated far edge
    std::swap(c, next);
  }
  (void)r;
  const double fd_value = c[nx / 2];
  const double series_value = slab_diffusion_oracle(L / 2, t_end, D, Cs, L, 200);
  CHECK(std::abs(series_value - fd_value) < 1e-4 * Cs);
  // series truncation itself is converged far below that
  CHECK(std::abs(series_value - slab_diffusion_oracle(L / 2, t_end, D, Cs, L, 400)) < 1e-12);
}

TEST_CASE("screened Poisson profile endpoints") {
  CHECK(screened_poisson_oracle(0.0, 0.3) == 1.0);
  CHECK(screened_poisson_oracle(300.0, 0.3) < 1e-12);
  CHECK(screened_poisson_oracle(0.3, 0.3) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("homogeneous AT2 damage closed form") {
  const double Gc = 1.2, ell = 0.01;
  CHECK(at2_homogeneous_oracle(0.0, Gc, ell) == 0.0);
  CHECK(at2_homogeneous_oracle(Gc / (2 * ell), Gc, ell) == doctest::Approx(0.5).epsilon(1e-15));
  double prev = 0.0;
  for (double psi = 1.0; psi < 1e9; psi *= 10) {
    const double phi = at2_homogeneous_oracle(psi, Gc, ell);
    CHECK(phi > prev);
    CHECK(phi < 1.0);
    prev = phi;
  }
  CHECK(prev > 0.999);
}

TEST_CASE("free swelling elongation closed form") {
  CHECK(free_swelling_oracle(0.6, 0.0, 10.0) == 0.0);
  CHECK(free_swelling_oracle(0.6, 0.0745, 10.0) == doctest::Approx(0.447).epsilon(1e-12));
  CHECK(free_swelling_oracle(1.06, 0.0745, 10.0) == doctest::Approx(0.7897).epsilon(1e-12));
}

TEST_CASE("all registered oracle checks pass") {
  for (const auto& name : oracle_names()) {
    const OracleReport report = run_oracle_check(name);
    INFO(format_report(report));
    CHECK(report.pass);
    CHECK(report.metric <= report.threshold);
  }
}

TEST_CASE("oracle reports are deterministic") {
  const OracleReport a = run_oracle_check("jacobian-fd");
  const OracleReport b = run_oracle_check("jacobian-fd");
  CHECK(a.metric == b.metric);
  const std::string line = format_report(a);
  CHECK(line.rfind("PASS jacobian-fd", 0) == 0);
}

TEST_CASE("unknown oracle names are rejected") {
  CHECK_THROWS_AS(run_oracle_check("does-not-exist"), std::invalid_argument);
}
