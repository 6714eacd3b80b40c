#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "slabmix/transport.hpp"

using namespace slabmix;

namespace {

Mesh homogeneous_mesh(double sigma_t, double sigma_s, double q,
                      double half_width, double dx_max) {
  AveragedSpec avg;
  avg.sigma_t = sigma_t;
  avg.sigma_s = sigma_s;
  avg.sigma_a = sigma_t - sigma_s;
  avg.q = q;
  return build_mesh(avg, half_width, dx_max);
}

double balance_defect(const FluxField& flux) {
  const Eigen::ArrayXd widths = flux.mesh.widths();
  const double absorption =
      ((flux.mesh.sigma_t - flux.mesh.sigma_s) * flux.scalar_flux * widths).sum();
  const double source = (flux.mesh.q * widths).sum();
  return std::abs(absorption + flux.info.outflow_left +
                  flux.info.outflow_right - source) /
         source;
}

}  // namespace

TEST_CASE("zero emission sweeps to zero flux") {
  const Mesh mesh = homogeneous_mesh(1.0, 0.5, 0.0, 2.0, 0.1);
  const Quadrature quad = gauss_legendre(8);
  const SweepResult r = sweep(mesh, quad, Eigen::ArrayXd::Zero(mesh.n_cells()));
  CHECK(r.scalar.abs().maxCoeff() == 0.0);
  CHECK(r.angular.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.outflow_left == 0.0);
  CHECK(r.outflow_right == 0.0);
  CHECK(r.negative_count == 0);
}

TEST_CASE("pure absorber sweep matches the closed-form recurrence") {
  // Uniform sigma_t and emission: for each direction the diamond recurrence
  // has the geometric-series solution
  //   psi_out(j) = r2 E (1 - r1^(j+1)) / (1 - r1),
  // marching from the vacuum face. Compare cell-centered values at 1e-12.
  const double sigma_t = 1.0;
  const double emission = 0.7;
  const double dx = 0.125;
  const Mesh mesh = homogeneous_mesh(sigma_t, 0.0, emission, 1.0, dx);
  const Quadrature quad = gauss_legendre(4);
  const SweepResult r =
      sweep(mesh, quad, Eigen::ArrayXd::Constant(mesh.n_cells(), emission));

  const int n = mesh.n_cells();
  for (int d = 0; d < quad.order(); ++d) {
    const double mu_abs = std::abs(quad.mu[d]);
    const double a = mu_abs / dx;
    const double r1 = (a - 0.5 * sigma_t) / (a + 0.5 * sigma_t);
    const double r2 = 0.5 / (a + 0.5 * sigma_t);
    for (int j = 0; j < n; ++j) {
      // distance (in cells) from this direction's inflow face
      const int steps = (quad.mu[d] > 0.0) ? j : (n - 1 - j);
      const double out =
          r2 * emission * (1.0 - std::pow(r1, steps + 1)) / (1.0 - r1);
      const double in =
          r2 * emission * (1.0 - std::pow(r1, steps)) / (1.0 - r1);
      const double center = 0.5 * (in + out);
      CHECK(r.angular(d, j) == doctest::Approx(center).epsilon(1e-12));
    }
  }
}

TEST_CASE("sweep has mirror symmetry psi(x,mu) = psi(-x,-mu)") {
  const Mesh mesh = homogeneous_mesh(1.0, 0.0, 1.0, 3.0, 0.05);
  const Quadrature quad = gauss_legendre(8);
  const SweepResult r =
      sweep(mesh, quad, Eigen::ArrayXd::Constant(mesh.n_cells(), 1.0));
  const int n = mesh.n_cells();
  for (int d = 0; d < quad.order(); ++d) {
    const int d_mirror = quad.order() - 1 - d;
    for (int j = 0; j < n; ++j) {
      CHECK(r.angular(d, j) ==
            doctest::Approx(r.angular(d_mirror, n - 1 - j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("scalar flux equals the weighted angular sum") {
  const Mesh mesh = homogeneous_mesh(0.8, 0.3, 0.5, 2.0, 0.1);
  const Quadrature quad = gauss_legendre(16);
  SolveOptions opts;
  opts.keep_angular = true;
  const FluxField flux = solve_fixed_source(mesh, quad, opts);
  REQUIRE(flux.angular_flux.has_value());
  const Eigen::ArrayXd recomputed =
      (quad.w.transpose() * *flux.angular_flux).array().transpose();
  const double rel =
      ((recomputed - flux.scalar_flux).abs() / flux.scalar_flux.abs())
          .maxCoeff();
  CHECK(rel < 1e-12);
  CHECK((flux.scalar_flux >= 0.0).all());
}

TEST_CASE("no scattering converges in one iteration") {
  const Mesh mesh = homogeneous_mesh(1.0, 0.0, 0.2, 2.0, 0.1);
  const Quadrature quad = gauss_legendre(16);
  const FluxField flux = solve_fixed_source(mesh, quad);
  CHECK(flux.info.iterations == 1);
}

TEST_CASE("thick slab center approaches the infinite-medium value") {
  // Volume-averaged pure-absorber data (sigma_t = sigma_a = 0.5, q = 0.1):
  // the center of a 40-unit slab sits 10 mean free paths from each face, so
  // the scalar flux at x = 0 is q / sigma_a = 0.2000 to table precision.
  const Mesh mesh = homogeneous_mesh(0.5, 0.0, 0.1, 20.0, 0.1);
  const Quadrature quad = gauss_legendre(16);
  const FluxField flux = solve_fixed_source(mesh, quad);
  const double phi0 = flux_at_origin(flux);
  CHECK(phi0 == doctest::Approx(0.2000).epsilon(5e-4));
}

TEST_CASE("tolerance tightening leaves the flux stable") {
  const Mesh mesh = homogeneous_mesh(1.0, 0.5, 1.0, 2.0, 0.05);
  const Quadrature quad = gauss_legendre(16);
  SolveOptions loose;
  loose.tol = 1e-8;
  SolveOptions tight;
  tight.tol = 1e-10;
  const FluxField a = solve_fixed_source(mesh, quad, loose);
  const FluxField b = solve_fixed_source(mesh, quad, tight);
  const double rel =
      ((a.scalar_flux - b.scalar_flux).abs() / b.scalar_flux.abs()).maxCoeff();
  CHECK(rel < 1e-7);
}

TEST_CASE("converged solves satisfy particle balance within 10 tol") {
  const Quadrature quad = gauss_legendre(16);
  SolveOptions opts;
  opts.tol = 1e-8;

  SUBCASE("moderate scattering") {
    const Mesh mesh = homogeneous_mesh(1.0, 0.5, 1.0, 2.0, 0.1);
    const FluxField flux = solve_fixed_source(mesh, quad, opts);
    CHECK(balance_defect(flux) < 10.0 * opts.tol);
    CHECK(flux.info.balance_residual < 10.0 * opts.tol);
  }

  SUBCASE("near-unity scattering ratio") {
    const Mesh mesh = homogeneous_mesh(1.0, 1.0 - 2.5e-4, 5.0e-4, 20.0, 0.1);
    const FluxField flux = solve_fixed_source(mesh, quad, opts);
    CHECK(balance_defect(flux) < 10.0 * opts.tol);
  }
}

TEST_CASE("symmetric problems give mirror-symmetric scalar flux") {
  const Mesh mesh = homogeneous_mesh(1.0, 0.9, 1.0, 4.0, 0.1);
  const Quadrature quad = gauss_legendre(16);
  SolveOptions opts;
  const FluxField flux = solve_fixed_source(mesh, quad, opts);
  const int n = mesh.n_cells();
  for (int j = 0; j < n / 2; ++j) {
    const double rel = std::abs(flux.scalar_flux[j] - flux.scalar_flux[n - 1 - j]) /
                       flux.scalar_flux[n - 1 - j];
    CHECK(rel < 10.0 * opts.tol);
  }
}

TEST_CASE("mesh refinement converges at second order") {
  const Quadrature quad = gauss_legendre(16);
  SolveOptions opts;
  opts.tol = 1e-11;
  double phi[3];
  double dx = 0.2;
  for (int level = 0; level < 3; ++level, dx *= 0.5) {
    const Mesh mesh = homogeneous_mesh(1.0, 0.5, 1.0, 2.0, dx);
    phi[level] = flux_at_origin(solve_fixed_source(mesh, quad, opts));
  }
  const double order =
      std::log2(std::abs(phi[0] - phi[1]) / std::abs(phi[1] - phi[2]));
  CHECK(order >= 1.8);
}

TEST_CASE("non-convergence carries the last iterate and history") {
  const Mesh mesh = homogeneous_mesh(1.0, 0.99, 1.0, 5.0, 0.1);
  const Quadrature quad = gauss_legendre(4);
  SolveOptions opts;
  opts.max_iters = 3;
  try {
    solve_fixed_source(mesh, quad, opts);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.residual_history().size() == 3);
    CHECK(e.last_iterate().scalar_flux.size() == mesh.n_cells());
    CHECK(e.last_iterate().scalar_flux.maxCoeff() > 0.0);
  }
}
