#include "slabmix/diffusion.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "slabmix/csv.hpp"
#include "slabmix/quadrature.hpp"

namespace slabmix {

double lp_alpha(double mu, const MaterialSpec& m1, const MaterialSpec& m2,
                const MixingStats& stats, double eta) {
  if (!(mu > 0.0) && !(m1.sigma_t > 0.0 && m2.sigma_t > 0.0)) {
    throw std::domain_error("lp_alpha: mu = 0 with a void material");
  }
  const double l1 = stats.lambda1;
  const double l2 = stats.lambda2;
  const double p1 = stats.p1();
  const double p2 = stats.p2();
  const double st_avg = p1 * m1.sigma_t + p2 * m2.sigma_t;
  const double cross = eta * (l1 * m1.sigma_t + l2 * m2.sigma_t) * mu;
  const double num = l1 * l2 * st_avg * (p1 * m2.sigma_t + p2 * m1.sigma_t) + cross;
  const double den = l1 * l2 * m1.sigma_t * m2.sigma_t + cross;
  if (den == 0.0) {
    throw std::domain_error("lp_alpha: vanishing denominator (both materials void?)");
  }
  return num / den;
}

double lp_beta(const MaterialSpec& m1, const MaterialSpec& m2,
               const MixingStats& stats, double eta) {
  // alpha is a rational function of mu, smooth on (0,1]; when one material is
  // void the mu -> 0 blowup of alpha is cancelled by the mu^2 weight, so open
  // Gauss-Legendre nodes need no special handling.
  Eigen::VectorXd x, w;
  double previous = 0.0;
  for (int n = 16; n <= 4096; n *= 2) {
    gauss_legendre_on(n, 0.0, 1.0, x, w);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += w[i] * 3.0 * x[i] * x[i] * lp_alpha(x[i], m1, m2, stats, eta);
    }
    if (n > 16 && std::abs(sum - previous) < 1e-10) return sum;
    previous = sum;
  }
  throw std::runtime_error("lp_beta: quadrature did not settle at 1e-10");
}

double DiffusionProblem::kappa() const {
  return std::sqrt(sigma_a / diffusion_coefficient);
}

DiffusionProblem make_diffusion_problem(const AveragedSpec& avg,
                                        double half_width, double beta) {
  if (!(avg.sigma_t > 0.0)) {
    throw std::invalid_argument("make_diffusion_problem: <Sigma_t> must be positive");
  }
  DiffusionProblem p;
  p.diffusion_coefficient = beta / (3.0 * avg.sigma_t);
  p.sigma_a = avg.sigma_a;
  p.q = avg.q;
  p.half_width = half_width;
  p.extrapolation_distance = 2.0 * p.diffusion_coefficient;
  return p;
}

double diffusion_flux_at(const DiffusionProblem& p, double x) {
  if (!(p.sigma_a > 0.0)) {
    throw std::domain_error("diffusion_flux_at: requires sigma_a > 0");
  }
  const double k = p.kappa();
  const double span = p.half_width + p.extrapolation_distance;
  return (p.q / p.sigma_a) * (1.0 - std::cosh(k * x) / std::cosh(k * span));
}

FluxField solve_diffusion_analytic(const DiffusionProblem& p, double dx_max,
                                   ModelTag tag) {
  AveragedSpec data;
  data.sigma_t = p.sigma_a;
  data.sigma_s = 0.0;
  data.sigma_a = p.sigma_a;
  data.q = p.q;
  FluxField flux;
  flux.mesh = build_mesh(data, p.half_width, dx_max);
  flux.tag = tag;
  const Eigen::ArrayXd centers = flux.mesh.centers();
  flux.scalar_flux.resize(centers.size());
  for (int i = 0; i < centers.size(); ++i) {
    flux.scalar_flux[i] = diffusion_flux_at(p, centers[i]);
  }
  return flux;
}

DiffusionFdResult solve_diffusion_fd_nodes(const DiffusionProblem& p,
                                           int n_cells) {
  if (n_cells < 10) {
    throw std::invalid_argument("solve_diffusion_fd: n_cells must be >= 10");
  }
  const double span = p.half_width + p.extrapolation_distance;
  const int n = n_cells;
  const double dx = 2.0 * span / n;

  DiffusionFdResult result;
  result.x = Eigen::ArrayXd::LinSpaced(n + 1, -span, span);
  result.phi = Eigen::ArrayXd::Zero(n + 1);

  // Thomas elimination of the interior tridiagonal system
  //   -D (phi_{i-1} - 2 phi_i + phi_{i+1})/dx^2 + sigma_a phi_i = q.
  const int m = n - 1;  // interior nodes
  const double off = -p.diffusion_coefficient / (dx * dx);
  const double diag = 2.0 * p.diffusion_coefficient / (dx * dx) + p.sigma_a;
  Eigen::ArrayXd c_star(m), d_star(m);
  c_star[0] = off / diag;
  d_star[0] = p.q / diag;
  for (int i = 1; i < m; ++i) {
    const double denom = diag - off * c_star[i - 1];
    c_star[i] = off / denom;
    d_star[i] = (p.q - off * d_star[i - 1]) / denom;
  }
  result.phi[m] = d_star[m - 1];
  for (int i = m - 1; i >= 1; --i) {
    result.phi[i] = d_star[i - 1] - c_star[i - 1] * result.phi[i + 1];
  }
  return result;
}

FluxField solve_diffusion_fd(const DiffusionProblem& p, int n_cells,
                             ModelTag tag) {
  const DiffusionFdResult nodes = solve_diffusion_fd_nodes(p, n_cells);
  const int n = n_cells;

  Mesh mesh;
  mesh.edges = nodes.x;
  mesh.sigma_t = Eigen::ArrayXd::Constant(n, p.sigma_a);
  mesh.sigma_s = Eigen::ArrayXd::Zero(n);
  mesh.q = Eigen::ArrayXd::Constant(n, p.q);
  mesh.material = Eigen::ArrayXi::Zero(n);

  FluxField flux;
  flux.mesh = std::move(mesh);
  flux.tag = tag;
  flux.scalar_flux =
      0.5 * (nodes.phi.head(n) + nodes.phi.tail(n));
  return flux;
}

void write_coefficients(std::ostream& os, const DiffusionProblem& p,
                        double beta) {
  os << "beta=" << fmt17(beta) << "\n"
     << "D=" << fmt17(p.diffusion_coefficient) << "\n"
     << "kappa=" << fmt17(p.kappa()) << "\n"
     << "d=" << fmt17(p.extrapolation_distance) << "\n"
     << "sigma_a=" << fmt17(p.sigma_a) << "\n"
     << "q=" << fmt17(p.q) << "\n"
     << "half_width=" << fmt17(p.half_width) << "\n";
}

}  // namespace slabmix
