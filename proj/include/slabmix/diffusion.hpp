#pragma once

#include <iosfwd>

#include "slabmix/flux_field.hpp"
#include "slabmix/material.hpp"

namespace slabmix {

/// Angular factor alpha(mu) of the LP diffusion coefficient,
///   alpha = [l1 l2 <St> (p1 St2 + p2 St1) + eta (l1 St1 + l2 St2) mu]
///         / [l1 l2 St1 St2              + eta (l1 St1 + l2 St2) mu].
/// Requires mu > 0 unless both totals are positive.
double lp_alpha(double mu, const MaterialSpec& m1, const MaterialSpec& m2,
                const MixingStats& stats, double eta);

/// beta = integral over (0,1) of 3 mu^2 alpha(mu), by Gauss-Legendre with
/// node doubling until successive estimates differ by less than 1e-10.
double lp_beta(const MaterialSpec& m1, const MaterialSpec& m2,
               const MixingStats& stats, double eta);

/// -D phi'' + sigma_a phi = q on (-X, X) with zero flux imposed at the
/// extrapolated endpoints +-(X + d), d = 2 D.
struct DiffusionProblem {
  double diffusion_coefficient = 0.0;  // D
  double sigma_a = 0.0;
  double q = 0.0;
  double half_width = 0.0;             // X
  double extrapolation_distance = 0.0;  // d

  double kappa() const;  // sqrt(sigma_a / D)
};

/// D = beta / (3 <Sigma_t>); beta = 1 gives the atomic-mix and adjusted-model
/// limits, beta = lp_beta(...) the standard-model limit.
DiffusionProblem make_diffusion_problem(const AveragedSpec& avg,
                                        double half_width, double beta = 1.0);

/// Closed form (q/sigma_a) [1 - cosh(kappa x)/cosh(kappa (X+d))].
double diffusion_flux_at(const DiffusionProblem& p, double x);

/// Closed-form solution tabulated at the centers of a uniform mesh on [-X, X].
FluxField solve_diffusion_analytic(const DiffusionProblem& p, double dx_max,
                                   ModelTag tag);

/// Second-order central differences on the extended domain [-(X+d), X+d]
/// with zero Dirichlet endpoints, solved by the Thomas algorithm.
struct DiffusionFdResult {
  Eigen::ArrayXd x;    // n_cells + 1 nodes spanning the extended domain
  Eigen::ArrayXd phi;  // nodal flux, zero at both ends
};

DiffusionFdResult solve_diffusion_fd_nodes(const DiffusionProblem& p,
                                           int n_cells);

/// Finite-difference solution as a FluxField on the extended domain; cell
/// values are edge-node averages.
FluxField solve_diffusion_fd(const DiffusionProblem& p, int n_cells,
                             ModelTag tag);

/// Text report of beta, D, kappa, d for audit.
void write_coefficients(std::ostream& os, const DiffusionProblem& p,
                        double beta);

}  // namespace slabmix
