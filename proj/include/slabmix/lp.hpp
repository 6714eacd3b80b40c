#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "slabmix/flux_field.hpp"
#include "slabmix/material.hpp"
#include "slabmix/quadrature.hpp"
#include "slabmix/transport.hpp"

namespace slabmix {

/// Coupled two-material problem on a slab with homogeneous mixing statistics.
/// eta = 1 is the standard closure; eta = eta_factor(volume_average(...))
/// gives the adjusted model. eta = 0 (decoupled) is permitted for testing.
struct LPProblem {
  MaterialSpec m1;
  MaterialSpec m2;
  MixingStats stats{1.0, 1.0};
  double half_width = 0.0;
  double eta = 1.0;
  bool eta_from_rule = false;  // true when eta came from eta_factor
  int quad_n = 16;
  double dx_max = 0.1;
};

struct LPSweepResult {
  Eigen::MatrixXd psi1;  // per-material angular flux, (direction, cell)
  Eigen::MatrixXd psi2;
  Eigen::ArrayXd weighted_phi1;  // integral of p_i Psi_i over mu, per cell
  Eigen::ArrayXd weighted_phi2;
  double outflow_left = 0.0;  // combined p1 Psi1 + p2 Psi2 partial currents
  double outflow_right = 0.0;
  long negative_count = 0;
};

struct LPSolution {
  Mesh mesh;
  Eigen::ArrayXd mean_scalar_flux;  // p1 phi1 + p2 phi2
  Eigen::ArrayXd phi1;              // per-material scalar fluxes
  Eigen::ArrayXd phi2;
  Eigen::MatrixXd psi1;  // final-sweep angular fluxes, (direction, cell)
  Eigen::MatrixXd psi2;
  double eta = 1.0;
  bool eta_from_rule = false;
  SolveInfo info;
};

class LPNonConvergenceError : public std::runtime_error {
 public:
  LPNonConvergenceError(const std::string& what, LPSolution last_iterate,
                        std::vector<double> residual_history);

  const LPSolution& last_iterate() const { return last_iterate_; }
  const std::vector<double>& residual_history() const { return history_; }

 private:
  LPSolution last_iterate_;
  std::vector<double> history_;
};

/// One sweep of the coupled pair. For each cell and direction the two
/// diamond-difference balance equations
///   mu d(p_i Psi_i)/dx + Sigma_ti p_i Psi_i
///     + eta|mu| (p_i Psi_i / lambda_i - p_j Psi_j / lambda_j) = E_i / 2
/// are solved exactly as a 2x2 system (coupling implicit, not lagged).
/// E_i is the isotropic emission of material i including the p_i weight:
/// E_i = sigma_si * (p_i phi_i) + p_i Q_i. The diamond closure is applied to
/// the conserved quantities p_i Psi_i.
LPSweepResult lp_sweep(const LPProblem& problem, const Mesh& mesh,
                       const Quadrature& quad, const Eigen::ArrayXd& emission1,
                       const Eigen::ArrayXd& emission2);

/// Source iteration on the two scattering sources; converged when both
/// component scalar fluxes change by less than tol (plus the particle-balance
/// guard used in solve_fixed_source).
LPSolution solve_lp(const LPProblem& problem, const SolveOptions& opts = {});

double lp_flux_at_origin(const LPSolution& sol);

/// CSV rows `x,mean_scalar_flux,phi1,phi2`; the header records eta and
/// whether it came from the adjustment rule.
void write_lp_csv(std::ostream& os, const LPSolution& sol);

}  // namespace slabmix
