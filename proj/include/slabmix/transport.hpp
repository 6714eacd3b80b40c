#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "slabmix/flux_field.hpp"
#include "slabmix/quadrature.hpp"

namespace slabmix {

struct SweepResult {
  Eigen::MatrixXd angular;  // cell-centered, (direction, cell)
  Eigen::ArrayXd scalar;    // sum_n w_n psi_n per cell
  double outflow_left = 0.0;
  double outflow_right = 0.0;
  long negative_count = 0;
};

/// One diamond-difference transport sweep with vacuum inflow at both faces.
/// `emission` is the full isotropic source per cell (scattering included by
/// the caller); each direction satisfies
///   mu (psi_out - psi_in)/dx + sigma_t psi_c = emission / 2,
///   psi_c = (psi_in + psi_out)/2.
SweepResult sweep(const Mesh& mesh, const Quadrature& quad,
                  const Eigen::ArrayXd& emission);

struct SolveOptions {
  double tol = 1e-8;
  long max_iters = 100000;
  bool keep_angular = false;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, FluxField last_iterate,
                      std::vector<double> residual_history);

  const FluxField& last_iterate() const { return last_iterate_; }
  const std::vector<double>& residual_history() const { return history_; }

 private:
  FluxField last_iterate_;
  std::vector<double> history_;
};

/// Source-iteration solution of the fixed-source problem
///   mu dpsi/dx + sigma_t psi = (sigma_s phi + q)/2
/// with vacuum boundaries. Iterates until the max-cell relative change in
/// the scalar flux drops below tol and the lagged-scattering particle-balance
/// defect is below tol relative to the total source (so converged fields
/// balance to well within 10*tol). Throws NonConvergenceError at max_iters.
FluxField solve_fixed_source(const Mesh& mesh, const Quadrature& quad,
                             const SolveOptions& opts = {},
                             ModelTag tag = ModelTag::kBenchmarkRealization);

}  // namespace slabmix
