#pragma once

#include <cstdint>
#include <iosfwd>

#include "slabmix/flux_field.hpp"
#include "slabmix/material.hpp"
#include "slabmix/transport.hpp"

namespace slabmix {

/// Fixed uniform reporting grid over [-X, X] (even cell count, so x = 0 is
/// an edge).
struct ReportingGrid {
  double half_width = 0.0;
  int n_cells = 200;

  double dx() const { return 2.0 * half_width / n_cells; }
  Eigen::ArrayXd centers() const;
};

/// Volume-weighted restriction of a cell-centered field onto the grid: each
/// grid cell receives the width-weighted average of the source cells
/// overlapping it.
Eigen::ArrayXd map_to_grid(const Mesh& mesh, const Eigen::ArrayXd& cell_values,
                           const ReportingGrid& grid);
Eigen::ArrayXd map_to_grid(const FluxField& flux, const ReportingGrid& grid);

/// One-pass (Welford) mean/variance accumulator per grid point plus a
/// dedicated series for the value at x = 0.
class StreamingMoments {
 public:
  explicit StreamingMoments(int n_points);

  void add(const Eigen::ArrayXd& sample, double center_value);

  long n() const { return n_; }
  const Eigen::ArrayXd& mean() const { return mean_; }
  Eigen::ArrayXd variance() const;   // unbiased; zero for n < 2
  Eigen::ArrayXd std_error() const;  // sqrt(variance / n)
  double center_mean() const { return center_mean_; }
  double center_variance() const;
  double center_std_error() const;

 private:
  long n_ = 0;
  Eigen::ArrayXd mean_;
  Eigen::ArrayXd m2_;
  double center_mean_ = 0.0;
  double center_m2_ = 0.0;
};

/// Central-limit-theorem stopping rule: stop once
/// z * s / (sqrt(n) * mean) <= rel_halfwidth at x = 0 (optionally at every
/// grid point), with n_min <= n <= n_max.
struct StoppingRule {
  double rel_halfwidth = 0.01;
  double confidence = 0.95;
  long n_min = 100;
  long n_max = 200000;
  bool everywhere = false;
};

/// Two-sided normal quantile for the given confidence level.
double z_for_confidence(double confidence);

struct EnsembleConfig {
  MaterialSpec m1;
  MaterialSpec m2;
  MixingStats stats{1.0, 1.0};
  double half_width = 0.0;
  ReportingGrid grid;
  int quad_n = 16;
  double dx_max = 0.1;
  SolveOptions solve;
  StoppingRule stop;
  std::uint64_t base_seed = 1;
  int workers = 0;  // 0 = hardware concurrency
};

struct EnsembleStats {
  ReportingGrid grid;
  Eigen::ArrayXd mean;
  Eigen::ArrayXd std_error;
  long n_realizations = 0;
  double center_mean = 0.0;
  double center_std_error = 0.0;
  double ci_rel_halfwidth = 0.0;  // achieved, at x = 0
  double z = 0.0;
  bool converged = false;
  double wall_seconds = 0.0;
};

/// Runs the benchmark: samples realization k with seed derive_seed(base, k),
/// meshes and solves it, maps the scalar flux onto the grid, and accumulates
/// until the stopping rule fires (or n_max, flagged non-converged). Workers
/// solve realizations concurrently; accumulation happens in realization-index
/// order, so results are independent of the worker count.
EnsembleStats run_ensemble(const EnsembleConfig& config);

/// (model - benchmark) / benchmark per grid point; NaN where the benchmark
/// mean is not positive.
Eigen::ArrayXd relative_error(const Eigen::ArrayXd& model_on_grid,
                              const EnsembleStats& benchmark);

/// CSV rows `x,mean_flux,std_error,n` followed by a summary line.
void write_ensemble_csv(std::ostream& os, const EnsembleStats& stats);

}  // namespace slabmix
