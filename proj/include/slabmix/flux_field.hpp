#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <string>

#include "slabmix/mesh.hpp"

namespace slabmix {

enum class ModelTag {
  kBenchmarkRealization,
  kBenchmarkEnsemble,
  kAtomicMix,
  kLp,
  kAlp,
  kDiffusionAtomicMix,
  kDiffusionLp,
  kDiffusionAlp,
};

std::string to_string(ModelTag tag);

/// Bookkeeping from an iterative solve.
struct SolveInfo {
  long iterations = 0;
  double residual = 0.0;          // final max-cell relative flux change
  double balance_residual = 0.0;  // |absorption + leakage - source| / source
  long negative_angular_fluxes = 0;  // cell-direction count, final sweep
  double outflow_left = 0.0;         // outgoing partial current at -X
  double outflow_right = 0.0;        // outgoing partial current at +X
};

/// Scalar flux (optionally angular flux) on a mesh, tagged with the model
/// that produced it.
struct FluxField {
  Mesh mesh;
  Eigen::ArrayXd scalar_flux;  // per cell center
  std::optional<Eigen::MatrixXd> angular_flux;  // (direction, cell)
  ModelTag tag = ModelTag::kBenchmarkRealization;
  SolveInfo info;
};

/// Scalar flux at x = 0: mean of the two cell-centered values adjacent to
/// the origin edge.
double flux_at_origin(const Mesh& mesh, const Eigen::ArrayXd& scalar_flux);
double flux_at_origin(const FluxField& flux);

/// CSV rows `x,scalar_flux_<tag>`, one per cell center, 17 significant digits.
void write_flux_csv(std::ostream& os, const FluxField& flux);

}  // namespace slabmix
