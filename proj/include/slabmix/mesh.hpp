#pragma once

#include <Eigen/Core>

#include "slabmix/material.hpp"
#include "slabmix/realization.hpp"

namespace slabmix {

/// Spatial mesh over [-X, X] with piecewise-constant data per cell.
/// Every material interface of the source realization is a cell edge, and
/// x = 0 is always a cell edge.
struct Mesh {
  Eigen::ArrayXd edges;    // n_cells + 1, strictly increasing, [-X .. X]
  Eigen::ArrayXd sigma_t;  // per cell
  Eigen::ArrayXd sigma_s;
  Eigen::ArrayXd q;
  Eigen::ArrayXi material;  // 1, 2, or 0 for averaged data
  int merged_segments = 0;  // degenerate layers folded into a neighbor

  int n_cells() const { return static_cast<int>(sigma_t.size()); }
  double half_width() const { return edges[edges.size() - 1]; }
  Eigen::ArrayXd widths() const;
  Eigen::ArrayXd centers() const;

  /// Index of the edge sitting at x == 0.
  int origin_edge() const;
};

/// Meshes a realization spanning [-X, X] (X = total_width / 2): each layer is
/// split into equal cells of width <= dx_max. Layers thinner than 1e-12 * X
/// are merged into a neighbor (counted, warning to stderr).
Mesh build_mesh(const Realization& r, const MaterialSpec& m1,
                const MaterialSpec& m2, double dx_max);

/// Uniform mesh with homogeneous (averaged) data; cell count forced even so
/// the origin is an edge.
Mesh build_mesh(const AveragedSpec& avg, double half_width, double dx_max);

/// Default cell-size policy: at most 0.1 optical thickness per cell in the
/// densest material and at least 10 cells per mean layer width.
double default_dx_max(const MaterialSpec& m1, const MaterialSpec& m2,
                      const MixingStats& stats);

}  // namespace slabmix
