#include "slabmix/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

namespace slabmix {
namespace {

struct Piece {
  int material;
  double begin;
  double end;
};

// Splits the realization at x = 0 and drops degenerate slivers (merged into
// the neighbor simply by extending it).
std::vector<Piece> layout_pieces(const Realization& r, double half_width,
                                 int& merged) {
  const double tiny = 1e-12 * half_width;
  std::vector<Piece> pieces;
  double x = -half_width;
  for (const Segment& s : r.segments()) {
    double begin = x;
    double end = x + s.width;
    x = end;
    if (begin < 0.0 && end > 0.0) {
      pieces.push_back({s.material, begin, 0.0});
      pieces.push_back({s.material, 0.0, end});
    } else {
      pieces.push_back({s.material, begin, end});
    }
  }
  pieces.back().end = half_width;  // absorb accumulation roundoff

  std::vector<Piece> kept;
  for (const Piece& p : pieces) {
    if (p.end - p.begin < tiny) {
      ++merged;
      if (!kept.empty()) {
        kept.back().end = p.end;
      }  // a leading sliver just shifts the next piece's start
      continue;
    }
    if (!kept.empty() && kept.back().end != p.begin) {
      Piece shifted = p;
      shifted.begin = kept.back().end;
      kept.push_back(shifted);
      continue;
    }
    kept.push_back(p);
  }
  if (kept.empty()) {
    throw std::invalid_argument("build_mesh: realization has no usable layers");
  }
  kept.front().begin = -half_width;
  kept.back().end = half_width;
  if (merged > 0) {
    std::cerr << "build_mesh: merged " << merged
              << " degenerate layer(s) into a neighbor\n";
  }
  return kept;
}

}  // namespace

Eigen::ArrayXd Mesh::widths() const {
  return edges.tail(n_cells()) - edges.head(n_cells());
}

Eigen::ArrayXd Mesh::centers() const {
  return 0.5 * (edges.tail(n_cells()) + edges.head(n_cells()));
}

int Mesh::origin_edge() const {
  const double tol = 1e-12 * half_width();
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (std::abs(edges[i]) <= tol) return i;
  }
  throw std::logic_error("Mesh: no edge at x = 0");
}

Mesh build_mesh(const Realization& r, const MaterialSpec& m1,
                const MaterialSpec& m2, double dx_max) {
  if (!(dx_max > 0.0)) {
    throw std::invalid_argument("build_mesh: dx_max must be positive");
  }
  const double half_width = 0.5 * r.total_width();
  int merged = 0;
  const std::vector<Piece> pieces = layout_pieces(r, half_width, merged);

  std::vector<double> edges{-half_width};
  std::vector<double> st, ss, q;
  std::vector<int> mat;
  for (const Piece& p : pieces) {
    const MaterialSpec& m = (p.material == 1) ? m1 : m2;
    const double width = p.end - p.begin;
    const int n_sub = std::max(1, static_cast<int>(std::ceil(width / dx_max)));
    for (int k = 1; k <= n_sub; ++k) {
      edges.push_back(p.begin + width * k / n_sub);
      st.push_back(m.sigma_t);
      ss.push_back(m.sigma_s);
      q.push_back(m.q);
      mat.push_back(p.material);
    }
    edges.back() = p.end;  // land on the interface exactly
  }

  Mesh mesh;
  mesh.edges = Eigen::Map<const Eigen::ArrayXd>(edges.data(), edges.size());
  mesh.sigma_t = Eigen::Map<const Eigen::ArrayXd>(st.data(), st.size());
  mesh.sigma_s = Eigen::Map<const Eigen::ArrayXd>(ss.data(), ss.size());
  mesh.q = Eigen::Map<const Eigen::ArrayXd>(q.data(), q.size());
  mesh.material = Eigen::Map<const Eigen::ArrayXi>(mat.data(), mat.size());
  mesh.merged_segments = merged;
  return mesh;
}

Mesh build_mesh(const AveragedSpec& avg, double half_width, double dx_max) {
  if (!(half_width > 0.0) || !(dx_max > 0.0)) {
    throw std::invalid_argument("build_mesh: domain and dx_max must be positive");
  }
  int n = static_cast<int>(std::ceil(2.0 * half_width / dx_max));
  if (n % 2 != 0) ++n;  // even count: x = 0 is an edge

  Mesh mesh;
  mesh.edges = Eigen::ArrayXd::LinSpaced(n + 1, -half_width, half_width);
  mesh.edges[n / 2] = 0.0;
  mesh.sigma_t = Eigen::ArrayXd::Constant(n, avg.sigma_t);
  mesh.sigma_s = Eigen::ArrayXd::Constant(n, avg.sigma_s);
  mesh.q = Eigen::ArrayXd::Constant(n, avg.q);
  mesh.material = Eigen::ArrayXi::Zero(n);
  return mesh;
}

double default_dx_max(const MaterialSpec& m1, const MaterialSpec& m2,
                      const MixingStats& stats) {
  const double sigma_max = std::max(m1.sigma_t, m2.sigma_t);
  double dx = 0.1 * std::min(stats.lambda1, stats.lambda2);
  if (sigma_max > 0.0) dx = std::min(dx, 0.1 / sigma_max);
  return dx;
}

}  // namespace slabmix
