#include "slabmix/realization.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "slabmix/csv.hpp"
#include "slabmix/rng.hpp"

namespace slabmix {

Realization::Realization(std::vector<Segment> segments, double total_width)
    : segments_(std::move(segments)), total_width_(total_width) {
  if (!(total_width_ > 0.0)) {
    throw std::invalid_argument("Realization: total width must be positive");
  }
  if (segments_.empty()) {
    throw std::invalid_argument("Realization: no segments");
  }
  double sum = 0.0;
  int previous = 0;
  for (const Segment& s : segments_) {
    if (s.material != 1 && s.material != 2) {
      throw std::invalid_argument("Realization: material index must be 1 or 2");
    }
    if (s.material == previous) {
      throw std::invalid_argument("Realization: segments must alternate materials");
    }
    if (!(s.width > 0.0)) {
      throw std::invalid_argument("Realization: segment widths must be positive");
    }
    sum += s.width;
    previous = s.material;
  }
  if (std::abs(sum - total_width_) > 1e-12 * total_width_) {
    throw std::invalid_argument("Realization: widths do not sum to the total width");
  }
}

double Realization::material_width(int material) const {
  double sum = 0.0;
  for (const Segment& s : segments_) {
    if (s.material == material) sum += s.width;
  }
  return sum;
}

Realization sample_realization(const MixingStats& stats, double total_width,
                               std::uint64_t seed) {
  if (!(total_width > 0.0)) {
    throw std::invalid_argument("sample_realization: total width must be positive");
  }
  Rng rng(seed);
  int material = rng.bernoulli(stats.p1()) ? 1 : 2;

  std::vector<Segment> segments;
  double filled = 0.0;
  while (filled < total_width) {
    const double mean = (material == 1) ? stats.lambda1 : stats.lambda2;
    double width = rng.exponential(mean);
    if (filled + width >= total_width) {
      width = total_width - filled;  // clip the last layer at the boundary
      filled = total_width;
    } else {
      filled += width;
    }
    if (width > 0.0) segments.push_back({material, width});
    material = 3 - material;
  }
  return Realization(std::move(segments), total_width);
}

void write_realization(std::ostream& os, const Realization& r) {
  for (const Segment& s : r.segments()) {
    os << s.material << ' ' << fmt17(s.width) << '\n';
  }
}

Realization read_realization(std::istream& is) {
  std::vector<Segment> segments;
  int material = 0;
  double width = 0.0;
  double total = 0.0;
  while (is >> material >> width) {
    segments.push_back({material, width});
    total += width;
  }
  if (segments.empty()) {
    throw std::runtime_error("read_realization: empty segment list");
  }
  return Realization(std::move(segments), total);
}

}  // namespace slabmix
