#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "slabmix/material.hpp"

namespace slabmix {

struct Segment {
  int material;  // 1 or 2
  double width;
};

/// One sampled alternating-layer configuration of a slab of fixed width.
/// Segments strictly alternate materials, have positive widths, and sum to
/// the total width; the last sampled layer is clipped at the boundary.
class Realization {
 public:
  Realization(std::vector<Segment> segments, double total_width);

  const std::vector<Segment>& segments() const { return segments_; }
  double total_width() const { return total_width_; }

  /// Combined width of all segments of the given material.
  double material_width(int material) const;

 private:
  std::vector<Segment> segments_;
  double total_width_;
};

/// Samples layer widths from exponentials with means lambda_1 / lambda_2,
/// alternating materials, starting material chosen with probability p_i.
/// Deterministic for a fixed seed; ensemble realization k should pass
/// derive_seed(base_seed, k).
Realization sample_realization(const MixingStats& stats, double total_width,
                               std::uint64_t seed);

/// Plain-text segment list, one "material width" pair per line, widths with
/// 17 significant digits (lossless round trip).
void write_realization(std::ostream& os, const Realization& r);
Realization read_realization(std::istream& is);

}  // namespace slabmix
