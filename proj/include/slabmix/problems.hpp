#pragma once

#include <cstdint>
#include <string_view>

#include "slabmix/ensemble.hpp"
#include "slabmix/material.hpp"
#include "slabmix/transport.hpp"

namespace slabmix {

/// Built-in problem registry. Sets A-C are diffusive (cross sections scaled
/// by a layer-count parameter M); sets D-F are fixed-width solid/void slabs
/// distinguished by the scattering cross section of material 1.
enum class ProblemSet { kA, kB, kC, kD, kE, kF };

ProblemSet parse_set(std::string_view id);
char set_letter(ProblemSet set);
bool is_diffusive(ProblemSet set);

struct ProblemConfig {
  ProblemSet set;
  int m = 0;       // diffusive sets: layers-per-pair count (eps = 1/M)
  int choice = 0;  // non-diffusive sets: scattering choice 1..3

  MaterialSpec m1;
  MaterialSpec m2;
  MixingStats stats{1.0, 1.0};
  double half_width = 0.0;

  // numerical knobs
  int quad_n = 16;
  double dx_max = 0.1;
  SolveOptions solve;
  StoppingRule stop;
  int grid_cells = 200;
  std::uint64_t base_seed = 1;
  int workers = 0;

  AveragedSpec averaged() const { return volume_average(m1, m2, stats); }
  double eta() const { return eta_factor(averaged()); }
};

/// Diffusive sets: value = M (> 0). Non-diffusive sets: value = choice (1-3).
ProblemConfig resolve_problem(ProblemSet set, int value);
ProblemConfig resolve_problem(std::string_view set_id, int value);

}  // namespace slabmix
