#include "slabmix/problems.hpp"

#include <stdexcept>
#include <string>

#include "slabmix/mesh.hpp"

namespace slabmix {
namespace {

// Scattering cross sections of material 1 for the fixed-width solid/void
// sets, indexed by choice 1..3.
constexpr double kScatteringChoices[3][3] = {
    {0.99, 0.95, 0.9},   // set D
    {0.7, 0.5, 0.3},     // set E
    {0.1, 0.05, 0.0},    // set F
};

}  // namespace

ProblemSet parse_set(std::string_view id) {
  if (id.size() == 1) {
    switch (id[0]) {
      case 'A': case 'a': return ProblemSet::kA;
      case 'B': case 'b': return ProblemSet::kB;
      case 'C': case 'c': return ProblemSet::kC;
      case 'D': case 'd': return ProblemSet::kD;
      case 'E': case 'e': return ProblemSet::kE;
      case 'F': case 'f': return ProblemSet::kF;
    }
  }
  throw std::invalid_argument("unknown problem set '" + std::string(id) + "'");
}

char set_letter(ProblemSet set) {
  switch (set) {
    case ProblemSet::kA: return 'A';
    case ProblemSet::kB: return 'B';
    case ProblemSet::kC: return 'C';
    case ProblemSet::kD: return 'D';
    case ProblemSet::kE: return 'E';
    case ProblemSet::kF: return 'F';
  }
  return '?';
}

bool is_diffusive(ProblemSet set) {
  return set == ProblemSet::kA || set == ProblemSet::kB || set == ProblemSet::kC;
}

ProblemConfig resolve_problem(ProblemSet set, int value) {
  ProblemConfig config;
  config.set = set;

  if (is_diffusive(set)) {
    // Layered diffusive slabs: material 1 has sigma_t = 1, absorption and
    // source scaled by 1/M^2; material 2 is a void. The slab holds M mean
    // layer pairs.
    if (value <= 0) {
      throw std::invalid_argument("diffusive sets require M > 0");
    }
    config.m = value;
    const double m2 = static_cast<double>(value) * value;
    const double sigma_a1 = 0.1 / m2;
    const double q1 = 0.2 / m2;
    config.m1 = MaterialSpec(1.0, 1.0 - sigma_a1, q1);
    config.m2 = MaterialSpec();
    switch (set) {
      case ProblemSet::kA: config.stats = MixingStats(1.0, 0.5); break;
      case ProblemSet::kB: config.stats = MixingStats(1.0, 1.0); break;
      default:             config.stats = MixingStats(0.5, 1.0); break;
    }
    config.half_width =
        0.5 * (config.stats.lambda1 + config.stats.lambda2) * value;
  } else {
    // Fixed-width solid/void slabs, total width 40, distinguished by the
    // scattering cross section of material 1.
    if (value < 1 || value > 3) {
      throw std::invalid_argument("non-diffusive sets require choice 1..3");
    }
    config.choice = value;
    const int row = static_cast<int>(set) - static_cast<int>(ProblemSet::kD);
    const double sigma_s1 = kScatteringChoices[row][value - 1];
    config.m1 = MaterialSpec(1.0, sigma_s1, 0.2);
    config.m2 = MaterialSpec();
    config.stats = MixingStats(1.0, 1.0);
    config.half_width = 20.0;
  }

  config.dx_max = default_dx_max(config.m1, config.m2, config.stats);
  return config;
}

ProblemConfig resolve_problem(std::string_view set_id, int value) {
  return resolve_problem(parse_set(set_id), value);
}

}  // namespace slabmix
