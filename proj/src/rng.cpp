#include "slabmix/rng.hpp"

#include <cmath>

namespace slabmix {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream) {
  // Two splitmix64 steps from a combined state; distinct (base, k) pairs land
  // on distinct, well-mixed seeds.
  std::uint64_t state = base_seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (stream + 0x9e3779b97f4a7c15ULL * (stream | 1ULL));
  splitmix64(state);
  return splitmix64(state);
}

double Rng::uniform() {
  // Top 53 bits -> [0,1).
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double mean) {
  double u = uniform();
  while (u == 0.0) u = uniform();  // keep the draw strictly positive
  return -mean * std::log1p(-u);
}

}  // namespace slabmix
