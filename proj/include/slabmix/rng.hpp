#pragma once

#include <cstdint>
#include <random>

namespace slabmix {

/// One step of the splitmix64 sequence (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for stream k of an ensemble rooted at base_seed. Streams are
/// independent of each other and of evaluation order.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream);

/// mt19937_64 with explicit floating-point conversions, so draws are
/// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform();

  /// Strictly positive exponential draw with the given mean (inverse CDF).
  double exponential(double mean);

  /// True with probability p.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace slabmix
