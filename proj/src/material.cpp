#include "slabmix/material.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slabmix {

MaterialSpec::MaterialSpec(double sigma_t_, double sigma_s_, double q_)
    : sigma_t(sigma_t_), sigma_s(sigma_s_), q(q_) {
  if (!(sigma_t >= 0.0) || !(sigma_s >= 0.0) || !(q >= 0.0)) {
    throw std::invalid_argument("MaterialSpec: negative cross section or source");
  }
  if (sigma_s > sigma_t) {
    throw std::invalid_argument("MaterialSpec: sigma_s exceeds sigma_t (Sigma_a < 0)");
  }
}

MixingStats::MixingStats(double lambda1_, double lambda2_)
    : lambda1(lambda1_), lambda2(lambda2_) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::invalid_argument("MixingStats: mean layer widths must be positive");
  }
}

VolumeFractions volume_fractions(const MixingStats& stats) {
  return {stats.p1(), stats.p2()};
}

AveragedSpec volume_average(const MaterialSpec& m1, const MaterialSpec& m2,
                            const MixingStats& stats) {
  const double p1 = stats.p1();
  const double p2 = stats.p2();
  AveragedSpec avg;
  avg.sigma_t = p1 * m1.sigma_t + p2 * m2.sigma_t;
  avg.sigma_s = p1 * m1.sigma_s + p2 * m2.sigma_s;
  avg.sigma_a = avg.sigma_t - avg.sigma_s;
  avg.q = p1 * m1.q + p2 * m2.q;
  return avg;
}

double eta_factor(const AveragedSpec& avg) {
  if (avg.sigma_a <= 0.0) {
    throw std::domain_error(
        "eta_factor: undefined for zero averaged absorption (<Sigma_a> = " +
        std::to_string(avg.sigma_a) + "); choose eta explicitly");
  }
  return std::sqrt(avg.sigma_t / avg.sigma_a);
}

}  // namespace slabmix
