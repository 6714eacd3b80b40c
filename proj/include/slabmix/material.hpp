#pragma once

namespace slabmix {

/// Cross sections and isotropic source density of one homogeneous material.
/// All quantities are macroscopic, in units of 1/length (source: particles
/// per unit length). A default-constructed spec is a void.
struct MaterialSpec {
  double sigma_t = 0.0;
  double sigma_s = 0.0;
  double q = 0.0;

  MaterialSpec() = default;
  MaterialSpec(double sigma_t, double sigma_s, double q);

  double sigma_a() const { return sigma_t - sigma_s; }
};

/// Mean layer widths of the two materials in a Markovian alternating slab.
struct MixingStats {
  double lambda1;
  double lambda2;

  MixingStats(double lambda1, double lambda2);

  /// Volume fraction of material i: lambda_i / (lambda_1 + lambda_2).
  double p1() const { return lambda1 / (lambda1 + lambda2); }
  double p2() const { return lambda2 / (lambda1 + lambda2); }
};

struct VolumeFractions {
  double p1;
  double p2;
};

VolumeFractions volume_fractions(const MixingStats& stats);

/// Volume-averaged (atomic mix) cross sections and source.
struct AveragedSpec {
  double sigma_t = 0.0;
  double sigma_s = 0.0;
  double sigma_a = 0.0;
  double q = 0.0;
};

AveragedSpec volume_average(const MaterialSpec& m1, const MaterialSpec& m2,
                            const MixingStats& stats);

/// Transition-rescale factor sqrt(<Sigma_t>/<Sigma_a>). Defined only for
/// nonzero averaged absorption; throws std::domain_error otherwise.
double eta_factor(const AveragedSpec& avg);

}  // namespace slabmix
