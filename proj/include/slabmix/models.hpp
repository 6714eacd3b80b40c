#pragma once

#include <optional>
#include <vector>

#include "slabmix/diffusion.hpp"
#include "slabmix/ensemble.hpp"
#include "slabmix/lp.hpp"
#include "slabmix/problems.hpp"

namespace slabmix {

/// Atomic-mix transport: fixed-source solve on the volume-averaged data.
FluxField run_atomic_mix(const ProblemConfig& config);

/// Coupled-pair transport with the given eta (1 = standard model).
LPSolution run_lp_model(const ProblemConfig& config, double eta,
                        bool eta_from_rule);

/// Ensemble benchmark with the config's stopping rule.
EnsembleStats run_benchmark(const ProblemConfig& config);

struct DiffusionModels {
  double beta = 1.0;               // LP diffusion-coefficient factor
  DiffusionProblem atomic_mix;     // beta = 1
  DiffusionProblem lp;             // beta from lp_beta at eta = 1
  DiffusionProblem alp;            // beta = 1 (adjusted-model limit)
};

DiffusionModels make_diffusion_models(const ProblemConfig& config);

/// One comparison row: scalar flux of every model at x = 0 plus relative
/// errors against the benchmark.
struct ModelRow {
  double phi_benchmark = 0.0;
  double phi_lp = 0.0;
  double phi_alp = 0.0;
  double phi_am = 0.0;
  double err_lp = 0.0;  // signed fractions
  double err_alp = 0.0;
  double err_am = 0.0;
  double eta = 1.0;
};

struct ModelResults {
  ModelRow row;
  EnsembleStats benchmark;
  LPSolution lp;
  LPSolution alp;
  FluxField atomic_mix;
  // diffusive sets only
  std::optional<DiffusionModels> diffusion;
  std::optional<FluxField> diffusion_am;
  std::optional<FluxField> diffusion_lp;
  std::optional<FluxField> diffusion_alp;
};

/// Runs benchmark, standard and adjusted coupled models, atomic mix, and (for
/// diffusive sets) the three diffusion solutions.
ModelResults run_models(const ProblemConfig& config);

struct ConvergenceRow {
  int m = 0;
  double lp_transport = 0.0;   // scalar flux at x = 0
  double lp_diffusion = 0.0;
  double lp_gap = 0.0;         // |transport - diffusion| / diffusion
  double alp_transport = 0.0;
  double alp_diffusion = 0.0;
  double alp_gap = 0.0;
};

/// Transport-vs-diffusion gap for each M (diffusive sets only).
std::vector<ConvergenceRow> convergence_study(ProblemSet set,
                                              const std::vector<int>& m_list);
std::vector<ConvergenceRow> convergence_study(
    ProblemSet set, const std::vector<int>& m_list,
    const ProblemConfig& knobs_template);

/// Round half-to-even at the paper-table precision used for printed entries.
double round_half_even(double value, int decimals);

}  // namespace slabmix
