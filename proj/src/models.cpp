#include "slabmix/models.hpp"

#include <cmath>
#include <stdexcept>

namespace slabmix {

FluxField run_atomic_mix(const ProblemConfig& config) {
  const Mesh mesh =
      build_mesh(config.averaged(), config.half_width, config.dx_max);
  const Quadrature quad = gauss_legendre(config.quad_n);
  return solve_fixed_source(mesh, quad, config.solve, ModelTag::kAtomicMix);
}

LPSolution run_lp_model(const ProblemConfig& config, double eta,
                        bool eta_from_rule) {
  LPProblem problem;
  problem.m1 = config.m1;
  problem.m2 = config.m2;
  problem.stats = config.stats;
  problem.half_width = config.half_width;
  problem.eta = eta;
  problem.eta_from_rule = eta_from_rule;
  problem.quad_n = config.quad_n;
  problem.dx_max = config.dx_max;
  return solve_lp(problem, config.solve);
}

EnsembleStats run_benchmark(const ProblemConfig& config) {
  EnsembleConfig ec;
  ec.m1 = config.m1;
  ec.m2 = config.m2;
  ec.stats = config.stats;
  ec.half_width = config.half_width;
  ec.grid.half_width = config.half_width;
  ec.grid.n_cells = config.grid_cells;
  ec.quad_n = config.quad_n;
  ec.dx_max = config.dx_max;
  ec.solve = config.solve;
  ec.stop = config.stop;
  ec.base_seed = config.base_seed;
  ec.workers = config.workers;
  return run_ensemble(ec);
}

DiffusionModels make_diffusion_models(const ProblemConfig& config) {
  const AveragedSpec avg = config.averaged();
  DiffusionModels models;
  models.beta = lp_beta(config.m1, config.m2, config.stats, 1.0);
  models.atomic_mix = make_diffusion_problem(avg, config.half_width, 1.0);
  models.lp = make_diffusion_problem(avg, config.half_width, models.beta);
  models.alp = make_diffusion_problem(avg, config.half_width, 1.0);
  return models;
}

ModelResults run_models(const ProblemConfig& config) {
  ModelResults out;

  out.benchmark = run_benchmark(config);
  out.lp = run_lp_model(config, 1.0, false);
  out.alp = run_lp_model(config, config.eta(), true);
  out.atomic_mix = run_atomic_mix(config);

  out.row.phi_benchmark = out.benchmark.center_mean;
  out.row.phi_lp = lp_flux_at_origin(out.lp);
  out.row.phi_alp = lp_flux_at_origin(out.alp);
  out.row.phi_am = flux_at_origin(out.atomic_mix);
  out.row.eta = out.alp.eta;

  const double bench = out.row.phi_benchmark;
  if (bench > 0.0) {
    out.row.err_lp = (out.row.phi_lp - bench) / bench;
    out.row.err_alp = (out.row.phi_alp - bench) / bench;
    out.row.err_am = (out.row.phi_am - bench) / bench;
  } else {
    throw std::runtime_error("run_models: benchmark flux at x=0 is not positive");
  }

  if (is_diffusive(config.set)) {
    const DiffusionModels diff = make_diffusion_models(config);
    out.diffusion = diff;
    out.diffusion_am = solve_diffusion_analytic(diff.atomic_mix, config.dx_max,
                                                ModelTag::kDiffusionAtomicMix);
    out.diffusion_lp = solve_diffusion_analytic(diff.lp, config.dx_max,
                                                ModelTag::kDiffusionLp);
    out.diffusion_alp = solve_diffusion_analytic(diff.alp, config.dx_max,
                                                 ModelTag::kDiffusionAlp);
  }
  return out;
}

std::vector<ConvergenceRow> convergence_study(ProblemSet set,
                                              const std::vector<int>& m_list) {
  ProblemConfig knobs;
  knobs.dx_max = 0.0;  // per-M policy default
  return convergence_study(set, m_list, knobs);
}

std::vector<ConvergenceRow> convergence_study(
    ProblemSet set, const std::vector<int>& m_list,
    const ProblemConfig& knobs_template) {
  if (!is_diffusive(set)) {
    throw std::invalid_argument("convergence_study: requires a diffusive set");
  }
  std::vector<ConvergenceRow> rows;
  rows.reserve(m_list.size());
  for (int m : m_list) {
    ProblemConfig config = resolve_problem(set, m);
    config.quad_n = knobs_template.quad_n;
    config.solve = knobs_template.solve;
    if (knobs_template.dx_max > 0.0) config.dx_max = knobs_template.dx_max;

    const DiffusionModels diff = make_diffusion_models(config);
    const LPSolution lp = run_lp_model(config, 1.0, false);
    const LPSolution alp = run_lp_model(config, config.eta(), true);

    ConvergenceRow row;
    row.m = m;
    row.lp_transport = lp_flux_at_origin(lp);
    row.lp_diffusion = diffusion_flux_at(diff.lp, 0.0);
    row.lp_gap = std::abs(row.lp_transport - row.lp_diffusion) / row.lp_diffusion;
    row.alp_transport = lp_flux_at_origin(alp);
    row.alp_diffusion = diffusion_flux_at(diff.alp, 0.0);
    row.alp_gap =
        std::abs(row.alp_transport - row.alp_diffusion) / row.alp_diffusion;
    rows.push_back(row);
  }
  return rows;
}

double round_half_even(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::nearbyint(value * scale) / scale;
}

}  // namespace slabmix
