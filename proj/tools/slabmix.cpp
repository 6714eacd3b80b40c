// Command-line front end: problem registry, model orchestration, table and
// convergence-study regeneration, CSV emission.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "slabmix/csv.hpp"
#include "slabmix/models.hpp"
#include "slabmix/problems.hpp"
#include "slabmix/realization.hpp"
#include "slabmix/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slabmix;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  double dx_max = 0.0;  // 0 = per-problem default
  double tol = 1e-8;
  long max_iters = 100000;
  int quad = 16;
  int workers = 0;
  int grid_cells = 200;
  double ci = 0.01;
  double confidence = 0.95;
  long min_n = 100;
  long max_n = 200000;
  bool ci_everywhere = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file; flags override it");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "base seed for realization streams");
  cmd->add_option("--dx-max", opts.dx_max, "max cell width (0 = problem default)");
  cmd->add_option("--tol", opts.tol, "source-iteration relative tolerance");
  cmd->add_option("--max-iters", opts.max_iters, "source-iteration cap");
  cmd->add_option("--quad", opts.quad, "Gauss-Legendre order");
  cmd->add_option("--workers", opts.workers, "ensemble worker threads (0 = auto)");
  cmd->add_option("--grid-cells", opts.grid_cells, "ensemble reporting-grid cells");
  cmd->add_option("--ci", opts.ci, "target relative CI half-width at x = 0");
  cmd->add_option("--confidence", opts.confidence, "CI confidence level");
  cmd->add_option("--min-n", opts.min_n, "minimum realizations");
  cmd->add_option("--max-n", opts.max_n, "maximum realizations");
  cmd->add_flag("--ci-everywhere", opts.ci_everywhere,
                "apply the stopping rule at every grid point");
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file: " + path);
  json j;
  is >> j;
  return j;
}

// Flags override the config file: only fields absent from the command line
// are filled in from JSON (keys mirror the long flag names).
void merge_common(CLI::App* cmd, CommonOpts& opts) {
  if (opts.config_path.empty()) return;
  const json j = load_json(opts.config_path);
  auto take = [&](const char* flag, const char* key, auto& target) {
    if (cmd->count(flag) == 0 && j.contains(key)) {
      target = j.at(key).get<std::decay_t<decltype(target)>>();
    }
  };
  take("--out", "out", opts.out_dir);
  take("--seed", "seed", opts.seed);
  take("--dx-max", "dx-max", opts.dx_max);
  take("--tol", "tol", opts.tol);
  take("--max-iters", "max-iters", opts.max_iters);
  take("--quad", "quad", opts.quad);
  take("--workers", "workers", opts.workers);
  take("--grid-cells", "grid-cells", opts.grid_cells);
  take("--ci", "ci", opts.ci);
  take("--confidence", "confidence", opts.confidence);
  take("--min-n", "min-n", opts.min_n);
  take("--max-n", "max-n", opts.max_n);
  take("--ci-everywhere", "ci-everywhere", opts.ci_everywhere);
}

ProblemConfig make_config(const std::string& set_id, int value,
                          const CommonOpts& opts) {
  ProblemConfig config = resolve_problem(set_id, value);
  if (opts.dx_max > 0.0) config.dx_max = opts.dx_max;
  config.quad_n = opts.quad;
  config.solve.tol = opts.tol;
  config.solve.max_iters = opts.max_iters;
  config.base_seed = opts.seed;
  config.workers = opts.workers;
  config.grid_cells = opts.grid_cells;
  config.stop.rel_halfwidth = opts.ci;
  config.stop.confidence = opts.confidence;
  config.stop.n_min = opts.min_n;
  config.stop.n_max = opts.max_n;
  config.stop.everywhere = opts.ci_everywhere;
  return config;
}

json knobs_json(const ProblemConfig& config) {
  json j;
  j["set"] = std::string(1, set_letter(config.set));
  if (config.m > 0) j["M"] = config.m;
  if (config.choice > 0) j["choice"] = config.choice;
  j["quad"] = config.quad_n;
  j["dx-max"] = config.dx_max;
  j["tol"] = config.solve.tol;
  j["max-iters"] = config.solve.max_iters;
  j["seed"] = config.base_seed;
  j["grid-cells"] = config.grid_cells;
  j["ci"] = config.stop.rel_halfwidth;
  j["confidence"] = config.stop.confidence;
  j["min-n"] = config.stop.n_min;
  j["max-n"] = config.stop.n_max;
  return j;
}

json ensemble_json(const EnsembleStats& stats) {
  json j;
  j["n_realizations"] = stats.n_realizations;
  j["ci_rel_halfwidth"] = stats.ci_rel_halfwidth;
  j["converged"] = stats.converged;
  j["wall_seconds"] = stats.wall_seconds;
  return j;
}

json solve_info_json(const SolveInfo& info) {
  json j;
  j["iterations"] = info.iterations;
  j["residual"] = info.residual;
  j["balance_residual"] = info.balance_residual;
  j["negative_angular_fluxes"] = info.negative_angular_fluxes;
  return j;
}

std::string path_in(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os = open_output(path);
  os << text;
}

int figure_for_set(ProblemSet set) {
  switch (set) {
    case ProblemSet::kA: return 5;
    case ProblemSet::kB: return 6;
    case ProblemSet::kC: return 7;
    case ProblemSet::kD: return 8;
    case ProblemSet::kE: return 9;
    default: return 10;
  }
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stoi(item));
  }
  if (values.empty()) throw std::runtime_error("empty integer list: " + csv);
  return values;
}

std::vector<std::string> parse_set_list(const std::string& csv) {
  std::vector<std::string> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(item);
  }
  if (values.empty()) throw std::runtime_error("empty set list: " + csv);
  return values;
}

// |Err|(distance) profile folded about the origin, matching the symmetric
// layout of the reporting grid.
void write_abs_error_profile(const std::string& path,
                             const Eigen::ArrayXd& model_on_grid,
                             const EnsembleStats& bench) {
  const Eigen::ArrayXd err = relative_error(model_on_grid, bench);
  const Eigen::ArrayXd centers = bench.grid.centers();
  const int n = bench.grid.n_cells;
  std::ofstream os = open_output(path);
  os << "distance,abs_rel_err\n";
  for (int i = n / 2; i < n; ++i) {
    const int mirror = n - 1 - i;
    const double folded = 0.5 * (std::abs(err[i]) + std::abs(err[mirror]));
    os << fmt17(centers[i]) << ',' << fmt17(folded) << "\n";
  }
}

int run_solve(const std::string& set_id, int m, int choice,
              const std::string& model, double eta_flag, bool eta_given,
              const CommonOpts& opts) {
  ProblemConfig config =
      make_config(set_id, is_diffusive(parse_set(set_id)) ? m : choice, opts);
  json meta;
  meta["knobs"] = knobs_json(config);
  meta["model"] = model;

  if (model == "benchmark") {
    const EnsembleStats stats = run_benchmark(config);
    std::ofstream os = open_output(path_in(opts.out_dir, "ensemble.csv"));
    write_ensemble_csv(os, stats);
    meta["benchmark"] = ensemble_json(stats);
    meta["phi0"] = stats.center_mean;
  } else if (model == "lp" || model == "alp") {
    double eta = 1.0;
    bool from_rule = false;
    if (eta_given) {
      eta = eta_flag;
    } else if (model == "alp") {
      eta = config.eta();
      from_rule = true;
    }
    const LPSolution sol = run_lp_model(config, eta, from_rule);
    std::ofstream os =
        open_output(path_in(opts.out_dir, "flux_" + model + ".csv"));
    write_lp_csv(os, sol);
    meta["solve"] = solve_info_json(sol.info);
    meta["eta"] = sol.eta;
    meta["phi0"] = lp_flux_at_origin(sol);
  } else if (model == "am") {
    const FluxField flux = run_atomic_mix(config);
    std::ofstream os = open_output(path_in(opts.out_dir, "flux_am.csv"));
    write_flux_csv(os, flux);
    meta["solve"] = solve_info_json(flux.info);
    meta["phi0"] = flux_at_origin(flux);
  } else if (model == "diff-am" || model == "diff-lp" || model == "diff-alp") {
    const DiffusionModels models = make_diffusion_models(config);
    const DiffusionProblem& p = (model == "diff-lp")   ? models.lp
                                : (model == "diff-am") ? models.atomic_mix
                                                       : models.alp;
    const ModelTag tag = (model == "diff-lp")   ? ModelTag::kDiffusionLp
                         : (model == "diff-am") ? ModelTag::kDiffusionAtomicMix
                                                : ModelTag::kDiffusionAlp;
    const FluxField flux = solve_diffusion_analytic(p, config.dx_max, tag);
    std::ofstream os =
        open_output(path_in(opts.out_dir, "flux_" + model + ".csv"));
    write_flux_csv(os, flux);
    std::ofstream cs =
        open_output(path_in(opts.out_dir, "coefficients_" + model + ".txt"));
    write_coefficients(cs, p, (model == "diff-lp") ? models.beta : 1.0);
    meta["phi0"] = flux_at_origin(flux);
    meta["beta"] = (model == "diff-lp") ? models.beta : 1.0;
  } else {
    std::cerr << "unknown model '" << model << "'\n";
    return 1;
  }

  write_text(path_in(opts.out_dir, "run_meta.json"), meta.dump(2) + "\n");
  std::cout << meta.dump(2) << "\n";
  return 0;
}

int run_table2(const std::string& sets_csv, const std::string& m_csv,
               const CommonOpts& opts) {
  const std::vector<std::string> sets = parse_set_list(sets_csv);
  const std::vector<int> m_list = parse_int_list(m_csv);

  std::ofstream table = open_output(path_in(opts.out_dir, "table2.csv"));
  table << "set,M,phi_benchmark,phi_lp,phi_alp,err_lp_pct,err_alp_pct\n";
  json meta;
  meta["entries"] = json::array();

  for (const std::string& set_id : sets) {
    for (int m : m_list) {
      ProblemConfig config = make_config(set_id, m, opts);
      const ModelResults results = run_models(config);
      const ModelRow& row = results.row;
      table << set_id << ',' << m << ','
            << fmt17(round_half_even(row.phi_benchmark, 4)) << ','
            << fmt17(round_half_even(row.phi_lp, 4)) << ','
            << fmt17(round_half_even(row.phi_alp, 4)) << ','
            << fmt17(round_half_even(100.0 * row.err_lp, 2)) << ','
            << fmt17(round_half_even(100.0 * row.err_alp, 2)) << "\n";

      json entry = knobs_json(config);
      entry["benchmark"] = ensemble_json(results.benchmark);
      entry["lp"] = solve_info_json(results.lp.info);
      entry["alp"] = solve_info_json(results.alp.info);
      entry["eta"] = results.alp.eta;
      entry["phi_benchmark"] = row.phi_benchmark;
      entry["phi_lp"] = row.phi_lp;
      entry["phi_alp"] = row.phi_alp;
      entry["phi_am"] = row.phi_am;
      meta["entries"].push_back(entry);

      // flux-profile data, one file per model and (set, M)
      const int fig = figure_for_set(config.set);
      const std::string base =
          "fig" + std::to_string(fig) + "_M" + std::to_string(m) + "_";
      {
        std::ofstream os =
            open_output(path_in(opts.out_dir, base + "benchmark.csv"));
        os << "x,mean_flux\n";
        const Eigen::ArrayXd centers = results.benchmark.grid.centers();
        for (int i = 0; i < centers.size(); ++i) {
          os << fmt17(centers[i]) << ',' << fmt17(results.benchmark.mean[i])
             << "\n";
        }
      }
      {
        std::ofstream os = open_output(path_in(opts.out_dir, base + "lp.csv"));
        write_lp_csv(os, results.lp);
      }
      {
        std::ofstream os = open_output(path_in(opts.out_dir, base + "alp.csv"));
        write_lp_csv(os, results.alp);
      }
      std::cout << "table2: set " << set_id << " M=" << m << " done (n="
                << results.benchmark.n_realizations << ")\n";
    }
  }
  write_text(path_in(opts.out_dir, "table2_meta.json"), meta.dump(2) + "\n");
  return 0;
}

int run_table4(const std::string& sets_csv, const CommonOpts& opts) {
  const std::vector<std::string> sets = parse_set_list(sets_csv);

  std::ofstream table = open_output(path_in(opts.out_dir, "table4.csv"));
  table << "set,sigma_s1,phi_benchmark,phi_lp,phi_alp,phi_am,"
           "err_lp_pct,err_alp_pct,err_am_pct\n";
  json meta;
  meta["entries"] = json::array();

  for (const std::string& set_id : sets) {
    const ProblemSet set = parse_set(set_id);
    if (is_diffusive(set)) {
      std::cerr << "table4 expects non-diffusive sets (D,E,F); got " << set_id
                << "\n";
      return 1;
    }
    for (int choice = 1; choice <= 3; ++choice) {
      ProblemConfig config = make_config(set_id, choice, opts);
      const ModelResults results = run_models(config);
      const ModelRow& row = results.row;
      // first table row is O(10): three printed decimals there, four below
      const int decimals = row.phi_benchmark >= 10.0 ? 3 : 4;
      table << set_id << ',' << fmt17(config.m1.sigma_s) << ','
            << fmt17(round_half_even(row.phi_benchmark, decimals)) << ','
            << fmt17(round_half_even(row.phi_lp, decimals)) << ','
            << fmt17(round_half_even(row.phi_alp, decimals)) << ','
            << fmt17(round_half_even(row.phi_am, decimals)) << ','
            << fmt17(round_half_even(100.0 * row.err_lp, 2)) << ','
            << fmt17(round_half_even(100.0 * row.err_alp, 2)) << ','
            << fmt17(round_half_even(100.0 * row.err_am, 2)) << "\n";

      json entry = knobs_json(config);
      entry["benchmark"] = ensemble_json(results.benchmark);
      entry["lp"] = solve_info_json(results.lp.info);
      entry["alp"] = solve_info_json(results.alp.info);
      entry["am"] = solve_info_json(results.atomic_mix.info);
      entry["eta"] = results.alp.eta;
      entry["phi_benchmark"] = row.phi_benchmark;
      entry["phi_lp"] = row.phi_lp;
      entry["phi_alp"] = row.phi_alp;
      entry["phi_am"] = row.phi_am;
      meta["entries"].push_back(entry);

      const int fig = figure_for_set(set);
      const std::string base = "fig" + std::to_string(fig) + "_s" +
                               fmt17(config.m1.sigma_s) + "_";
      write_abs_error_profile(
          path_in(opts.out_dir, base + "lp_abserr.csv"),
          map_to_grid(results.lp.mesh, results.lp.mean_scalar_flux,
                      results.benchmark.grid),
          results.benchmark);
      write_abs_error_profile(
          path_in(opts.out_dir, base + "alp_abserr.csv"),
          map_to_grid(results.alp.mesh, results.alp.mean_scalar_flux,
                      results.benchmark.grid),
          results.benchmark);
      write_abs_error_profile(
          path_in(opts.out_dir, base + "am_abserr.csv"),
          map_to_grid(results.atomic_mix, results.benchmark.grid),
          results.benchmark);
      std::cout << "table4: set " << set_id << " sigma_s1=" << config.m1.sigma_s
                << " done (n=" << results.benchmark.n_realizations << ")\n";
    }
  }
  write_text(path_in(opts.out_dir, "table4_meta.json"), meta.dump(2) + "\n");
  return 0;
}

int run_converge(const std::string& set_id, const std::string& m_csv,
                 const CommonOpts& opts) {
  const ProblemSet set = parse_set(set_id);
  const std::vector<int> m_list = parse_int_list(m_csv);
  ProblemConfig knobs;
  knobs.quad_n = opts.quad;
  knobs.solve.tol = opts.tol;
  knobs.solve.max_iters = opts.max_iters;
  knobs.dx_max = opts.dx_max;

  const std::vector<ConvergenceRow> rows = convergence_study(set, m_list, knobs);
  std::ofstream os = open_output(path_in(
      opts.out_dir, std::string("converge_") + set_letter(set) + ".csv"));
  os << "M,lp_transport,lp_diffusion,lp_gap,alp_transport,alp_diffusion,alp_gap\n";
  for (const ConvergenceRow& row : rows) {
    os << row.m << ',' << fmt17(row.lp_transport) << ','
       << fmt17(row.lp_diffusion) << ',' << fmt17(row.lp_gap) << ','
       << fmt17(row.alp_transport) << ',' << fmt17(row.alp_diffusion) << ','
       << fmt17(row.alp_gap) << "\n";
  }

  // profile data: transport and diffusion solutions per M
  const int fig = (set == ProblemSet::kA) ? 2 : (set == ProblemSet::kB) ? 3 : 4;
  for (int m : m_list) {
    ProblemConfig config = make_config(set_id, m, opts);
    const DiffusionModels diff = make_diffusion_models(config);
    const LPSolution lp = run_lp_model(config, 1.0, false);
    const LPSolution alp = run_lp_model(config, config.eta(), true);
    const std::string base =
        "fig" + std::to_string(fig) + "_M" + std::to_string(m) + "_";
    {
      std::ofstream f =
          open_output(path_in(opts.out_dir, base + "lp_transport.csv"));
      write_lp_csv(f, lp);
    }
    {
      std::ofstream f =
          open_output(path_in(opts.out_dir, base + "alp_transport.csv"));
      write_lp_csv(f, alp);
    }
    {
      std::ofstream f =
          open_output(path_in(opts.out_dir, base + "lp_diffusion.csv"));
      write_flux_csv(f, solve_diffusion_analytic(diff.lp, config.dx_max,
                                                 ModelTag::kDiffusionLp));
    }
    {
      std::ofstream f =
          open_output(path_in(opts.out_dir, base + "alp_diffusion.csv"));
      write_flux_csv(f, solve_diffusion_analytic(diff.alp, config.dx_max,
                                                 ModelTag::kDiffusionAlp));
    }
  }
  std::cout << "converge: set " << set_id << " written\n";
  return 0;
}

int run_ensemble_cmd(const std::string& set_id, int m, int choice,
                     const CommonOpts& opts) {
  ProblemConfig config =
      make_config(set_id, is_diffusive(parse_set(set_id)) ? m : choice, opts);
  const EnsembleStats stats = run_benchmark(config);
  std::ofstream os = open_output(path_in(opts.out_dir, "ensemble.csv"));
  write_ensemble_csv(os, stats);

  json meta;
  meta["knobs"] = knobs_json(config);
  meta["benchmark"] = ensemble_json(stats);
  meta["phi0"] = stats.center_mean;
  meta["phi0_std_error"] = stats.center_std_error;
  write_text(path_in(opts.out_dir, "ensemble_meta.json"), meta.dump(2) + "\n");
  std::cout << meta.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "1-D discrete-ordinates toolkit for binary Markovian stochastic slabs"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "run one model on one problem");
  CommonOpts solve_opts;
  std::string solve_set = "B", solve_model = "benchmark";
  int solve_m = 20, solve_choice = 1;
  double solve_eta = 0.0;
  add_common(solve_cmd, solve_opts);
  solve_cmd->add_option("--set", solve_set, "problem set A..F");
  solve_cmd->add_option("--M", solve_m, "layer count M (diffusive sets)");
  solve_cmd->add_option("--choice", solve_choice,
                        "scattering choice 1..3 (sets D..F)");
  solve_cmd->add_option("--model", solve_model,
                        "benchmark|lp|alp|am|diff-am|diff-lp|diff-alp");
  auto* eta_opt =
      solve_cmd->add_option("--eta", solve_eta, "override eta for lp/alp");

  auto* table2_cmd =
      app.add_subcommand("table2", "regenerate the diffusive comparison table");
  CommonOpts table2_opts;
  std::string table2_sets = "A,B,C", table2_m = "20,40,60";
  add_common(table2_cmd, table2_opts);
  table2_cmd->add_option("--sets", table2_sets, "comma-separated diffusive sets");
  table2_cmd->add_option("--M", table2_m, "comma-separated M values");

  auto* table4_cmd = app.add_subcommand(
      "table4", "regenerate the non-diffusive comparison table");
  CommonOpts table4_opts;
  std::string table4_sets = "D,E,F";
  add_common(table4_cmd, table4_opts);
  table4_cmd->add_option("--sets", table4_sets,
                         "comma-separated non-diffusive sets");

  auto* converge_cmd = app.add_subcommand(
      "converge", "transport-vs-diffusion convergence study");
  CommonOpts converge_opts;
  std::string converge_set = "B", converge_m = "20,40,60";
  add_common(converge_cmd, converge_opts);
  converge_cmd->add_option("--set", converge_set, "diffusive set");
  converge_cmd->add_option("--M", converge_m, "comma-separated M values");

  auto* ensemble_cmd =
      app.add_subcommand("ensemble", "run the benchmark ensemble only");
  CommonOpts ensemble_opts;
  std::string ensemble_set = "B";
  int ensemble_m = 20, ensemble_choice = 1;
  add_common(ensemble_cmd, ensemble_opts);
  ensemble_cmd->add_option("--set", ensemble_set, "problem set A..F");
  ensemble_cmd->add_option("--M", ensemble_m, "layer count M (diffusive sets)");
  ensemble_cmd->add_option("--choice", ensemble_choice, "scattering choice 1..3");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      merge_common(solve_cmd, solve_opts);
      return run_solve(solve_set, solve_m, solve_choice, solve_model, solve_eta,
                       eta_opt->count() > 0, solve_opts);
    }
    if (table2_cmd->parsed()) {
      merge_common(table2_cmd, table2_opts);
      return run_table2(table2_sets, table2_m, table2_opts);
    }
    if (table4_cmd->parsed()) {
      merge_common(table4_cmd, table4_opts);
      return run_table4(table4_sets, table4_opts);
    }
    if (converge_cmd->parsed()) {
      merge_common(converge_cmd, converge_opts);
      return run_converge(converge_set, converge_m, converge_opts);
    }
    if (ensemble_cmd->parsed()) {
      merge_common(ensemble_cmd, ensemble_opts);
      return run_ensemble_cmd(ensemble_set, ensemble_m, ensemble_choice,
                              ensemble_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
