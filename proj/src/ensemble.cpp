#include "slabmix/ensemble.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "slabmix/csv.hpp"
#include "slabmix/quadrature.hpp"
#include "slabmix/realization.hpp"
#include "slabmix/rng.hpp"

namespace slabmix {

Eigen::ArrayXd ReportingGrid::centers() const {
  const double h = dx();
  Eigen::ArrayXd c(n_cells);
  for (int i = 0; i < n_cells; ++i) {
    c[i] = -half_width + (i + 0.5) * h;
  }
  return c;
}

Eigen::ArrayXd map_to_grid(const Mesh& mesh, const Eigen::ArrayXd& cell_values,
                           const ReportingGrid& grid) {
  const int n_src = mesh.n_cells();
  const int n_dst = grid.n_cells;
  const double dst_dx = grid.dx();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n_dst);

  int j = 0;  // source cell cursor
  for (int g = 0; g < n_dst; ++g) {
    const double lo = -grid.half_width + g * dst_dx;
    const double hi = lo + dst_dx;
    double acc = 0.0;
    while (j < n_src && mesh.edges[j + 1] <= lo) ++j;
    for (int k = j; k < n_src && mesh.edges[k] < hi; ++k) {
      const double overlap = std::min(hi, static_cast<double>(mesh.edges[k + 1])) -
                             std::max(lo, static_cast<double>(mesh.edges[k]));
      if (overlap > 0.0) acc += overlap * cell_values[k];
    }
    out[g] = acc / dst_dx;
  }
  return out;
}

Eigen::ArrayXd map_to_grid(const FluxField& flux, const ReportingGrid& grid) {
  return map_to_grid(flux.mesh, flux.scalar_flux, grid);
}

StreamingMoments::StreamingMoments(int n_points)
    : mean_(Eigen::ArrayXd::Zero(n_points)),
      m2_(Eigen::ArrayXd::Zero(n_points)) {}

void StreamingMoments::add(const Eigen::ArrayXd& sample, double center_value) {
  ++n_;
  const double inv_n = 1.0 / static_cast<double>(n_);
  // Welford running update, elementwise over the grid.
  Eigen::ArrayXd delta = sample - mean_;
  mean_ += delta * inv_n;
  m2_ += delta * (sample - mean_);

  const double d = center_value - center_mean_;
  center_mean_ += d * inv_n;
  center_m2_ += d * (center_value - center_mean_);
}

Eigen::ArrayXd StreamingMoments::variance() const {
  if (n_ < 2) return Eigen::ArrayXd::Zero(mean_.size());
  return m2_ / static_cast<double>(n_ - 1);
}

Eigen::ArrayXd StreamingMoments::std_error() const {
  return (variance() / static_cast<double>(std::max<long>(n_, 1))).sqrt();
}

double StreamingMoments::center_variance() const {
  if (n_ < 2) return 0.0;
  return center_m2_ / static_cast<double>(n_ - 1);
}

double StreamingMoments::center_std_error() const {
  return std::sqrt(center_variance() / static_cast<double>(std::max<long>(n_, 1)));
}

double z_for_confidence(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("z_for_confidence: confidence must be in (0,1)");
  }
  // Acklam's rational approximation to the normal quantile, |error| < 1.2e-9.
  const double p = 0.5 * (1.0 + confidence);  // two-sided
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double u = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double u = p - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  return x;
}

namespace {

struct RealizationSample {
  Eigen::ArrayXd on_grid;
  double center = 0.0;
};

RealizationSample solve_one(const EnsembleConfig& config, const Quadrature& quad,
                            std::uint64_t index) {
  const std::uint64_t seed = derive_seed(config.base_seed, index);
  const Realization r =
      sample_realization(config.stats, 2.0 * config.half_width, seed);
  const Mesh mesh = build_mesh(r, config.m1, config.m2, config.dx_max);
  const FluxField flux =
      solve_fixed_source(mesh, quad, config.solve, ModelTag::kBenchmarkRealization);
  RealizationSample sample;
  sample.on_grid = map_to_grid(mesh, flux.scalar_flux, config.grid);
  sample.center = flux_at_origin(flux);
  return sample;
}

bool rule_satisfied(const StreamingMoments& moments, const StoppingRule& rule,
                    double z, double& achieved) {
  const double mean = moments.center_mean();
  if (!(mean > 0.0)) return false;
  achieved = z * moments.center_std_error() / mean;
  if (achieved > rule.rel_halfwidth) return false;
  if (rule.everywhere) {
    const Eigen::ArrayXd se = moments.std_error();
    const Eigen::ArrayXd& m = moments.mean();
    for (int i = 0; i < m.size(); ++i) {
      if (!(m[i] > 0.0) || z * se[i] / m[i] > rule.rel_halfwidth) return false;
    }
  }
  return true;
}

}  // namespace

EnsembleStats run_ensemble(const EnsembleConfig& config) {
  if (!(config.half_width > 0.0)) {
    throw std::invalid_argument("run_ensemble: half_width must be positive");
  }
  ReportingGrid grid = config.grid;
  grid.half_width = config.half_width;
  if (grid.n_cells % 2 != 0) ++grid.n_cells;

  const auto t0 = std::chrono::steady_clock::now();
  const Quadrature quad = gauss_legendre(config.quad_n);
  EnsembleConfig cfg = config;
  cfg.grid = grid;

  int workers = config.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  const long batch = std::max<long>(1, 4L * workers);

  StreamingMoments moments(grid.n_cells);
  double achieved = std::numeric_limits<double>::infinity();
  const double z = z_for_confidence(config.stop.confidence);
  bool converged = false;

  std::vector<RealizationSample> results(batch);
  long issued = 0;
  while (!converged && moments.n() < config.stop.n_max) {
    const long count =
        std::min<long>(batch, config.stop.n_max - moments.n());
    std::atomic<long> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
      try {
        for (;;) {
          const long i = cursor.fetch_add(1);
          if (i >= count) break;
          results[i] = solve_one(cfg, quad, static_cast<std::uint64_t>(issued + i));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int t = 0; t < workers; ++t) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    // Reduce strictly in realization-index order; the stopping decision is
    // checked per sample so it cannot depend on batch or worker counts.
    for (long i = 0; i < count && !converged; ++i) {
      moments.add(results[i].on_grid, results[i].center);
      if (moments.n() >= config.stop.n_min &&
          rule_satisfied(moments, config.stop, z, achieved)) {
        converged = true;
      }
    }
    issued += count;
  }

  if (!converged) {
    // report the achieved half-width even when the rule never fired
    rule_satisfied(moments, config.stop, z, achieved);
  }

  EnsembleStats stats;
  stats.grid = grid;
  stats.mean = moments.mean();
  stats.std_error = moments.std_error();
  stats.n_realizations = moments.n();
  stats.center_mean = moments.center_mean();
  stats.center_std_error = moments.center_std_error();
  stats.ci_rel_halfwidth = achieved;
  stats.z = z;
  stats.converged = converged;
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return stats;
}

Eigen::ArrayXd relative_error(const Eigen::ArrayXd& model_on_grid,
                              const EnsembleStats& benchmark) {
  if (model_on_grid.size() != benchmark.mean.size()) {
    throw std::invalid_argument("relative_error: grids differ");
  }
  Eigen::ArrayXd err(model_on_grid.size());
  for (int i = 0; i < err.size(); ++i) {
    err[i] = (benchmark.mean[i] > 0.0)
                 ? (model_on_grid[i] - benchmark.mean[i]) / benchmark.mean[i]
                 : std::numeric_limits<double>::quiet_NaN();
  }
  return err;
}

void write_ensemble_csv(std::ostream& os, const EnsembleStats& stats) {
  os << "x,mean_flux,std_error,n\n";
  const Eigen::ArrayXd centers = stats.grid.centers();
  for (int i = 0; i < stats.grid.n_cells; ++i) {
    os << fmt17(centers[i]) << ',' << fmt17(stats.mean[i]) << ','
       << fmt17(stats.std_error[i]) << ',' << stats.n_realizations << "\n";
  }
  os << "# summary: n_realizations=" << stats.n_realizations
     << ", ci_rel_halfwidth=" << fmt17(stats.ci_rel_halfwidth)
     << ", z=" << fmt17(stats.z)
     << ", converged=" << (stats.converged ? "yes" : "no")
     << ", wall_seconds=" << fmt17(stats.wall_seconds) << "\n";
}

}  // namespace slabmix
