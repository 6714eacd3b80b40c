#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "slabmix/ensemble.hpp"
#include "slabmix/problems.hpp"
#include "slabmix/realization.hpp"
#include "slabmix/rng.hpp"

using namespace slabmix;

TEST_CASE("grid mapping is the identity on a matching mesh") {
  AveragedSpec avg;
  avg.sigma_t = 1.0;
  const Mesh mesh = build_mesh(avg, 10.0, 0.1);
  ReportingGrid grid{10.0, 200};
  Rng rng(5);
  Eigen::ArrayXd values(mesh.n_cells());
  for (int i = 0; i < values.size(); ++i) values[i] = rng.uniform();
  const Eigen::ArrayXd mapped = map_to_grid(mesh, values, grid);
  CHECK(((mapped - values).abs()).maxCoeff() < 1e-12);
}

TEST_CASE("grid mapping preserves constants") {
  const Realization r = sample_realization(MixingStats(1.0, 0.5), 20.0, 42);
  const Mesh mesh = build_mesh(r, MaterialSpec(1.0, 0.0, 0.0), MaterialSpec(), 0.07);
  ReportingGrid grid{10.0, 50};
  const Eigen::ArrayXd mapped =
      map_to_grid(mesh, Eigen::ArrayXd::Constant(mesh.n_cells(), 3.25), grid);
  CHECK((mapped - 3.25).abs().maxCoeff() < 1e-12);
}

TEST_CASE("grid mapping reproduces linear fields to second order") {
  const Realization r = sample_realization(MixingStats(1.0, 1.0), 20.0, 7);
  const double slope = 0.8;
  const double offset = 5.0;

  auto run = [&](double dx_src) {
    const Mesh mesh =
        build_mesh(r, MaterialSpec(1.0, 0.0, 0.0), MaterialSpec(), dx_src);
    const Eigen::ArrayXd values = slope * mesh.centers() + offset;
    ReportingGrid grid{10.0, 25};
    const Eigen::ArrayXd mapped = map_to_grid(mesh, values, grid);
    const Eigen::ArrayXd expected = slope * grid.centers() + offset;
    return (mapped - expected).abs().maxCoeff();
  };

  // cell-center sampling is midpoint-exact on interior cells; the partial
  // end overlaps bound the error by slope * dx_src^2 / grid_dx
  const double err_coarse = run(0.2);
  CHECK(err_coarse <= slope * 0.2 * 0.2 / 0.8 + 1e-12);
  const double err_fine = run(0.05);
  CHECK(err_fine < err_coarse);
}

TEST_CASE("streaming moments equal two-pass statistics") {
  const int points = 31;
  const int samples = 1000;
  Rng rng(99);
  std::vector<Eigen::ArrayXd> data;
  data.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    Eigen::ArrayXd row(points);
    for (int i = 0; i < points; ++i) {
      row[i] = 2.0 + std::cos(0.1 * i) * rng.uniform() + 0.01 * k * rng.uniform();
    }
    data.push_back(row);
  }

  StreamingMoments moments(points);
  for (const auto& row : data) moments.add(row, row[points / 2]);

  Eigen::ArrayXd mean = Eigen::ArrayXd::Zero(points);
  for (const auto& row : data) mean += row;
  mean /= samples;
  Eigen::ArrayXd var = Eigen::ArrayXd::Zero(points);
  for (const auto& row : data) var += (row - mean).square();
  var /= (samples - 1);

  CHECK(((moments.mean() - mean).abs() / mean.abs()).maxCoeff() < 1e-10);
  CHECK(((moments.variance() - var).abs() / var.abs()).maxCoeff() < 1e-10);
  CHECK(moments.center_mean() ==
        doctest::Approx(mean[points / 2]).epsilon(1e-12));
}

TEST_CASE("normal quantile matches tabulated values") {
  CHECK(z_for_confidence(0.95) == doctest::Approx(1.959964).epsilon(1e-5));
  CHECK(z_for_confidence(0.99) == doctest::Approx(2.575829).epsilon(1e-5));
  CHECK(z_for_confidence(0.90) == doctest::Approx(1.644854).epsilon(1e-5));
  CHECK_THROWS(z_for_confidence(0.0));
  CHECK_THROWS(z_for_confidence(1.0));
}

namespace {

EnsembleConfig pure_absorber_config() {
  const ProblemConfig problem = resolve_problem(ProblemSet::kF, 3);
  EnsembleConfig config;
  config.m1 = problem.m1;
  config.m2 = problem.m2;
  config.stats = problem.stats;
  config.half_width = problem.half_width;
  config.grid.n_cells = 200;
  config.dx_max = problem.dx_max;
  return config;
}

}  // namespace

TEST_CASE("ensemble mean is independent of the worker count") {
  EnsembleConfig config = pure_absorber_config();
  config.stop.n_min = 10;
  config.stop.n_max = 37;  // force a fixed-n run
  config.stop.rel_halfwidth = 1e-9;
  config.base_seed = 1234;

  config.workers = 1;
  const EnsembleStats serial = run_ensemble(config);
  config.workers = 2;
  const EnsembleStats parallel = run_ensemble(config);
  config.workers = 4;
  const EnsembleStats oversubscribed = run_ensemble(config);

  REQUIRE(serial.n_realizations == 37);
  CHECK(parallel.n_realizations == 37);
  CHECK(oversubscribed.n_realizations == 37);
  for (int i = 0; i < serial.mean.size(); ++i) {
    CHECK(serial.mean[i] == parallel.mean[i]);  // bitwise
    CHECK(serial.mean[i] == oversubscribed.mean[i]);
  }
  CHECK(serial.center_mean == parallel.center_mean);
  CHECK_FALSE(serial.converged);
}

TEST_CASE("pure-absorber ensemble hits the tabulated center flux") {
  EnsembleConfig config = pure_absorber_config();
  config.stop.rel_halfwidth = 0.01;
  config.base_seed = 7;
  config.workers = 2;

  const EnsembleStats stats = run_ensemble(config);
  CHECK(stats.converged);
  CHECK(stats.ci_rel_halfwidth <= 0.01);
  CHECK(stats.n_realizations >= config.stop.n_min);
  // true benchmark value 0.2000; the CI bound plus discretization slack
  CHECK(std::abs(stats.center_mean - 0.2000) <=
        stats.z * stats.center_std_error + 5e-4);
  CHECK(stats.wall_seconds > 0.0);
}

TEST_CASE("stopping rule can be applied at every grid point") {
  EnsembleConfig config = pure_absorber_config();
  config.stop.rel_halfwidth = 0.05;
  config.stop.everywhere = true;
  config.stop.n_max = 5000;
  config.workers = 2;
  const EnsembleStats stats = run_ensemble(config);
  CHECK(stats.converged);
  for (int i = 0; i < stats.mean.size(); ++i) {
    CHECK(stats.z * stats.std_error[i] / stats.mean[i] <= 0.05);
  }
}

TEST_CASE("relative error reports NaN on nonpositive benchmark points") {
  EnsembleStats bench;
  bench.grid = ReportingGrid{1.0, 4};
  bench.mean = Eigen::ArrayXd(4);
  bench.mean << 1.0, 2.0, 0.0, -1.0;

  Eigen::ArrayXd model(4);
  model << 1.1, 2.0, 5.0, 5.0;
  const Eigen::ArrayXd err = relative_error(model, bench);
  CHECK(err[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(err[1] == 0.0);
  CHECK(std::isnan(err[2]));
  CHECK(std::isnan(err[3]));

  Eigen::ArrayXd wrong(3);
  CHECK_THROWS(relative_error(wrong, bench));
}

TEST_CASE("ensemble csv has the expected layout") {
  EnsembleConfig config = pure_absorber_config();
  config.stop.n_min = 5;
  config.stop.n_max = 5;
  config.grid.n_cells = 8;
  const EnsembleStats stats = run_ensemble(config);

  std::ostringstream os;
  write_ensemble_csv(os, stats);
  const std::string text = os.str();
  CHECK(text.find("x,mean_flux,std_error,n\n") == 0);
  CHECK(text.find("# summary: n_realizations=5") != std::string::npos);
  CHECK(text.find("wall_seconds=") != std::string::npos);
}
