#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "slabmix/mesh.hpp"
#include "slabmix/rng.hpp"

using namespace slabmix;

TEST_CASE("homogeneous slab meshes into uniform cells") {
  AveragedSpec avg;
  avg.sigma_t = 0.5;
  avg.sigma_s = 0.25;
  avg.sigma_a = 0.25;
  avg.q = 0.1;
  const Mesh mesh = build_mesh(avg, 20.0, 0.1);
  CHECK(mesh.n_cells() == 400);
  CHECK(mesh.edges[0] == -20.0);
  CHECK(mesh.edges[400] == 20.0);
  CHECK(mesh.origin_edge() == 200);
  CHECK(mesh.widths().maxCoeff() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(mesh.widths().minCoeff() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK((mesh.sigma_t == 0.5).all());
}

TEST_CASE("material interfaces land exactly on cell edges") {
  const Realization r({{1, 1.3}, {2, 0.7}}, 2.0);
  const MaterialSpec m1(1.0, 0.5, 0.2);
  const MaterialSpec m2;
  const Mesh mesh = build_mesh(r, m1, m2, 0.5);

  // interface at x = -1 + 1.3 = 0.3, plus the forced edge at x = 0
  bool has_interface = false;
  bool has_origin = false;
  for (int i = 0; i < mesh.edges.size(); ++i) {
    if (std::abs(mesh.edges[i] - 0.3) < 1e-14) has_interface = true;
    if (mesh.edges[i] == 0.0) has_origin = true;
  }
  CHECK(has_interface);
  CHECK(has_origin);
  CHECK(mesh.widths().maxCoeff() <= 0.5 + 1e-12);

  // cells left of the interface carry material 1 data
  for (int i = 0; i < mesh.n_cells(); ++i) {
    const double center = mesh.centers()[i];
    if (center < 0.3) {
      CHECK(mesh.material[i] == 1);
      CHECK(mesh.sigma_t[i] == 1.0);
    } else {
      CHECK(mesh.material[i] == 2);
      CHECK(mesh.sigma_t[i] == 0.0);
    }
  }
}

TEST_CASE("sampled realization meshes keep optical thickness small") {
  const MixingStats stats(1.0, 1.0);
  const MaterialSpec m1(1.0, 1.0 - 2.5e-4, 5.0e-4);
  const MaterialSpec m2;
  const double dx_max = default_dx_max(m1, m2, stats);
  CHECK(dx_max == doctest::Approx(0.1).epsilon(1e-15));

  for (std::uint64_t k = 0; k < 20; ++k) {
    const Realization r = sample_realization(stats, 40.0, derive_seed(5, k));
    const Mesh mesh = build_mesh(r, m1, m2, dx_max);
    const Eigen::ArrayXd tau = mesh.sigma_t * mesh.widths();
    CHECK(tau.maxCoeff() <= 0.1 + 1e-12);
    CHECK(mesh.widths().minCoeff() > 0.0);
    CHECK(mesh.origin_edge() > 0);
    // edges strictly increasing, spanning [-X, X]
    for (int i = 1; i < mesh.edges.size(); ++i) {
      CHECK(mesh.edges[i] > mesh.edges[i - 1]);
    }
    CHECK(mesh.edges[0] == -20.0);
    CHECK(mesh.edges[mesh.edges.size() - 1] == 20.0);
  }
}

TEST_CASE("degenerate layers are merged into a neighbor") {
  const double tiny = 1e-14;
  const Realization r({{1, 1.0}, {2, tiny}, {1, 1.0 - tiny}}, 2.0);
  const MaterialSpec m1(1.0, 0.0, 0.0);
  const Mesh mesh = build_mesh(r, m1, MaterialSpec(), 0.25);
  CHECK(mesh.merged_segments == 1);
  CHECK((mesh.material == 1).all());
  CHECK(mesh.edges[mesh.edges.size() - 1] == 1.0);
}

TEST_CASE("default cell size respects the narrower layer type") {
  const MaterialSpec m1(1.0, 0.5, 0.1);
  CHECK(default_dx_max(m1, MaterialSpec(), MixingStats(1.0, 0.5)) ==
        doctest::Approx(0.05));
  // dense material controls when layers are wide
  const MaterialSpec dense(4.0, 1.0, 0.1);
  CHECK(default_dx_max(dense, MaterialSpec(), MixingStats(1.0, 1.0)) ==
        doctest::Approx(0.025));
}

TEST_CASE("mesh rejects nonpositive dx_max") {
  AveragedSpec avg;
  avg.sigma_t = 1.0;
  CHECK_THROWS(build_mesh(avg, 1.0, 0.0));
  CHECK_THROWS(build_mesh(avg, -1.0, 0.1));
}
