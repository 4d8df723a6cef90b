#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include "fpx/modular.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fpx;
using namespace fpx::testing;

TEST_CASE("build_grid: 12 nodes on [-1,2] put 4 centers inside [0,1]") {
  GridGeometry geom = unit_geometry(12);
  const Grid g = build_grid(geom);
  CHECK(g.size() == 12);
  CHECK(g.omega_size() == 4);
  CHECK(g.cell_measure == doctest::Approx(0.25));
  // centers at -1 + (k + 1/2) / 4
  CHECK(g.node(0, 0) == doctest::Approx(-0.875));
  CHECK(g.node(4, 0) == doctest::Approx(0.125));
}

TEST_CASE("build_grid: tensor node count in 2D") {
  GridGeometry geom;
  geom.dim = 2;
  geom.omega = Box{2, {0.0, 0.0}, {1.0, 1.0}};
  geom.box = Box{2, {-1.0, -1.0}, {2.0, 2.0}};
  geom.resolution = 8;
  const Grid g = build_grid(geom);
  CHECK(g.size() == 64);
  CHECK(g.cell_measure == doctest::Approx(0.375 * 0.375));
}

TEST_CASE("build_grid rejects degenerate geometry") {
  GridGeometry geom = unit_geometry(12);
  SUBCASE("Omega equal to the box") {
    geom.omega = geom.box;
    CHECK_THROWS_AS(build_grid(geom), std::invalid_argument);
  }
  SUBCASE("resolution below 4") {
    geom.resolution = 3;
    CHECK_THROWS_AS(build_grid(geom), std::invalid_argument);
  }
  SUBCASE("Omega sticking out of the box") {
    geom.omega.hi[0] = 5.0;
    CHECK_THROWS_AS(build_grid(geom), std::invalid_argument);
  }
}

TEST_CASE("kernel weights: unit and half distance at p = 2, s = 0.25") {
  Problem prob = make_three_node_problem();
  // distance 1, cell 1: weight = 1
  CHECK(prob.kernel.weights(0, 1) == doctest::Approx(1.0));
  // distance 2: 2^{-1.5}
  CHECK(prob.kernel.weights(0, 2) == doctest::Approx(std::pow(2.0, -1.5)));
  CHECK(prob.kernel.weights(0, 0) == 0.0);

  // distance 0.5 with unit cells: 0.5^{-1.5} = 2.828427...
  Grid half = prob.grid;
  half.nodes << 0.0, 0.5, 1.0;
  const KernelTable t = build_kernel_table(half, prob.config.exponents, 0.25);
  CHECK(t.weights(0, 1) == doctest::Approx(2.8284271247461903));
}

TEST_CASE("kernel weights are symmetric and positive for a random p field") {
  Problem prob = make_default_problem(24);
  std::mt19937_64 rng(11);
  const Index n = prob.size();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j) {
      const Real v = 1.8 + (static_cast<Real>(rng() >> 11) * 0x1.0p-53);
      prob.config.exponents.p_values(i, j) = v;
      prob.config.exponents.p_values(j, i) = v;
    }
  const KernelTable t = build_kernel_table(prob.grid, prob.config.exponents, 0.25);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      CHECK(t.weights(i, j) == t.weights(j, i));
      if (i != j) {
        CHECK(t.weights(i, j) > 0.0);
        CHECK(std::isfinite(t.weights(i, j)));
      }
    }
}

TEST_CASE("kernel weights match the naive oracle entrywise") {
  Problem prob = make_default_problem(16);
  for (Index i = 0; i < prob.size(); ++i)
    for (Index j = 0; j < prob.size(); ++j) {
      if (i == j) continue;
      CHECK(prob.kernel.weights(i, j) ==
            doctest::Approx(naive_kernel_weight(prob, i, j)).epsilon(1e-13));
    }
}

TEST_CASE("random_function is reproducible and respects the mask") {
  const Grid g = build_grid(unit_geometry(32));
  const GridFunction a = random_function(g, 1234, true);
  const GridFunction b = random_function(g, 1234, true);
  CHECK(a.values == b.values);
  CHECK(a.in_x);
  for (Index i = 0; i < g.size(); ++i) {
    CHECK(a.values[i] <= 1.0);
    CHECK(a.values[i] >= -1.0);
    if (!g.omega_mask[i]) CHECK(a.values[i] == 0.0);
  }
  const GridFunction c = random_function(g, 1235, true);
  CHECK(a.values != c.values);
  const GridFunction d = random_function(g, 1234, false);
  bool any_outside = false;
  for (Index i = 0; i < g.size(); ++i)
    if (!g.omega_mask[i] && d.values[i] != 0.0) any_outside = true;
  CHECK(any_outside);
}

TEST_CASE("zero-extension closure under linear combinations") {
  const Grid g = build_grid(unit_geometry(32));
  const GridFunction a = random_function(g, 5, true);
  const GridFunction b = random_function(g, 6, true);
  GridFunction combo{2.5 * a.values - 0.75 * b.values, a.in_x && b.in_x};
  CHECK(combo.in_x);
  for (Index i = 0; i < g.size(); ++i)
    if (!g.omega_mask[i]) CHECK(combo.values[i] == 0.0);
}

TEST_CASE("discrete modular of a fixed bump is Cauchy under refinement") {
  // successive |M_h - M_{h/2}| must decrease
  std::vector<Real> values;
  for (Index res : {16, 32, 64, 128}) {
    Problem prob = make_default_problem(res);
    GridFunction u = bump_function(prob.grid, {0.5, 0.0}, 0.35);
    REQUIRE(u.in_x);
    values.push_back(seminorm_m(prob, u));
  }
  std::vector<Real> diffs;
  for (size_t k = 1; k < values.size(); ++k)
    diffs.push_back(std::abs(values[k] - values[k - 1]));
  for (size_t k = 1; k < diffs.size(); ++k) CHECK(diffs[k] < diffs[k - 1]);
}

TEST_CASE("bump_function flags membership in X correctly") {
  const Grid g = build_grid(unit_geometry(32));
  CHECK(bump_function(g, {0.5, 0.0}, 0.3).in_x);
  CHECK_FALSE(bump_function(g, {0.0, 0.0}, 0.3).in_x);  // support crosses 0
}
