#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <random>

#include "fpx/grid.hpp"
#include "support/fixtures.hpp"

using namespace fpx;
using namespace fpx::testing;

TEST_CASE("critical exponent: direct formula evaluations") {
  Problem prob = make_default_problem(16);  // p = 2, s = 0.25, N = 1
  const Index node = prob.grid.omega_idx.front();
  CHECK(critical_exponent(prob.config, prob.grid, node) == doctest::Approx(4.0));

  SUBCASE("constant exponents give a constant critical exponent") {
    const Real first = critical_exponent(prob.config, prob.grid, 0);
    for (Index i = 1; i < prob.size(); ++i)
      CHECK(critical_exponent(prob.config, prob.grid, i) == first);
  }
}

TEST_CASE("critical exponent in two dimensions") {
  GridGeometry geom;
  geom.dim = 2;
  geom.omega = Box{2, {0.0, 0.0}, {1.0, 1.0}};
  geom.box = Box{2, {-1.5, -1.5}, {2.5, 2.5}};
  geom.resolution = 8;
  Problem prob = assemble_problem(geom, 0.5, 0.0, 0.0, FieldSpec::constant(2.0),
                                  FieldSpec::constant(2.0), FieldSpec::constant(2.0));
  // N = 2, s = 0.5, p = 2 -> 4/(2-1) = 4
  CHECK(critical_exponent(prob.config, prob.grid, 0) == doctest::Approx(4.0));
}

TEST_CASE("critical exponent fails on the boundary s p = N") {
  GridGeometry geom = unit_geometry(8);
  Problem prob = assemble_problem(geom, 0.5, 0.0, 0.0, FieldSpec::constant(2.0),
                                  FieldSpec::constant(1.5), FieldSpec::constant(1.5));
  // s p(x,x) = 1 = N
  CHECK_THROWS_AS(critical_exponent(prob.config, prob.grid, 0), std::domain_error);
}

TEST_CASE("validate_conditions on a constant configuration") {
  GridGeometry geom = unit_geometry(12);
  Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                  FieldSpec::constant(2.0), FieldSpec::constant(2.0));
  const ValidationReport rep = validate_conditions(prob.config, prob.grid);
  CHECK(rep.passed("P"));
  CHECK(rep.passed("Q"));
  CHECK(rep.passed("R"));
  CHECK(rep.structurally_valid());
  CHECK(rep.q_ge_p_everywhere);
}

TEST_CASE("validate_conditions flags a supercritical q") {
  GridGeometry geom = unit_geometry(12);
  Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                  FieldSpec::constant(5.0), FieldSpec::constant(2.0));
  const ValidationReport rep = validate_conditions(prob.config, prob.grid);
  CHECK(rep.passed("P"));
  CHECK_FALSE(rep.passed("Q"));  // 5 > p_s* = 4
  CHECK(rep.passed("R"));
  CHECK_FALSE(rep.structurally_valid());
}

TEST_CASE("validate_conditions flags an asymmetric p at the exact pair") {
  GridGeometry geom = unit_geometry(8);
  Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                  FieldSpec::constant(2.0), FieldSpec::constant(2.0));
  prob.config.exponents.p_values(2, 5) += 0.125;  // break symmetry at one entry
  const ValidationReport rep = validate_conditions(prob.config, prob.grid);
  CHECK_FALSE(rep.passed("P"));
  bool mentions_pair = false;
  for (const auto& c : rep.checks)
    if (c.name == "P" && c.witness.find("(2,5)") != std::string::npos)
      mentions_pair = true;
  CHECK(mentions_pair);
}

TEST_CASE("symmetry property: random symmetric fields pass, perturbations fail") {
  GridGeometry geom = unit_geometry(10);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    // random symmetric p with values in (1.5, 3.5) < N/s = 4
    Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                    FieldSpec::constant(2.0), FieldSpec::constant(2.0));
    const Index n = prob.size();
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j <= i; ++j) {
        const Real v = 1.5 + 2.0 * (static_cast<Real>(rng() >> 11) * 0x1.0p-53);
        prob.config.exponents.p_values(i, j) = v;
        prob.config.exponents.p_values(j, i) = v;
      }
    CHECK(validate_conditions(prob.config, prob.grid).passed("P"));
    const Index i = static_cast<Index>(rng() % n);
    Index j = static_cast<Index>(rng() % n);
    if (j == i) j = (j + 1) % n;
    prob.config.exponents.p_values(i, j) += 1e-9;
    CHECK_FALSE(validate_conditions(prob.config, prob.grid).passed("P"));
  }
}

TEST_CASE("growth chain: pass and boundary failure") {
  GridGeometry geom = unit_geometry(12);
  SUBCASE("2 < 2.5 <= 2.5 < 3 <= 3 < 4 passes") {
    Problem prob = assemble_problem(geom, 0.25, 1.0, 1.0, FieldSpec::constant(2.0),
                                    FieldSpec::constant(3.0), FieldSpec::constant(2.5));
    CHECK(validate_growth(prob.config).passed("G"));
  }
  SUBCASE("r = p fails the first strict link") {
    Problem prob = assemble_problem(geom, 0.25, 1.0, 1.0, FieldSpec::constant(2.0),
                                    FieldSpec::constant(3.0), FieldSpec::constant(2.0));
    const ValidationReport rep = validate_growth(prob.config);
    CHECK_FALSE(rep.passed("G"));
    CHECK(rep.checks.front().witness.find("p+ < r-") != std::string::npos);
  }
  SUBCASE("q just under the critical value passes") {
    Problem prob = assemble_problem(geom, 0.25, 1.0, 1.0, FieldSpec::constant(2.0),
                                    FieldSpec::constant(3.8), FieldSpec::constant(3.5));
    CHECK(validate_growth(prob.config).passed("G"));
  }
}

TEST_CASE("A1/A2 witnesses for globally ordered exponents") {
  GridGeometry geom = unit_geometry(16);
  SUBCASE("r below p and q everywhere: any ball is an A1 witness, A2 none") {
    Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                    FieldSpec::constant(2.0), FieldSpec::constant(1.5));
    CHECK(find_a1_witness(prob.config, prob.grid).has_value());
    CHECK_FALSE(find_a2_witness(prob.config, prob.grid).has_value());
  }
  SUBCASE("r above p and q everywhere: any ball is an A2 witness, A1 none") {
    Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                    FieldSpec::constant(2.0), FieldSpec::constant(3.5));
    CHECK(find_a2_witness(prob.config, prob.grid).has_value());
    CHECK_FALSE(find_a1_witness(prob.config, prob.grid).has_value());
  }
}

namespace {

// exhaustive scan over every node-centered ball and dyadic radius
bool oracle_ball_exists(const Problem& prob, bool a1) {
  const auto& e = prob.config.exponents;
  Real min_side = prob.grid.omega.side(0);
  for (int a = 1; a < prob.grid.dim; ++a)
    min_side = std::min(min_side, prob.grid.omega.side(a));
  for (Real radius : {min_side / 2, min_side / 4, min_side / 8, min_side / 16}) {
    for (Index c : prob.grid.omega_idx) {
      Real r_min = 1e300, r_max = -1e300, q_min = 1e300, q_max = -1e300;
      Real p_min = 1e300, p_max = -1e300;
      for (Index i : prob.grid.omega_idx) {
        Real d2 = 0;
        for (int a = 0; a < prob.grid.dim; ++a) {
          const Real d = prob.grid.node(i, a) - prob.grid.node(c, a);
          d2 += d * d;
        }
        if (d2 >= radius * radius) continue;
        r_min = std::min(r_min, e.r_values[i]);
        r_max = std::max(r_max, e.r_values[i]);
        q_min = std::min(q_min, e.q_values[i]);
        q_max = std::max(q_max, e.q_values[i]);
        for (Index j = 0; j < prob.size(); ++j) {
          p_min = std::min(p_min, e.p_values(i, j));
          p_max = std::max(p_max, e.p_values(i, j));
        }
      }
      if (a1 && r_max < std::min(p_min, q_min)) return true;
      if (!a1 && r_min > std::max(p_max, q_max)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("A1 witness inside a dip of r, matching the exhaustive oracle") {
  GridGeometry geom = unit_geometry(32);
  Problem dip = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                 FieldSpec::constant(2.0),
                                 FieldSpec::bump(1.9, -0.75, {0.5, 0.0}, 0.2));
  const auto w = find_a1_witness(dip.config, dip.grid);
  REQUIRE(w.has_value());
  CHECK(oracle_ball_exists(dip, true));
  // returned ball satisfies its inequality as recomputed here
  CHECK(w->r_extreme < w->pq_extreme);
  // the dip bottoms out at 1.5, so the witness ball must see r below 2
  CHECK(w->r_extreme < 2.0);
  // center within the dip support
  CHECK(std::abs(dip.grid.node(w->center_node, 0) - 0.5) < 0.2 + w->radius);

  SUBCASE("the oracle agrees there is no A2 witness") {
    CHECK_FALSE(find_a2_witness(dip.config, dip.grid).has_value());
    CHECK_FALSE(oracle_ball_exists(dip, false));
  }
}

TEST_CASE("A2 witness inside a spike of r, matching the exhaustive oracle") {
  GridGeometry geom = unit_geometry(32);
  Problem spike = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                   FieldSpec::constant(2.0),
                                   FieldSpec::bump(2.5, 1.0, {0.5, 0.0}, 0.2));
  const auto w = find_a2_witness(spike.config, spike.grid);
  REQUIRE(w.has_value());
  CHECK(oracle_ball_exists(spike, false));
  CHECK(w->r_extreme > w->pq_extreme);
}

TEST_CASE("no ball can witness A1 and A2 simultaneously") {
  GridGeometry geom = unit_geometry(24);
  for (Real height : {-1.0, 0.0, 1.0}) {
    Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0, FieldSpec::constant(2.0),
                                    FieldSpec::constant(2.0),
                                    FieldSpec::bump(2.5, height, {0.5, 0.0}, 0.3));
    const auto& e = prob.config.exponents;
    for (Real radius : {0.5, 0.25, 0.125}) {
      for (Index c : prob.grid.omega_idx) {
        Real r_min = 1e300, r_max = -1e300, pq_min = 1e300, pq_max = -1e300;
        for (Index i : prob.grid.omega_idx) {
          const Real d = std::abs(prob.grid.node(i, 0) - prob.grid.node(c, 0));
          if (d >= radius) continue;
          r_min = std::min(r_min, e.r_values[i]);
          r_max = std::max(r_max, e.r_values[i]);
          pq_min = std::min(pq_min, e.q_values[i]);
          pq_max = std::max(pq_max, e.q_values[i]);
          for (Index j = 0; j < prob.size(); ++j) {
            pq_min = std::min(pq_min, e.p_values(i, j));
            pq_max = std::max(pq_max, e.p_values(i, j));
          }
        }
        const bool a1_here = r_max < pq_min;
        const bool a2_here = r_min > pq_max;
        CHECK_FALSE((a1_here && a2_here));
      }
    }
  }
}

TEST_CASE("extremes equal the sampled extrema exactly") {
  GridGeometry geom = unit_geometry(20);
  Problem prob = assemble_problem(geom, 0.25, 0.0, 0.0,
                                  FieldSpec::affine(2.0, {0.1, 0.0}),
                                  FieldSpec::bump(2.6, 0.3, {0.4, 0.0}, 0.2),
                                  FieldSpec::constant(2.2));
  const auto& e = prob.config.exponents;
  CHECK(e.p_minus == e.p_values.minCoeff());
  CHECK(e.p_plus == e.p_values.maxCoeff());
  Real q_lo = 1e300, q_hi = -1e300;
  for (Index i : prob.grid.omega_idx) {
    q_lo = std::min(q_lo, e.q_values[i]);
    q_hi = std::max(q_hi, e.q_values[i]);
  }
  CHECK(e.q_minus == q_lo);
  CHECK(e.q_plus == q_hi);
}
