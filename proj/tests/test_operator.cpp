#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpx/operator.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fpx;
using namespace fpx::testing;

TEST_CASE("apply_operator on the three-node lattice") {
  Problem prob = make_three_node_problem();
  GridFunction u{Vector(3), true};
  u.values << 0.0, 1.0, 0.0;
  const Vector out = apply_operator(prob, u);
  // middle node: 2 [ (1-0) w(1,0) + (1-0) w(1,2) ] = 2 (1 + 1) = 4
  CHECK(out[1] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(out[1] == doctest::Approx(naive_apply_at(prob, u.values, 1)));
  CHECK(out[0] == doctest::Approx(naive_apply_at(prob, u.values, 0)));
}

TEST_CASE("apply_operator vanishes on the zero function") {
  Problem prob = make_default_problem(24);
  GridFunction zero{Vector::Zero(prob.size()), true};
  CHECK(apply_operator(prob, zero).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply_operator equivariance under grid reflection") {
  // Omega = [0,1] inside B = [-1,2]; x -> 1-x maps the lattice to itself
  Problem prob = make_default_problem(32);
  const Index n = prob.size();
  auto reflect = [&](const Vector& v) {
    Vector out(n);
    for (Index i = 0; i < n; ++i) out[i] = v[n - 1 - i];
    return out;
  };
  GridFunction u = random_function(prob.grid, 17, true);
  GridFunction ru{reflect(u.values), true};
  const Vector lhs = apply_operator(prob, ru);
  const Vector rhs = reflect(apply_operator(prob, u));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * rhs.cwiseAbs().maxCoeff());
}

TEST_CASE("apply_operator matches the naive oracle nodewise") {
  Problem prob = make_g_problem(24);
  GridFunction u = random_function(prob.grid, 8, true);
  const Vector out = apply_operator(prob, u);
  for (Index i = 0; i < prob.size(); ++i)
    CHECK(out[i] == doctest::Approx(naive_apply_at(prob, u.values, i)).epsilon(1e-11));
}

TEST_CASE("weak_pairing(u, u) = I0(u) across configurations") {
  for (auto make : {make_default_problem, make_linear_problem, make_g_problem}) {
    Problem prob = make(32);
    for (int k = 0; k < 30; ++k) {
      GridFunction u = random_function(prob.grid, 4000 + 13 * k, true);
      u.values *= std::pow(10.0, (k % 5) - 2);
      const Real lhs = weak_pairing(prob, u, u);
      const Real rhs = functionals(prob, u).I0;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("weak_pairing is linear in the test function") {
  Problem prob = make_g_problem(24);
  GridFunction u = random_function(prob.grid, 1, true);
  GridFunction v1 = random_function(prob.grid, 2, true);
  GridFunction v2 = random_function(prob.grid, 3, true);
  const Real a = 2.25, b = -0.7;
  GridFunction combo{a * v1.values + b * v2.values, true};
  const Real lhs = weak_pairing(prob, u, combo);
  const Real rhs = a * weak_pairing(prob, u, v1) + b * weak_pairing(prob, u, v2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("weak_pairing sign: positive for nonzero u in X") {
  Problem prob = make_default_problem(32);
  GridFunction zero{Vector::Zero(prob.size()), true};
  CHECK(weak_pairing(prob, zero, zero) == 0.0);
  for (int k = 0; k < 10; ++k) {
    GridFunction u = random_function(prob.grid, 100 + k, true);
    CHECK(weak_pairing(prob, u, u) > 0.0);
  }
}

TEST_CASE("weak_pairing matches the nodal operator assembly") {
  // pairing(u, v) = sum_i (A u)_i v_i h^N, both assembled independently
  Problem prob = make_linear_problem(32);
  for (int k = 0; k < 5; ++k) {
    GridFunction u = random_function(prob.grid, 200 + k, true);
    GridFunction v = random_function(prob.grid, 300 + k, true);
    const Real via_pairs = weak_pairing(prob, u, v);
    const Real via_apply = apply_operator(prob, u).dot(v.values) * prob.cell();
    CHECK(via_pairs == doctest::Approx(via_apply).epsilon(1e-11));
    CHECK(via_pairs == doctest::Approx(naive_weak_pairing(prob, u.values, v.values))
                           .epsilon(1e-11));
  }
}

TEST_CASE("weak_residual: zero function solves trivially") {
  Problem prob = make_default_problem(24);
  GridFunction zero{Vector::Zero(prob.size()), true};
  CHECK(weak_residual(prob, zero, 1.0) == 0.0);
}

TEST_CASE("linear case: dense matrix is SPD and detects eigenpairs") {
  Problem prob = make_linear_problem(48);
  const Matrix a = linear_operator_matrix(prob);
  const Index m = prob.omega_size();
  REQUIRE(a.rows() == m);
  CHECK((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * a.cwiseAbs().maxCoeff());

  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  REQUIRE(es.info() == Eigen::Success);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  // the matrix route and the pairing route agree on the quadratic form
  GridFunction u = random_function(prob.grid, 77, true);
  const Vector uo = prob.omega_slice(u.values);
  CHECK(uo.dot(a * uo) == doctest::Approx(weak_pairing(prob, u, u)).epsilon(1e-11));

  // residual of the dense ground state is tiny; the Rayleigh bound holds
  const Real lambda_min = es.eigenvalues()[0] / prob.cell();
  GridFunction ground{prob.scatter_omega(es.eigenvectors().col(0)), true};
  const Real res = weak_residual(prob, ground, lambda_min);
  CHECK(res <= 1e-9);

  SUBCASE("residual soundness: defect small against 100 random test functions") {
    for (int k = 0; k < 100; ++k) {
      GridFunction v = random_function(prob.grid, 9000 + k, true);
      const Real defect = weak_pairing(prob, ground, v) -
                          lambda_min * j_prime_pairing(prob, ground, v);
      const Real vn = std::sqrt(v.values.squaredNorm() * prob.cell());
      CHECK(std::abs(defect) <= 1e-8 * std::max(1.0, vn));
    }
  }

  SUBCASE("dense minimum matches the Rayleigh quotient minimum") {
    // quotient at the ground state, evaluated through the nonlinear path
    const Real q_ground = weak_pairing(prob, ground, ground) /
                          (ground.values.squaredNorm() * prob.cell());
    CHECK(q_ground == doctest::Approx(lambda_min).epsilon(1e-6));
    for (int k = 0; k < 50; ++k) {
      GridFunction v = random_function(prob.grid, 500 + k, true);
      const Real q = weak_pairing(prob, v, v) / (v.values.squaredNorm() * prob.cell());
      CHECK(q >= lambda_min * (1 - 1e-6));
    }
  }

  SUBCASE("perturbing the converged eigenpair raises the residual") {
    GridFunction bumped = ground;
    bumped.values[prob.grid.omega_idx[m / 2]] += 1e-3;
    CHECK(weak_residual(prob, bumped, lambda_min) > res);
  }
}

TEST_CASE("phi_lambda: energy and gradient") {
  Problem prob = make_g_problem(32);

  SUBCASE("lambda = 0 reduces to I and the I-derivative") {
    GridFunction u = random_function(prob.grid, 12, true);
    CHECK(phi_lambda(prob, u, 0.0) == doctest::Approx(functionals(prob, u).I));
    GridFunction phi = random_function(prob.grid, 13, true);
    const auto [value, grad] = phi_lambda_with_gradient(prob, u, 0.0);
    (void)value;
    ModularSpec i_spec = ModularSpec::rho_spec(prob);
    i_spec.domain = PairDomain::BoxBox;
    const Real pairing = rho_prime_pairing(prob, u, phi, i_spec);
    CHECK(grad.dot(phi.values) * prob.cell() ==
          doctest::Approx(pairing).epsilon(1e-11));
  }

  SUBCASE("zero function: zero energy and gradient") {
    GridFunction zero{Vector::Zero(prob.size()), true};
    const auto [value, grad] = phi_lambda_with_gradient(prob, zero, 2.0);
    CHECK(value == 0.0);
    CHECK(grad.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("gradient matches central finite differences") {
    for (int k = 0; k < 25; ++k) {
      GridFunction u = random_function(prob.grid, 1400 + k, true);
      GridFunction phi = random_function(prob.grid, 1500 + k, true);
      const Real lambda = 0.5 + 0.1 * k;
      const Real eps = 1e-5;
      GridFunction up{u.values + eps * phi.values, true};
      GridFunction dn{u.values - eps * phi.values, true};
      const Real fd =
          (phi_lambda(prob, up, lambda) - phi_lambda(prob, dn, lambda)) / (2 * eps);
      const auto [value, grad] = phi_lambda_with_gradient(prob, u, lambda);
      (void)value;
      const Real an = grad.dot(phi.values) * prob.cell();
      CHECK(std::abs(an - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}
