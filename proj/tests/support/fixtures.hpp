#pragma once

// Problem instances mirroring the shipped configs, plus the tiny
// hand-checkable lattices used for the worked examples.

#include "fpx/problem.hpp"

namespace fpx::testing {

inline GridGeometry unit_geometry(Index resolution) {
  GridGeometry g;
  g.dim = 1;
  g.omega = Box{1, {0.0, 0.0}, {1.0, 0.0}};
  g.box = Box{1, {-1.0, 0.0}, {2.0, 0.0}};
  g.resolution = resolution;
  return g;
}

// constant exponents with q >= p: p = 2, q = r = 2.5, alpha = beta = 1
inline Problem make_default_problem(Index resolution = 64) {
  return assemble_problem(unit_geometry(resolution), 0.25, 1.0, 1.0,
                          FieldSpec::constant(2.0), FieldSpec::constant(2.5),
                          FieldSpec::constant(2.5));
}

// p = q = r = 2, alpha = beta = 0
inline Problem make_linear_problem(Index resolution = 64) {
  return assemble_problem(unit_geometry(resolution), 0.25, 0.0, 0.0,
                          FieldSpec::constant(2.0), FieldSpec::constant(2.0),
                          FieldSpec::constant(2.0));
}

// r stays below p = q = 2, dipping to 1.15 at the center of Omega
inline Problem make_a1_problem(Index resolution = 64) {
  return assemble_problem(unit_geometry(resolution), 0.25, 0.0, 0.0,
                          FieldSpec::constant(2.0), FieldSpec::constant(2.0),
                          FieldSpec::bump(1.9, -0.75, {0.5, 0.0}, 0.25));
}

// r spikes to 3.5 around the center of Omega
inline Problem make_a2_problem(Index resolution = 64) {
  return assemble_problem(unit_geometry(resolution), 0.25, 0.0, 0.0,
                          FieldSpec::constant(2.0), FieldSpec::constant(2.0),
                          FieldSpec::bump(2.5, 1.0, {0.5, 0.0}, 0.25));
}

// ordered growth 2 < 2.5 <= 2.5 < 3 <= 3 < 4 with alpha = beta = 1
inline Problem make_g_problem(Index resolution = 64) {
  return assemble_problem(unit_geometry(resolution), 0.25, 1.0, 1.0,
                          FieldSpec::constant(2.0), FieldSpec::constant(3.0),
                          FieldSpec::constant(2.5));
}

// Three unit-spaced nodes at x = 0, 1, 2, all inside Omega, constant p = q,
// s = 0.25. Small enough to check every pair sum by hand. Built directly
// (the build_grid factory would insist on resolution >= 4 and a proper
// Omega subset).
inline Problem make_three_node_problem(Real exponent = 2.0, Real alpha = 0.0,
                                       Real beta = 0.0) {
  Problem prob;
  Grid g;
  g.dim = 1;
  g.box = Box{1, {-0.5, 0.0}, {2.5, 0.0}};
  g.omega = g.box;
  g.resolution = 3;
  g.nodes.resize(3, 1);
  g.nodes << 0.0, 1.0, 2.0;
  g.spacing = {1.0, 0.0};
  g.cell_measure = 1.0;
  g.omega_mask = {true, true, true};
  g.omega_idx = {0, 1, 2};
  prob.grid = g;
  prob.config.dim = 1;
  prob.config.s = 0.25;
  prob.config.alpha = alpha;
  prob.config.beta = beta;
  prob.config.omega = g.omega;
  prob.config.box = g.box;
  prob.config.resolution = 3;
  prob.config.exponents = sample_exponents(g, FieldSpec::constant(exponent),
                                           FieldSpec::constant(exponent),
                                           FieldSpec::constant(exponent));
  prob.kernel = build_kernel_table(g, prob.config.exponents, prob.config.s);
  prob.p_diag = prob.config.exponents.p_values.diagonal();
  prob.p_omega = prob.config.exponents.p_values;
  prob.w_omega = prob.kernel.weights;
  prob.p_diag_omega = prob.p_diag;
  prob.q_omega = prob.config.exponents.q_values;
  prob.r_omega = prob.config.exponents.r_values;
  return prob;
}

}  // namespace fpx::testing
