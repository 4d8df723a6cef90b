#include "fpx/problem.hpp"

#include <cmath>

namespace fpx {

Vector Problem::omega_slice(const Vector& full) const {
  Vector out(omega_size());
  for (Index k = 0; k < out.size(); ++k) out[k] = full[grid.omega_idx[k]];
  return out;
}

Vector Problem::scatter_omega(const Vector& on_omega) const {
  Vector out = Vector::Zero(size());
  for (Index k = 0; k < on_omega.size(); ++k) out[grid.omega_idx[k]] = on_omega[k];
  return out;
}

Problem assemble_problem(const GridGeometry& geom, Real s, Real alpha, Real beta,
                         const FieldSpec& p, const FieldSpec& q, const FieldSpec& r) {
  if (s <= 0.0 || s >= 1.0) throw std::invalid_argument("fractional order s must lie in (0,1)");
  if (alpha < 0.0 || beta < 0.0)
    throw std::invalid_argument("coefficients alpha, beta must be nonnegative");

  Problem prob;
  prob.grid = build_grid(geom);
  prob.config.dim = geom.dim;
  prob.config.s = s;
  prob.config.alpha = alpha;
  prob.config.beta = beta;
  prob.config.omega = geom.omega;
  prob.config.box = geom.box;
  prob.config.resolution = geom.resolution;
  prob.config.exponents = sample_exponents(prob.grid, p, q, r);
  prob.kernel = build_kernel_table(prob.grid, prob.config.exponents, s);

  const Index m = prob.omega_size();
  const IndexList& idx = prob.grid.omega_idx;
  prob.p_diag = prob.config.exponents.p_values.diagonal();
  prob.p_omega.resize(m, m);
  prob.w_omega.resize(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      prob.p_omega(a, b) = prob.config.exponents.p_values(idx[a], idx[b]);
      prob.w_omega(a, b) = prob.kernel.weights(idx[a], idx[b]);
    }
  prob.p_diag_omega = prob.omega_slice(prob.p_diag);
  prob.q_omega = prob.omega_slice(prob.config.exponents.q_values);
  prob.r_omega = prob.omega_slice(prob.config.exponents.r_values);
  return prob;
}

Real truncation_error_bound(const Problem& problem) {
  const Real margin = boundary_margin(problem.grid.omega, problem.grid.box);
  return std::pow(margin, -problem.config.s * problem.config.exponents.p_minus);
}

}  // namespace fpx
