#include "fpx/operator.hpp"

#include <cmath>

namespace fpx {

Vector apply_operator(const Problem& problem, const GridFunction& u) {
  if (!u.in_x) throw std::invalid_argument("apply_operator requires a function in X");
  Vector rowsum = pair_difference_rowsum(u.values, problem.config.exponents.p_values,
                                         problem.kernel.weights);
  return (2.0 / problem.cell()) * rowsum;
}

Real weak_pairing(const Problem& problem, const GridFunction& u,
                  const GridFunction& v) {
  if (!u.in_x || !v.in_x)
    throw std::invalid_argument("weak_pairing requires functions in X");
  Real acc = pair_difference_pairing(u.values, v.values,
                                     problem.config.exponents.p_values,
                                     problem.kernel.weights);
  Real nodes = 0;
  const Index m = problem.omega_size();
  for (Index k = 0; k < m; ++k) {
    const Index i = problem.grid.omega_idx[k];
    const Real ui = u.values[i];
    if (ui == 0.0) continue;
    Real term = 0;
    if (problem.config.alpha != 0.0)
      term += problem.config.alpha * signed_power(ui, problem.p_diag_omega[k]);
    if (problem.config.beta != 0.0)
      term += problem.config.beta * signed_power(ui, problem.q_omega[k]);
    nodes += term * v.values[i];
  }
  return acc + nodes * problem.cell();
}

Vector weak_defect(const Problem& problem, const GridFunction& u, Real lambda) {
  Vector g = apply_operator(problem, u);
  Vector out = Vector::Zero(problem.size());
  const Index m = problem.omega_size();
  for (Index k = 0; k < m; ++k) {
    const Index i = problem.grid.omega_idx[k];
    Real v = g[i];
    const Real ui = u.values[i];
    if (ui != 0.0) {
      if (problem.config.alpha != 0.0)
        v += problem.config.alpha * signed_power(ui, problem.p_diag_omega[k]);
      if (problem.config.beta != 0.0)
        v += problem.config.beta * signed_power(ui, problem.q_omega[k]);
      v -= lambda * signed_power(ui, problem.r_omega[k]);
    }
    out[i] = v;
  }
  return out;
}

Real weak_residual(const Problem& problem, const GridFunction& u, Real lambda) {
  return std::sqrt(problem.cell()) * weak_defect(problem, u, lambda).norm();
}

Real phi_lambda(const Problem& problem, const GridFunction& u, Real lambda) {
  const Functionals f = functionals(problem, u);
  return f.I - lambda * f.J;
}

std::pair<Real, Vector> phi_lambda_with_gradient(const Problem& problem,
                                                 const GridFunction& u,
                                                 Real lambda) {
  return {phi_lambda(problem, u, lambda), weak_defect(problem, u, lambda)};
}

Matrix linear_operator_matrix(const Problem& problem) {
  // pairing(e_k, e_l) at p = 2: 2(delta_kl sum_j w_kj - w_kl) over Omega dofs
  const Index m = problem.omega_size();
  Matrix a(m, m);
  Vector full_rowsum = problem.kernel.weights.rowwise().sum();
  for (Index k = 0; k < m; ++k) {
    const Index ik = problem.grid.omega_idx[k];
    for (Index l = 0; l < m; ++l) {
      const Index il = problem.grid.omega_idx[l];
      a(k, l) = (k == l) ? 2.0 * full_rowsum[ik] : -2.0 * problem.kernel.weights(ik, il);
    }
  }
  return a;
}

}  // namespace fpx
