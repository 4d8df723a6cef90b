#include "fpx/modular.hpp"

#include <algorithm>
#include <cmath>

namespace fpx {

namespace {

// D_ij = u_i - u_j as an n x n array expression source.
ArrayXX difference_matrix(const Vector& u) {
  const Index n = u.size();
  return u.replicate(1, n).array() - u.transpose().replicate(n, 1).array();
}

// |D|^P elementwise via exp(P log|D|). Vanishing differences are masked
// explicitly: vectorized exp clamps -inf and would leave denormal residue.
ArrayXX abs_power(const ArrayXX& d, const ArrayXX& p) {
  const ArrayXX t = (p * d.abs().log()).exp();
  return (d != 0.0).select(t, 0.0);
}

}  // namespace

Real signed_power(Real t, Real e) {
  if (t == 0.0) return 0.0;
  const Real mag = std::pow(std::abs(t), e - 1.0);
  return t > 0 ? mag : -mag;
}

Real pair_power_sum(const Vector& u, const Matrix& P, const Matrix& W,
                    bool divide_by_p) {
  const ArrayXX d = difference_matrix(u);
  const ArrayXX t = abs_power(d, P.array()) * W.array();
  return divide_by_p ? (t / P.array()).sum() : t.sum();
}

Real pair_difference_pairing(const Vector& u, const Vector& v, const Matrix& P,
                             const Matrix& W) {
  const ArrayXX du = difference_matrix(u);
  const ArrayXX dv = difference_matrix(v);
  // |du|^{P-1} sign(du) = |du|^{P-2} du
  const ArrayXX g = abs_power(du, P.array() - 1.0) * du.sign() * W.array();
  return (g * dv).sum();
}

Vector pair_difference_rowsum(const Vector& u, const Matrix& P, const Matrix& W) {
  const ArrayXX du = difference_matrix(u);
  const ArrayXX g = abs_power(du, P.array() - 1.0) * du.sign() * W.array();
  return g.rowwise().sum().matrix();
}

namespace {

// alpha |u|^p (/p) + beta |u|^q (/q) summed over Omega nodes, times h^N.
Real node_terms(const Problem& prob, const Vector& u_full, Real alpha, Real beta,
                bool weighted) {
  if (alpha == 0.0 && beta == 0.0) return 0.0;
  Real acc = 0;
  const Index m = prob.omega_size();
  for (Index k = 0; k < m; ++k) {
    const Real a = std::abs(u_full[prob.grid.omega_idx[k]]);
    if (a == 0.0) continue;
    if (alpha != 0.0) {
      const Real p = prob.p_diag_omega[k];
      acc += alpha * std::pow(a, p) / (weighted ? p : 1.0);
    }
    if (beta != 0.0) {
      const Real q = prob.q_omega[k];
      acc += beta * std::pow(a, q) / (weighted ? q : 1.0);
    }
  }
  return acc * prob.cell();
}

}  // namespace

Real seminorm_modular(const Problem& problem, const GridFunction& u,
                      const ModularSpec& spec) {
  if (spec.domain == PairDomain::BoxBox) {
    if (!u.in_x)
      throw std::invalid_argument("B x B pair modular requires a function in X");
    return pair_power_sum(u.values, problem.config.exponents.p_values,
                          problem.kernel.weights, spec.weighted);
  }
  const Vector uo = problem.omega_slice(u.values);
  return pair_power_sum(uo, problem.p_omega, problem.w_omega, spec.weighted);
}

Real rho(const Problem& problem, const GridFunction& u, const ModularSpec& spec) {
  return seminorm_modular(problem, u, spec) +
         node_terms(problem, u.values, spec.alpha, spec.beta, spec.weighted);
}

Real seminorm_m(const Problem& problem, const GridFunction& u) {
  return seminorm_modular(problem, u, ModularSpec::seminorm_m());
}

Functionals functionals(const Problem& problem, const GridFunction& u) {
  if (!u.in_x) throw std::invalid_argument("functionals require a function in X");
  Functionals f;
  {
    const ArrayXX d = difference_matrix(u.values);
    const ArrayXX t = abs_power(d, problem.config.exponents.p_values.array()) *
                      problem.kernel.weights.array();
    f.I0 = t.sum();
    f.I = (t / problem.config.exponents.p_values.array()).sum();
  }
  f.I += node_terms(problem, u.values, problem.config.alpha, problem.config.beta, true);
  f.I0 += node_terms(problem, u.values, problem.config.alpha, problem.config.beta, false);
  const Index m = problem.omega_size();
  for (Index k = 0; k < m; ++k) {
    const Real a = std::abs(u.values[problem.grid.omega_idx[k]]);
    if (a == 0.0) continue;
    const Real r = problem.r_omega[k];
    const Real ar = std::pow(a, r);
    f.J += ar / r;
    f.J0 += ar;
  }
  f.J *= problem.cell();
  f.J0 *= problem.cell();
  return f;
}

Real functional_i(const Problem& problem, const GridFunction& u) {
  if (!u.in_x) throw std::invalid_argument("I requires a function in X");
  return pair_power_sum(u.values, problem.config.exponents.p_values,
                        problem.kernel.weights, true) +
         node_terms(problem, u.values, problem.config.alpha, problem.config.beta,
                    true);
}

Real functional_j(const Problem& problem, const GridFunction& u) {
  Real acc = 0;
  const Index m = problem.omega_size();
  for (Index k = 0; k < m; ++k) {
    const Real a = std::abs(u.values[problem.grid.omega_idx[k]]);
    if (a == 0.0) continue;
    const Real r = problem.r_omega[k];
    acc += std::pow(a, r) / r;
  }
  return acc * problem.cell();
}

Real lebesgue_modular(const Problem& problem, const GridFunction& u,
                      const Vector& exponent_full) {
  Real acc = 0;
  for (Index i : problem.grid.omega_idx) {
    const Real a = std::abs(u.values[i]);
    if (a != 0.0) acc += std::pow(a, exponent_full[i]);
  }
  return acc * problem.cell();
}

Real luxemburg_norm(const std::function<Real(Real)>& modular_of_u_over_mu,
                    const LuxemburgOptions& opts) {
  const auto& m = modular_of_u_over_mu;
  Real lo = 1e-8, hi = 1.0;
  Real m_hi = m(hi);
  if (std::abs(m_hi - 1.0) <= opts.tol) return hi;
  if (m_hi > 1.0) {
    // root above 1: double upward
    int k = 0;
    lo = hi;
    hi = 2.0;
    while (m(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (++k > opts.max_doublings)
        throw std::runtime_error("luxemburg_norm: bracket expansion exceeded");
    }
  } else {
    // root below 1: halve downward from the initial bracket floor
    int k = 0;
    Real m_lo = m(lo);
    while (m_lo < 1.0) {
      if (m_lo == 0.0) return 0.0;  // modular vanishes on the whole ray
      hi = lo;
      lo *= 0.5;
      if (++k > opts.max_doublings)
        throw std::runtime_error("luxemburg_norm: bracket expansion exceeded");
      m_lo = m(lo);
    }
  }
  Real mid = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_bisect; ++it) {
    mid = 0.5 * (lo + hi);
    const Real v = m(mid);
    if (std::abs(v - 1.0) <= opts.tol) return mid;
    if (v > 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4 * std::numeric_limits<Real>::epsilon() * mid) return mid;
  }
  return mid;
}

Real norm_1(const Problem& problem, const GridFunction& u,
            const LuxemburgOptions& opts) {
  const ModularSpec spec = ModularSpec::rho_spec(problem);
  return luxemburg_norm(
      [&](Real mu) {
        GridFunction scaled{u.values / mu, u.in_x};
        return rho(problem, scaled, spec);
      },
      opts);
}

Real norm_0(const Problem& problem, const GridFunction& u,
            const LuxemburgOptions& opts) {
  return luxemburg_norm(
      [&](Real mu) {
        GridFunction scaled{u.values / mu, u.in_x};
        return seminorm_m(problem, scaled);
      },
      opts);
}

Real lebesgue_norm(const Problem& problem, const GridFunction& u,
                   const Vector& exponent_full, const LuxemburgOptions& opts) {
  return luxemburg_norm(
      [&](Real mu) {
        GridFunction scaled{u.values / mu, u.in_x};
        return lebesgue_modular(problem, scaled, exponent_full);
      },
      opts);
}

Real rho_prime_pairing(const Problem& problem, const GridFunction& u,
                       const GridFunction& phi, const ModularSpec& spec) {
  Real pair = 0;
  if (spec.domain == PairDomain::BoxBox) {
    pair = pair_difference_pairing(u.values, phi.values,
                                   problem.config.exponents.p_values,
                                   problem.kernel.weights);
  } else {
    pair = pair_difference_pairing(problem.omega_slice(u.values),
                                   problem.omega_slice(phi.values),
                                   problem.p_omega, problem.w_omega);
  }
  Real nodes = 0;
  const Index m = problem.omega_size();
  for (Index k = 0; k < m; ++k) {
    const Index i = problem.grid.omega_idx[k];
    const Real ui = u.values[i];
    if (ui == 0.0) continue;
    Real term = 0;
    if (spec.alpha != 0.0)
      term += spec.alpha * signed_power(ui, problem.p_diag_omega[k]);
    if (spec.beta != 0.0) term += spec.beta * signed_power(ui, problem.q_omega[k]);
    nodes += term * phi.values[i];
  }
  return pair + nodes * problem.cell();
}

Real j_prime_pairing(const Problem& problem, const GridFunction& u,
                     const GridFunction& v) {
  Real acc = 0;
  const Index m = problem.omega_size();
  for (Index k = 0; k < m; ++k) {
    const Index i = problem.grid.omega_idx[k];
    if (u.values[i] == 0.0) continue;
    acc += signed_power(u.values[i], problem.r_omega[k]) * v.values[i];
  }
  return acc * problem.cell();
}

HolderCheck holder_pairing_check(const Problem& problem, const GridFunction& u,
                                 const GridFunction& v, const Vector& p_full,
                                 const LuxemburgOptions& opts) {
  Vector conj(p_full.size());
  Real p_min = std::numeric_limits<Real>::infinity();
  Real conj_min = std::numeric_limits<Real>::infinity();
  for (Index i : problem.grid.omega_idx) {
    if (p_full[i] <= 1.0)
      throw std::domain_error("holder_pairing_check: conjugate exponent undefined where p <= 1");
    conj[i] = p_full[i] / (p_full[i] - 1.0);
    p_min = std::min(p_min, p_full[i]);
    conj_min = std::min(conj_min, conj[i]);
  }
  Real dot = 0;
  for (Index i : problem.grid.omega_idx) dot += u.values[i] * v.values[i];
  HolderCheck out;
  out.lhs = std::abs(dot * problem.cell());
  out.rhs = (1.0 / p_min + 1.0 / conj_min) * lebesgue_norm(problem, u, p_full, opts) *
            lebesgue_norm(problem, v, conj, opts);
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

ConvergenceReport modular_convergence_equivalence(
    const Problem& problem, const std::vector<GridFunction>& sequence,
    const GridFunction& u, const Vector& p_full, Real tol) {
  ConvergenceReport rep;
  for (const auto& un : sequence) {
    GridFunction diff{un.values - u.values, un.in_x && u.in_x};
    rep.norms.push_back(lebesgue_norm(problem, diff, p_full));
    rep.modulars.push_back(lebesgue_modular(problem, diff, p_full));
  }
  auto decays = [&](const std::vector<Real>& seq) {
    if (seq.empty()) return false;
    for (size_t k = 1; k < seq.size(); ++k)
      if (seq[k] > seq[k - 1] * (1.0 + 1e-12)) return false;
    return seq.back() <= tol;
  };
  rep.norms_to_zero = decays(rep.norms);
  rep.modulars_to_zero = decays(rep.modulars);
  rep.equivalent = (rep.norms_to_zero == rep.modulars_to_zero);
  return rep;
}

}  // namespace fpx
