#include "fpx/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fpx {

namespace {

Real lh_dot(const Problem& p, const Vector& a, const Vector& b) {
  return a.dot(b) * p.cell();
}

Real lh_norm(const Problem& p, const Vector& a) {
  return std::sqrt(a.squaredNorm() * p.cell());
}

bool is_zero(const GridFunction& u) {
  return u.values.size() == 0 || u.values.cwiseAbs().maxCoeff() == 0.0;
}

// Gradient representers against the discrete L2 pairing on Omega (zero
// outside). weak_defect(.,0) plays this role for I; these cover the rest.
Vector j_gradient(const Problem& prob, const GridFunction& u) {
  Vector g = Vector::Zero(prob.size());
  for (Index k = 0; k < prob.omega_size(); ++k) {
    const Index i = prob.grid.omega_idx[k];
    if (u.values[i] != 0.0) g[i] = signed_power(u.values[i], prob.r_omega[k]);
  }
  return g;
}

Vector j0_gradient(const Problem& prob, const GridFunction& u) {
  Vector g = Vector::Zero(prob.size());
  for (Index k = 0; k < prob.omega_size(); ++k) {
    const Index i = prob.grid.omega_idx[k];
    if (u.values[i] != 0.0)
      g[i] = prob.r_omega[k] * signed_power(u.values[i], prob.r_omega[k]);
  }
  return g;
}

Vector i0_gradient(const Problem& prob, const GridFunction& u, const Matrix& pw) {
  Vector rowsum =
      pair_difference_rowsum(u.values, prob.config.exponents.p_values, pw);
  Vector g = Vector::Zero(prob.size());
  for (Index k = 0; k < prob.omega_size(); ++k) {
    const Index i = prob.grid.omega_idx[k];
    Real v = 2.0 * rowsum[i] / prob.cell();
    const Real ui = u.values[i];
    if (ui != 0.0) {
      const Real p = prob.p_diag_omega[k];
      const Real q = prob.q_omega[k];
      if (prob.config.alpha != 0.0)
        v += prob.config.alpha * p * signed_power(ui, p);
      if (prob.config.beta != 0.0) v += prob.config.beta * q * signed_power(ui, q);
    }
    g[i] = v;
  }
  return g;
}

}  // namespace

std::vector<GridFunction> multistart_pool(const Problem& problem, int count,
                                          std::uint64_t seed) {
  std::vector<GridFunction> pool;
  pool.reserve(count);
  const Grid& grid = problem.grid;
  std::vector<std::array<Real, kMaxDim>> centers;
  Real radius;
  if (grid.dim == 1) {
    const Real a = grid.omega.lo[0], side = grid.omega.side(0);
    for (Real f : {0.125, 0.375, 0.625, 0.875})
      centers.push_back({a + f * side, 0.0});
    radius = 0.12 * side;
  } else {
    Real min_side = std::min(grid.omega.side(0), grid.omega.side(1));
    for (Real f0 : {0.25, 0.75})
      for (Real f1 : {0.25, 0.75})
        centers.push_back({grid.omega.lo[0] + f0 * grid.omega.side(0),
                           grid.omega.lo[1] + f1 * grid.omega.side(1)});
    radius = 0.2 * min_side;
  }
  const int n_random = count - std::min<int>(count / 2, static_cast<int>(centers.size()));
  for (int k = 0; k < count; ++k) {
    if (k < n_random) {
      pool.push_back(random_function(grid, seed + 1000 * k + 17, true));
    } else {
      pool.push_back(bump_function(grid, centers[(k - n_random) % centers.size()], radius));
    }
  }
  return pool;
}

Real project_to_manifold(const Problem& problem, const GridFunction& u, Real t,
                         const SolverOptions& opts) {
  if (!u.in_x) throw std::invalid_argument("project_to_manifold requires u in X");
  if (is_zero(u)) throw std::invalid_argument("cannot project the zero function");
  if (!(t > 0)) throw std::invalid_argument("manifold level t must be positive");

  const Real f_tol = opts.manifold_tol * std::max(1.0, t);
  // phi(s) = I(s u) - t is strictly increasing with phi'(s) = I0(s u)/s.
  auto eval = [&](Real s) {
    GridFunction su{s * u.values, true};
    const Functionals f = functionals(problem, su);
    return std::make_pair(f.I - t, f.I0 / s);
  };

  Real lo = 1.0, hi = 1.0;
  auto [f1, d1] = eval(1.0);
  if (std::abs(f1) <= f_tol) return 1.0;
  if (f1 < 0) {
    int k = 0;
    do {
      lo = hi;
      hi *= 2.0;
      if (++k > 200)
        throw std::runtime_error("project_to_manifold: bracket expansion exceeded");
    } while (eval(hi).first < 0);
  } else {
    int k = 0;
    do {
      hi = lo;
      lo *= 0.5;
      if (++k > 200)
        throw std::runtime_error("project_to_manifold: bracket expansion exceeded");
    } while (eval(lo).first > 0);
  }

  Real s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    auto [f, d] = eval(s);
    if (std::abs(f) <= f_tol) return s;
    if (f > 0)
      hi = s;
    else
      lo = s;
    Real s_next = (std::isfinite(d) && d > 0) ? s - f / d
                                              : std::numeric_limits<Real>::quiet_NaN();
    if (!(s_next > lo && s_next < hi)) s_next = 0.5 * (lo + hi);
    if (hi - lo <= 4 * std::numeric_limits<Real>::epsilon() * s) return s;
    s = s_next;
  }
  return s;
}

Real lagrange_lambda(const Problem& problem, const GridFunction& u) {
  if (is_zero(u)) throw std::invalid_argument("lagrange_lambda requires u != 0");
  const Functionals f = functionals(problem, u);
  if (f.J0 == 0.0)
    throw std::invalid_argument("lagrange_lambda: J0(u) = 0 (u vanishes on Omega)");
  return f.I0 / f.J0;
}

namespace {

struct AscentRun {
  GridFunction u;
  Real j = 0;
  bool converged = false;
  int iterations = 0;
  Real tangential = 0;
};

struct TangentialState {
  Vector g_i, g_tan;
  Real tangential = 0;
  Real scale = 1;
};

TangentialState tangential_gradient(const Problem& prob, const GridFunction& u) {
  TangentialState st;
  const Vector g_j = j_gradient(prob, u);
  st.g_i = weak_defect(prob, u, 0.0);
  const Real nn = lh_dot(prob, st.g_i, st.g_i);
  st.g_tan = g_j;
  if (nn > 0) st.g_tan -= (lh_dot(prob, g_j, st.g_i) / nn) * st.g_i;
  st.tangential = lh_norm(prob, st.g_tan);
  st.scale = std::max(1.0, lh_norm(prob, g_j));
  return st;
}

// Final sharpening once the Armijo phase runs out of floating-point headroom:
// value comparisons saturate at ulp(J), gradients do not. Takes damped steps
// preconditioned by the (constant-exponent) kernel matrix and accepts on
// tangential-gradient decrease.
void polish_on_manifold(const Problem& prob, Real t,
                        const Eigen::LLT<Matrix>& kernel_llt, GridFunction& u,
                        Real& tangential, bool& converged, int& iterations,
                        const SolverOptions& opts) {
  SolverOptions tight = opts;
  tight.manifold_tol = std::max(1e-13, opts.manifold_tol * 1e-3);
  TangentialState st = tangential_gradient(prob, u);
  Real eta = 1.0;
  for (int it = 0; it < 4000; ++it, ++iterations) {
    tangential = st.tangential;
    if (st.tangential <= opts.grad_tol * st.scale) {
      converged = true;
      return;
    }
    Vector delta =
        prob.scatter_omega(kernel_llt.solve(prob.omega_slice(st.g_tan)));
    const Real nn = lh_dot(prob, st.g_i, st.g_i);
    if (nn > 0) delta -= (lh_dot(prob, delta, st.g_i) / nn) * st.g_i;
    const Real dn = lh_norm(prob, delta);
    if (dn == 0.0) return;
    bool accepted = false;
    while (eta > 1e-14) {
      GridFunction v{u.values + (eta / dn) * st.tangential * delta, true};
      const Real s = project_to_manifold(prob, v, t, tight);
      GridFunction w{s * v.values, true};
      const TangentialState next = tangential_gradient(prob, w);
      if (next.tangential < st.tangential) {
        u = std::move(w);
        st = next;
        eta = std::min(eta * 1.5, 4.0);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) return;
  }
}

AscentRun ascend_one(const Problem& prob, Real t, GridFunction start,
                     const Eigen::LLT<Matrix>& kernel_llt,
                     const SolverOptions& opts) {
  AscentRun run;
  GridFunction u = std::move(start);
  u.values *= project_to_manifold(prob, u, t, opts);
  Real j_val = functional_j(prob, u);
  Real eta = 1.0;
  Real tangential = std::numeric_limits<Real>::infinity();
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    const TangentialState st = tangential_gradient(prob, u);
    tangential = st.tangential;
    if (tangential <= opts.grad_tol * st.scale) {
      run.converged = true;
      break;
    }
    const Vector d = st.g_tan / tangential;
    // steps larger than the function's own scale only waste projection work
    const Real eta_cap = std::max(1e-3, 2.0 * lh_norm(prob, u.values));
    eta = std::min(eta, eta_cap);
    bool accepted = false;
    while (eta > 1e-18) {
      GridFunction v{u.values + eta * d, true};
      const Real s = project_to_manifold(prob, v, t, opts);
      GridFunction w{s * v.values, true};
      const Real j_new = functional_j(prob, w);
      if (j_new >= j_val + opts.armijo_c * eta * tangential) {
        u = std::move(w);
        j_val = j_new;
        eta = std::min(eta * 2.0, eta_cap);
        accepted = true;
        break;
      }
      eta *= opts.armijo_factor;
    }
    // steps below representability mean the value-based search is done
    if (!accepted || eta < 1e-15 * std::max(1.0, lh_norm(prob, u.values))) break;
  }
  if (!run.converged)
    polish_on_manifold(prob, t, kernel_llt, u, tangential, run.converged, it, opts);
  run.j = functional_j(prob, u);
  run.u = std::move(u);
  run.iterations = it;
  run.tangential = tangential;
  return run;
}

}  // namespace

AscentResult maximize_j_on_manifold(const Problem& problem, Real t, int restarts,
                                    const SolverOptions& opts) {
  if (!(t > 0)) throw std::invalid_argument("manifold level t must be positive");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const Eigen::LLT<Matrix> kernel_llt(linear_operator_matrix(problem));
  const auto pool = multistart_pool(problem, restarts, opts.seed);
  std::vector<AscentRun> runs;
  for (const auto& start : pool)
    runs.push_back(ascend_one(problem, t, start, kernel_llt, opts));

  const AscentRun* best = nullptr;
  Real j_min = std::numeric_limits<Real>::infinity();
  Real j_max = -std::numeric_limits<Real>::infinity();
  for (const auto& r : runs) {
    if (!r.converged) continue;
    j_min = std::min(j_min, r.j);
    j_max = std::max(j_max, r.j);
    if (!best || r.j > best->j) best = &r;
  }
  if (!best)
    throw std::runtime_error("maximize_j_on_manifold: no restart converged");
  AscentResult out;
  out.u = best->u;
  out.c1 = best->j;
  out.converged = true;
  out.iterations = best->iterations;
  out.tangential_grad = best->tangential;
  out.best_spread = (j_max - j_min) / j_max;
  return out;
}

namespace {

struct QuotientRun {
  GridFunction u;  // final iterate, rescaled to the reference norm if collapsed
  bool degenerate = false;
  int iterations = 0;
};

// Descent on log(numerator) - log(denominator). Iterates that sink below the
// reference norm are pulled back onto that shell so the reported quotient
// stays comparable across runs and across the two quotient variants.
QuotientRun descend_quotient(const Problem& prob, bool weighted, GridFunction start,
                             const Matrix& pw, const SolverOptions& opts) {
  QuotientRun run;
  GridFunction u = std::move(start);
  {
    const Real n0 = norm_0(prob, u, opts.lux);
    if (n0 > 0) u.values /= n0;
  }
  auto objective = [&](const GridFunction& w) -> Real {
    const Functionals f = functionals(prob, w);
    const Real num = weighted ? f.I : f.I0;
    const Real den = weighted ? f.J : f.J0;
    if (den <= 0.0 || num <= 0.0) return std::numeric_limits<Real>::infinity();
    return std::log(num) - std::log(den);
  };

  Real eta = 0.5;
  Real best_obj = objective(u);
  int stall = 0;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    const Functionals f = functionals(prob, u);
    const Real num = weighted ? f.I : f.I0;
    const Real den = weighted ? f.J : f.J0;
    if (den <= 0.0 || num <= 0.0) break;
    const Vector g_num = weighted ? weak_defect(prob, u, 0.0) : i0_gradient(prob, u, pw);
    const Vector g_den = weighted ? j_gradient(prob, u) : j0_gradient(prob, u);
    const Vector g = g_num / num - g_den / den;
    const Real ng = lh_norm(prob, g);
    if (ng <= opts.grad_tol) break;
    const Vector d = -g / ng;
    const Real obj = std::log(num) - std::log(den);
    const Real eta_cap = std::max(1e-3, 2.0 * lh_norm(prob, u.values));
    eta = std::min(eta, eta_cap);
    bool accepted = false;
    while (eta > 1e-18) {
      GridFunction v{u.values + eta * d, true};
      if (objective(v) <= obj - opts.armijo_c * eta * ng) {
        u = std::move(v);
        eta = std::min(eta * 2.0, eta_cap);
        accepted = true;
        break;
      }
      eta *= opts.armijo_factor;
    }
    if (!accepted || eta < 1e-15 * std::max(1.0, lh_norm(prob, u.values))) break;

    // shell pull-back for collapsing runs
    GridFunction probe{u.values / opts.degenerate_report_norm, true};
    if (seminorm_m(prob, probe) < 1.0) {
      const Real n0 = norm_0(prob, u, opts.lux);
      if (n0 > 0) {
        u.values *= opts.degenerate_report_norm / n0;
        run.degenerate = true;
      }
    }
    const Real cur = objective(u);
    if (cur < best_obj - 1e-12 * std::abs(best_obj)) {
      best_obj = cur;
      stall = 0;
    } else if (++stall > 200) {
      break;
    }
  }
  run.u = std::move(u);
  run.iterations = it;
  return run;
}

std::vector<QuotientRun> gamma_candidates(const Problem& prob, bool weighted,
                                          int starts, const SolverOptions& opts) {
  const Matrix pw = prob.config.exponents.p_values.cwiseProduct(prob.kernel.weights);
  std::vector<QuotientRun> runs;
  for (auto& start : multistart_pool(prob, starts, opts.seed))
    runs.push_back(descend_quotient(prob, weighted, std::move(start), pw, opts));
  return runs;
}

Real quotient_at(const Problem& prob, const GridFunction& u, bool weighted) {
  const Functionals f = functionals(prob, u);
  const Real num = weighted ? f.I : f.I0;
  const Real den = weighted ? f.J : f.J0;
  if (den <= 0.0) return std::numeric_limits<Real>::infinity();
  return num / den;
}

GammaEstimate pick_best(const Problem& prob, const std::vector<QuotientRun>& runs,
                        bool weighted) {
  GammaEstimate est;
  est.value = std::numeric_limits<Real>::infinity();
  for (const auto& r : runs) {
    if (is_zero(r.u)) continue;
    const Real q = quotient_at(prob, r.u, weighted);
    est.iterations += r.iterations;
    if (q < est.value) {
      est.value = q;
      est.argmin = r.u;
      est.degenerate = r.degenerate;
    }
  }
  if (!std::isfinite(est.value))
    throw std::runtime_error("estimate_gamma: no start produced a finite quotient");
  return est;
}

}  // namespace

GammaEstimate estimate_gamma(const Problem& problem, bool weighted, int starts,
                             const SolverOptions& opts) {
  return pick_best(problem, gamma_candidates(problem, weighted, starts, opts),
                   weighted);
}

GammaPair estimate_gamma_pair(const Problem& problem, int starts,
                              const SolverOptions& opts) {
  auto runs = gamma_candidates(problem, true, starts, opts);
  auto raw = gamma_candidates(problem, false, starts, opts);
  runs.insert(runs.end(), std::make_move_iterator(raw.begin()),
              std::make_move_iterator(raw.end()));
  GammaPair pair;
  pair.gamma1 = pick_best(problem, runs, true);
  pair.gamma0 = pick_best(problem, runs, false);
  return pair;
}

namespace {

struct DescentRun {
  GridFunction u;
  Real energy = 0;
  Real residual = std::numeric_limits<Real>::infinity();
  bool collapsed = false;
  int iterations = 0;
  Real min_lagrange = std::numeric_limits<Real>::infinity();
};

// Residual sharpening for the energy descents, mirroring the manifold
// polish: once Armijo comparisons drown in the ulp of Phi, switch to damped
// kernel-preconditioned steps accepted on defect-norm decrease.
void polish_phi(const Problem& prob, Real lambda,
                const Eigen::LLT<Matrix>& kernel_llt, std::optional<Real> cap,
                GridFunction& u, int& iterations, const SolverOptions& opts) {
  SolverOptions tight = opts;
  tight.manifold_tol = std::max(1e-13, opts.manifold_tol * 1e-3);
  Vector g = weak_defect(prob, u, lambda);
  Real res = std::sqrt(prob.cell()) * g.norm();
  Real eta = 1.0;
  for (int it = 0; it < 4000; ++it, ++iterations) {
    if (res <= opts.eigen_residual_tol) return;
    const Vector delta = prob.scatter_omega(kernel_llt.solve(prob.omega_slice(g)));
    const Real dn = lh_norm(prob, delta);
    if (dn == 0.0) return;
    bool accepted = false;
    while (eta > 1e-14) {
      GridFunction v{u.values - eta * delta, true};
      if (cap && functional_i(prob, v) > *cap)
        v.values *= project_to_manifold(prob, v, *cap, tight);
      Vector g_new = weak_defect(prob, v, lambda);
      const Real res_new = std::sqrt(prob.cell()) * g_new.norm();
      if (res_new < res) {
        u = std::move(v);
        g = std::move(g_new);
        res = res_new;
        eta = std::min(eta * 1.5, 4.0);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) return;
  }
}

// Armijo descent on Phi_lambda from one start. Iterates stay inside the
// optional sublevel cap {I <= t} by radial rescaling.
DescentRun descend_phi(const Problem& prob, Real lambda, GridFunction start,
                       const Eigen::LLT<Matrix>& kernel_llt,
                       const SolverOptions& opts, std::optional<Real> cap,
                       bool track_lagrange) {
  DescentRun run;
  GridFunction u = std::move(start);
  if (cap) {
    GridFunction capped{u.values, true};
    const Real i_val = functional_i(prob, capped);
    if (i_val > *cap)
      u.values *= project_to_manifold(prob, u, *cap, opts);
  }
  const Real track_floor_modular =
      std::pow(1.0 / opts.lagrange_track_floor, -prob.config.exponents.p_plus);
  Real eta = 0.5;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    if (is_zero(u)) {
      run.collapsed = true;
      break;
    }
    const Functionals f = functionals(prob, u);
    const Real phi = f.I - lambda * f.J;
    if (track_lagrange && f.J0 > 0.0) {
      Real raw_nodes = 0;
      for (Index k = 0; k < prob.omega_size(); ++k) {
        const Real a = std::abs(u.values[prob.grid.omega_idx[k]]);
        if (a == 0.0) continue;
        if (prob.config.alpha != 0.0)
          raw_nodes += prob.config.alpha * std::pow(a, prob.p_diag_omega[k]);
        if (prob.config.beta != 0.0)
          raw_nodes += prob.config.beta * std::pow(a, prob.q_omega[k]);
      }
      const Real m_u = f.I0 - raw_nodes * prob.cell();
      if (m_u > track_floor_modular)
        run.min_lagrange = std::min(run.min_lagrange, f.I0 / f.J0);
    }
    const Vector g = weak_defect(prob, u, lambda);
    const Real res = std::sqrt(prob.cell()) * g.norm();
    if (res <= opts.eigen_residual_tol) {
      run.residual = res;
      break;
    }
    const Real ng = lh_norm(prob, g);
    const Vector d = -g / ng;
    const Real eta_cap = std::max(1e-3, 2.0 * lh_norm(prob, u.values));
    eta = std::min(eta, eta_cap);
    bool accepted = false;
    while (eta > 1e-18) {
      GridFunction v{u.values + eta * d, true};
      Real phi_new;
      if (cap) {
        const Real i_new = functional_i(prob, v);
        if (i_new > *cap) v.values *= project_to_manifold(prob, v, *cap, opts);
      }
      phi_new = phi_lambda(prob, v, lambda);
      if (phi_new <= phi - opts.armijo_c * eta * ng) {
        u = std::move(v);
        accepted = true;
        eta = std::min(eta * 2.0, eta_cap);
        break;
      }
      eta *= opts.armijo_factor;
    }
    if (!accepted || eta < 1e-15 * std::max(1.0, lh_norm(prob, u.values))) {
      run.residual = res;
      break;
    }
    if (it % 8 == 0) {
      GridFunction probe{u.values / opts.collapse_norm, true};
      if (seminorm_m(prob, probe) <= 1.0) {
        run.collapsed = true;
        break;
      }
    }
  }
  if (!run.collapsed && !is_zero(u)) {
    GridFunction probe{u.values / opts.collapse_norm, true};
    if (seminorm_m(prob, probe) <= 1.0) run.collapsed = true;
  } else if (is_zero(u)) {
    run.collapsed = true;
  }
  if (!run.collapsed && weak_residual(prob, u, lambda) > opts.eigen_residual_tol)
    polish_phi(prob, lambda, kernel_llt, cap, u, it, opts);
  run.u = std::move(u);
  run.iterations = it;
  if (!run.collapsed) {
    run.energy = phi_lambda(prob, run.u, lambda);
    run.residual = weak_residual(prob, run.u, lambda);
  }
  return run;
}

}  // namespace

MinimizeResult minimize_phi_lambda(const Problem& problem, Real lambda, int starts,
                                   const SolverOptions& opts,
                                   std::optional<Real> sublevel_cap,
                                   bool track_lagrange) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  if (starts < 1) throw std::invalid_argument("starts must be >= 1");
  const Eigen::LLT<Matrix> kernel_llt(linear_operator_matrix(problem));

  auto pool = multistart_pool(problem, starts, opts.seed);
  if (sublevel_cap) {
    // spread starts over the sublevel set rather than its boundary
    const Real fracs[] = {0.9, 0.5, 0.1, 0.01};
    for (size_t k = 0; k < pool.size(); ++k) {
      const Real target = *sublevel_cap * fracs[k % 4];
      pool[k].values *= project_to_manifold(problem, pool[k], target, opts);
    }
  }
  // Zero is a local minimum whenever the r-term grows faster than the
  // p-term, so a unit-amplitude start can sit inside the trivial basin.
  // Seed each ray at the amplitude minimizing the energy along it.
  for (auto& start : pool) {
    Real best_c = 1.0;
    Real best_phi = phi_lambda(problem, start, lambda);
    for (int k = -2; k <= 12; ++k) {
      const Real c = std::pow(2.0, k);
      GridFunction cu{c * start.values, true};
      if (sublevel_cap && functional_i(problem, cu) > *sublevel_cap) continue;
      const Real val = phi_lambda(problem, cu, lambda);
      if (std::isfinite(val) && val < best_phi) {
        best_phi = val;
        best_c = c;
      }
    }
    start.values *= best_c;
  }

  MinimizeResult out;
  out.total_starts = starts;
  const DescentRun* best = nullptr;
  std::vector<DescentRun> runs;
  runs.reserve(pool.size());
  for (auto& start : pool) {
    runs.push_back(descend_phi(problem, lambda, std::move(start), kernel_llt, opts,
                               sublevel_cap, track_lagrange));
    const DescentRun& r = runs.back();
    out.iterations += r.iterations;
    out.min_tracked_lagrange = std::min(out.min_tracked_lagrange, r.min_lagrange);
    if (r.collapsed) {
      ++out.collapsed_starts;
      continue;
    }
    if (!best || r.energy < best->energy) best = &runs.back();
  }

  if (best) {
    // the paper's final step: |w| never increases the energy; polish after it
    GridFunction abs_u{best->u.values.cwiseAbs(), true};
    DescentRun polished = descend_phi(problem, lambda, abs_u, kernel_llt, opts,
                                      sublevel_cap, track_lagrange);
    out.iterations += polished.iterations;
    out.min_tracked_lagrange =
        std::min(out.min_tracked_lagrange, polished.min_lagrange);
    const DescentRun& final_run =
        (!polished.collapsed && polished.energy <= best->energy) ? polished : *best;
    if (!final_run.collapsed && final_run.residual <= opts.eigen_residual_tol &&
        final_run.energy < 0) {
      out.verdict = MinimizeVerdict::Eigenpair;
      out.pair.u = final_run.u;
      out.pair.lambda = lambda;
      out.pair.residual = final_run.residual;
      out.pair.energy = final_run.energy;
      return out;
    }
  }
  out.verdict = (out.collapsed_starts == starts) ? MinimizeVerdict::Trivial
                                                 : MinimizeVerdict::Failed;
  return out;
}

SpectralScan scan_mu1(const Problem& problem, const std::vector<Real>& t_list,
                      int restarts, const SolverOptions& opts) {
  if (t_list.empty()) throw std::invalid_argument("scan_mu1: empty t list");
  for (Real t : t_list)
    if (!(t > 0)) throw std::invalid_argument("scan_mu1: t levels must be positive");

  SpectralScan scan;
  scan.mu_star_lower = std::numeric_limits<Real>::infinity();
  scan.mu_star_upper = -std::numeric_limits<Real>::infinity();
  for (Real t : t_list) {
    scan.t_values.push_back(t);
    bool ok = true;
    Real c1 = std::numeric_limits<Real>::quiet_NaN();
    Real lam = std::numeric_limits<Real>::quiet_NaN();
    try {
      const AscentResult r = maximize_j_on_manifold(problem, t, restarts, opts);
      c1 = r.c1;
      lam = lagrange_lambda(problem, r.u);
    } catch (const std::exception&) {
      ok = false;
    }
    scan.c1_values.push_back(c1);
    const Real mu1 = t / c1;
    scan.mu1_values.push_back(mu1);
    scan.lambda_star_t.push_back(lam);
    scan.converged.push_back(ok);
    if (ok) {
      scan.mu_star_lower = std::min(scan.mu_star_lower, mu1);
      scan.mu_star_upper = std::max(scan.mu_star_upper, mu1);
    }
  }
  return scan;
}

PositivityReport positivity_equivalence_probe(
    const std::vector<GammaSeriesPoint>& gamma_series, const SpectralScan& scan) {
  PositivityReport rep;
  rep.gamma_series = gamma_series;
  for (size_t k = 0; k < scan.lambda_star_t.size(); ++k)
    if (scan.converged[k]) rep.lambda_star_series.push_back(scan.lambda_star_t[k]);

  if (gamma_series.empty() || rep.lambda_star_series.empty()) {
    rep.notes = "insufficient data";
    return rep;
  }
  bool any_degenerate = false;
  for (const auto& g : gamma_series) any_degenerate |= g.degenerate;
  const Real g_first = gamma_series.front().gamma0;
  const Real g_last = gamma_series.back().gamma0;
  const bool gamma_stable = !any_degenerate && g_last >= 0.8 * g_first && g_last > 0;
  const bool gamma_decaying = any_degenerate || g_last <= 0.5 * g_first;

  const auto& ls = rep.lambda_star_series;
  bool lambda_decaying = ls.size() >= 2;
  for (size_t k = 1; k < ls.size(); ++k)
    lambda_decaying = lambda_decaying && ls[k] <= ls[k - 1] * (1.0 + 1e-9);
  lambda_decaying = lambda_decaying && ls.back() <= 0.5 * ls.front();
  Real lambda_min = *std::min_element(ls.begin(), ls.end());
  const bool lambda_floor_ok = lambda_min >= 0.95 * g_last;

  if (gamma_stable && lambda_floor_ok) {
    rep.evidence = PositivityEvidence::AllPositive;
    rep.notes = "gamma estimates stable across refinements and all scanned "
                "eigenvalue estimates sit above them";
  } else if (gamma_decaying && lambda_decaying) {
    rep.evidence = PositivityEvidence::AllZero;
    rep.notes = "gamma estimates and scanned eigenvalue estimates decay together";
  } else {
    rep.evidence = PositivityEvidence::Inconclusive;
    rep.notes = "indicators disagree; both series attached";
  }
  return rep;
}

EmbeddingBound embedding_constant_lowerbound(const Problem& problem, int samples,
                                             const SolverOptions& opts) {
  const Grid& grid = problem.grid;
  std::vector<Real> ratios;
  ratios.reserve(samples);
  const Real scales[] = {1e-2, 1.0, 1e2};
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
  auto unit = [&]() {
    return static_cast<Real>(rng() >> 11) * 0x1.0p-53;
  };
  for (int k = 0; k < samples; ++k) {
    GridFunction u;
    if (k % 2 == 0) {
      u = random_function(grid, opts.seed + 31 * k, true);
    } else {
      std::array<Real, kMaxDim> c{0.0, 0.0};
      Real max_r = std::numeric_limits<Real>::infinity();
      for (int a = 0; a < grid.dim; ++a) {
        const Real side = grid.omega.side(a);
        c[a] = grid.omega.lo[a] + (0.2 + 0.6 * unit()) * side;
        max_r = std::min({max_r, c[a] - grid.omega.lo[a], grid.omega.hi[a] - c[a]});
      }
      u = bump_function(grid, c, (0.3 + 0.65 * unit()) * max_r);
    }
    u.values *= scales[(k / 2) % 3];
    if (is_zero(u)) continue;
    const Real denom = norm_0(problem, u, opts.lux);
    if (denom == 0.0) continue;
    const Real num =
        lebesgue_norm(problem, u, problem.config.exponents.r_values, opts.lux);
    ratios.push_back(num / denom);
  }
  EmbeddingBound out;
  if (ratios.empty()) return out;
  std::sort(ratios.begin(), ratios.end());
  out.max_ratio = ratios.back();
  out.median_ratio = ratios[ratios.size() / 2];
  out.bounded = out.max_ratio <= 10.0 * out.median_ratio;
  return out;
}

}  // namespace fpx
