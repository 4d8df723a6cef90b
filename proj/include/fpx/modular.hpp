#pragma once

#include <functional>

#include "fpx/problem.hpp"

namespace fpx {

// ---------------------------------------------------------------------------
// Dense pair kernels. These free functions are the inner loops of every
// double-integral quantity; they act on plain Eigen matrices so callers can
// pass either the full box slices or the Omega x Omega slices.
// ---------------------------------------------------------------------------

/// sum_{i,j} |u_i - u_j|^{P_ij} W_ij, optionally divided by P_ij termwise.
/// Ordered pairs; the diagonal contributes zero through W.
Real pair_power_sum(const Vector& u, const Matrix& P, const Matrix& W,
                    bool divide_by_p);

/// sum_{i,j} |u_i - u_j|^{P_ij - 2}(u_i - u_j)(v_i - v_j) W_ij.
Real pair_difference_pairing(const Vector& u, const Vector& v, const Matrix& P,
                             const Matrix& W);

/// Row sums g_i = sum_j |u_i - u_j|^{P_ij - 2}(u_i - u_j) W_ij.
Vector pair_difference_rowsum(const Vector& u, const Matrix& P, const Matrix& W);

/// |t|^{e-2} t with the continuous extension 0 at t = 0 (valid for e > 1).
Real signed_power(Real t, Real e);

// ---------------------------------------------------------------------------
// Modulars
// ---------------------------------------------------------------------------

enum class PairDomain { OmegaOmega, BoxBox };

/// Selects which modular is evaluated: weighted (1/p, 1/q divisors) or raw,
/// over which pair domain, and with which zero-order coefficients.
struct ModularSpec {
  bool weighted = true;
  PairDomain domain = PairDomain::OmegaOmega;
  Real alpha = 0.0;
  Real beta = 0.0;

  static ModularSpec rho_spec(const Problem& p) {
    return {true, PairDomain::OmegaOmega, p.config.alpha, p.config.beta};
  }
  static ModularSpec seminorm_m() { return {false, PairDomain::BoxBox, 0.0, 0.0}; }
};

/// Pair term only: the Gagliardo double sum over the selected domain.
/// BoxBox requires u.in_x (the sum stands for the whole-space integral).
Real seminorm_modular(const Problem& problem, const GridFunction& u,
                      const ModularSpec& spec);

/// Full modular: pair term plus alpha |u|^p and beta |u|^q node terms over
/// Omega (divisors applied iff spec.weighted).
Real rho(const Problem& problem, const GridFunction& u, const ModularSpec& spec);

/// M(u): unweighted B x B pair sum, the modular of the norm ||.||_0.
Real seminorm_m(const Problem& problem, const GridFunction& u);

struct Functionals {
  Real I = 0, I0 = 0, J = 0, J0 = 0;
};

/// The four energy functionals of the eigenvalue problem. Requires u.in_x.
Functionals functionals(const Problem& problem, const GridFunction& u);

Real functional_i(const Problem& problem, const GridFunction& u);
Real functional_j(const Problem& problem, const GridFunction& u);

/// sum over Omega of |u_i|^{e_i} h^N for a nodal exponent field e.
Real lebesgue_modular(const Problem& problem, const GridFunction& u,
                      const Vector& exponent_full);

// ---------------------------------------------------------------------------
// Luxemburg norms
// ---------------------------------------------------------------------------

struct LuxemburgOptions {
  Real tol = 1e-10;        // residual |modular(u/mu) - 1|
  int max_doublings = 200;
  int max_bisect = 2000;
};

/// Norm induced by a modular: the unique mu with modular(u/mu) = 1, located
/// by doubling/halving bracket expansion from [1e-8, 1] followed by
/// bisection on the decreasing map mu -> modular(u/mu). Returns 0 when the
/// modular vanishes at every scale. Throws after max_doublings expansions.
Real luxemburg_norm(const std::function<Real(Real)>& modular_of_u_over_mu,
                    const LuxemburgOptions& opts = {});

/// ||u||_1: Luxemburg norm of rho (Omega x Omega, weighted, config alpha/beta).
Real norm_1(const Problem& problem, const GridFunction& u,
            const LuxemburgOptions& opts = {});

/// ||u||_0: Luxemburg norm of M (B x B, unweighted).
Real norm_0(const Problem& problem, const GridFunction& u,
            const LuxemburgOptions& opts = {});

/// Variable-exponent Lebesgue norm over Omega for a nodal exponent field.
Real lebesgue_norm(const Problem& problem, const GridFunction& u,
                   const Vector& exponent_full, const LuxemburgOptions& opts = {});

// ---------------------------------------------------------------------------
// Derivative pairings and the Lebesgue-space toolkit
// ---------------------------------------------------------------------------

/// <rho'(u), phi> for the weighted modular selected by `spec`:
/// pair term without divisors plus alpha |u|^{p-2} u phi and
/// beta |u|^{q-2} u phi node terms.
Real rho_prime_pairing(const Problem& problem, const GridFunction& u,
                       const GridFunction& phi, const ModularSpec& spec);

/// <J'(u), v> = sum over Omega of |u|^{r-2} u v h^N.
Real j_prime_pairing(const Problem& problem, const GridFunction& u,
                     const GridFunction& v);

struct HolderCheck {
  Real lhs = 0;
  Real rhs = 0;
  bool pass = false;
};

/// Two-factor Hoelder inequality in L^{p(.)} x L^{p'(.)} over Omega:
/// |sum u v h| <= (1/p- + 1/p'-) ||u||_{p(.)} ||v||_{p'(.)}.
/// Throws if p(x) == 1 at some Omega node (conjugate undefined).
HolderCheck holder_pairing_check(const Problem& problem, const GridFunction& u,
                                 const GridFunction& v, const Vector& p_full,
                                 const LuxemburgOptions& opts = {});

struct ConvergenceReport {
  std::vector<Real> norms;     // ||u_n - u||_{L^{p(.)}}
  std::vector<Real> modulars;  // rho_p(u_n - u)
  bool norms_to_zero = false;
  bool modulars_to_zero = false;
  bool equivalent = false;  // both converge or neither does
};

/// Side-by-side decay of Lebesgue norms and modulars of u_n - u.
ConvergenceReport modular_convergence_equivalence(
    const Problem& problem, const std::vector<GridFunction>& sequence,
    const GridFunction& u, const Vector& p_full, Real tol = 1e-8);

}  // namespace fpx
