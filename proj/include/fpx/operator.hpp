#pragma once

#include "fpx/modular.hpp"
#include "fpx/problem.hpp"

namespace fpx {

/// Candidate weak solution of the eigenvalue problem.
struct EigenPair {
  GridFunction u;
  Real lambda = 0;
  Real residual = 0;  // discrete L2 surrogate of the weak-form defect
  Real energy = 0;    // Phi_lambda(u)
};

/// Pointwise application of the nonlocal operator:
///   (Au)_i = 2 sum_{j != i} |u_i - u_j|^{p(i,j)-2} (u_i - u_j) w(i,j) / h^N.
/// The diagonal exclusion in the kernel table realizes the principal-value
/// limit. Requires u.in_x. Output has units of u per unit volume.
Vector apply_operator(const Problem& problem, const GridFunction& u);

/// Left side of the weak formulation:
///   sum |u_i-u_j|^{p-2}(u_i-u_j)(v_i-v_j) w(i,j)
///   + alpha sum |u|^{p-2} u v h^N + beta sum |u|^{q-2} u v h^N.
/// Satisfies weak_pairing(u, u) = I0(u). Requires u.in_x and v.in_x.
Real weak_pairing(const Problem& problem, const GridFunction& u,
                  const GridFunction& v);

/// Nodal representer of the defect functional
///   v -> weak_pairing(u, v) - lambda sum |u|^{r-2} u v h^N
/// against the discrete L2 pairing on Omega: the strong-form residual per
/// node, zero outside Omega. This is also the gradient of Phi_lambda.
Vector weak_defect(const Problem& problem, const GridFunction& u, Real lambda);

/// Discrete L2 norm of the defect representer: h^{N/2} ||g||_2. A dual-norm
/// surrogate, not a true X* norm; flagged as such in run metadata.
Real weak_residual(const Problem& problem, const GridFunction& u, Real lambda);

/// Phi_lambda(u) = I(u) - lambda J(u).
Real phi_lambda(const Problem& problem, const GridFunction& u, Real lambda);

/// Energy and its nodal gradient (the weak defect vector).
std::pair<Real, Vector> phi_lambda_with_gradient(const Problem& problem,
                                                 const GridFunction& u,
                                                 Real lambda);

/// Dense matrix of the bilinear pairing at constant p = 2, alpha = beta = 0,
/// over Omega nodes: the linear-case oracle operator. Entries are
/// weak_pairing(e_k, e_l) assembled in closed form from the kernel table.
Matrix linear_operator_matrix(const Problem& problem);

}  // namespace fpx
