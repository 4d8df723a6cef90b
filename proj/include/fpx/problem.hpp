#pragma once

#include "fpx/exponents.hpp"
#include "fpx/grid.hpp"

namespace fpx {

/// One fully assembled problem instance: configuration, lattice, kernel
/// weights, and the Omega-restricted slices every modular evaluation reuses.
/// Immutable after construction; safe to share across threads.
struct Problem {
  ProblemConfig config;
  Grid grid;
  KernelTable kernel;

  // cached slices over Omega nodes
  Matrix p_omega;      // p(x,y) for x,y in Omega
  Matrix w_omega;      // kernel weights for pairs in Omega x Omega
  Vector p_diag;       // p(x,x) at every node
  Vector p_diag_omega;
  Vector q_omega;
  Vector r_omega;

  Index size() const { return grid.size(); }
  Index omega_size() const { return grid.omega_size(); }
  Real cell() const { return grid.cell_measure; }

  Vector omega_slice(const Vector& full) const;
  /// Scatters an Omega-indexed vector back to a full-length vector (zeros outside).
  Vector scatter_omega(const Vector& on_omega) const;
};

Problem assemble_problem(const GridGeometry& geom, Real s, Real alpha, Real beta,
                         const FieldSpec& p, const FieldSpec& q, const FieldSpec& r);

/// Relative truncation-error bound margin^{-s p-} for dropping pairs with one
/// endpoint outside B; margin is the distance from Omega to the boundary of B.
Real truncation_error_bound(const Problem& problem);

}  // namespace fpx
