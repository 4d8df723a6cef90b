#pragma once

#include <cstdint>

#include "fpx/exponents.hpp"
#include "fpx/types.hpp"

namespace fpx {

/// Uniform tensor lattice on the truncation box B with an Omega membership
/// mask. Node centers sit at box.lo + (k + 1/2) h per axis, so no node lies
/// on the boundary of Omega.
struct Grid {
  int dim = 1;
  Box box;
  Box omega;
  Index resolution = 0;            // nodes per axis
  RowMajorMatrix nodes;            // size() x dim, lattice order (axis 0 fastest)
  std::array<Real, kMaxDim> spacing{0.0, 0.0};
  Real cell_measure = 0;           // product of spacings
  std::vector<bool> omega_mask;    // node center inside Omega
  IndexList omega_idx;

  Index size() const { return nodes.rows(); }
  Index omega_size() const { return static_cast<Index>(omega_idx.size()); }
  Real node(Index i, int axis) const { return nodes(i, axis); }
};

struct GridGeometry {
  int dim = 1;
  Box omega;
  Box box;
  Index resolution = 64;
};

/// Builds the lattice. Requires resolution >= 4 and Omega strictly inside B.
Grid build_grid(const GridGeometry& geom);
Grid build_grid(const ProblemConfig& config);

/// Nodal values of a function on the grid. `in_x` asserts the zero-exterior
/// condition: values vanish at every node outside Omega.
struct GridFunction {
  Vector values;
  bool in_x = false;
};

/// Zeroes the exterior nodes and flags the function as a member of X.
GridFunction restrict_to_x(const Grid& grid, Vector values);

/// Reproducible pseudo-random nodal values in [-1, 1]. The generator maps
/// raw mt19937_64 output to doubles directly so results do not depend on the
/// standard library's distribution implementation.
GridFunction random_function(const Grid& grid, std::uint64_t seed, bool in_x);

/// Smooth bump centered at `center` with the given support radius, scaled to
/// peak value 1. In X whenever the support closure stays inside Omega.
GridFunction bump_function(const Grid& grid, std::array<Real, kMaxDim> center,
                           Real radius);

/// Dense table of pair quadrature weights
///   w(i,j) = |x_i - x_j|^{-(N + s p(i,j))} * cell_measure^2,  i != j,
/// with zero diagonal. The diagonal cell is the discrete realization of the
/// principal-value limit; its omitted contribution is O(h^{p-(1-s)}) for
/// Lipschitz functions.
struct KernelTable {
  Matrix weights;
  std::string diagonal_policy = "exclude";
};

KernelTable build_kernel_table(const Grid& grid, const ExponentField& exponents,
                               Real s);

}  // namespace fpx
