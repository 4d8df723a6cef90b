#include "fpx/grid.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fpx {

Grid build_grid(const GridGeometry& geom) {
  if (geom.resolution < 4)
    throw std::invalid_argument("grid resolution must be at least 4 nodes per axis");
  if (geom.dim < 1 || geom.dim > kMaxDim)
    throw std::invalid_argument("grid dimension must be 1 or 2");
  if (!geom.omega.strictly_inside(geom.box))
    throw std::invalid_argument("Omega must lie strictly inside the truncation box");

  Grid g;
  g.dim = geom.dim;
  g.box = geom.box;
  g.omega = geom.omega;
  g.resolution = geom.resolution;
  for (int a = 0; a < g.dim; ++a)
    g.spacing[a] = g.box.side(a) / static_cast<Real>(g.resolution);
  g.cell_measure = 1.0;
  for (int a = 0; a < g.dim; ++a) g.cell_measure *= g.spacing[a];

  const Index per_axis = g.resolution;
  const Index n = (g.dim == 1) ? per_axis : per_axis * per_axis;
  g.nodes.resize(n, g.dim);
  g.omega_mask.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Index k0 = i % per_axis;
    const Index k1 = i / per_axis;
    g.nodes(i, 0) = g.box.lo[0] + (static_cast<Real>(k0) + 0.5) * g.spacing[0];
    if (g.dim == 2)
      g.nodes(i, 1) = g.box.lo[1] + (static_cast<Real>(k1) + 0.5) * g.spacing[1];
    const bool inside = g.omega.contains(g.nodes.row(i).data());
    g.omega_mask[i] = inside;
    if (inside) g.omega_idx.push_back(i);
  }
  if (g.omega_idx.empty() || g.omega_idx.size() == static_cast<size_t>(n))
    throw std::invalid_argument("Omega mask must be a proper nonempty subset of the lattice");
  return g;
}

Grid build_grid(const ProblemConfig& config) {
  return build_grid(GridGeometry{config.dim, config.omega, config.box, config.resolution});
}

GridFunction restrict_to_x(const Grid& grid, Vector values) {
  for (Index i = 0; i < grid.size(); ++i)
    if (!grid.omega_mask[i]) values[i] = 0.0;
  return GridFunction{std::move(values), true};
}

GridFunction random_function(const Grid& grid, std::uint64_t seed, bool in_x) {
  std::mt19937_64 rng(seed);
  Vector v(grid.size());
  for (Index i = 0; i < v.size(); ++i) {
    // 53 high bits -> uniform double in [0,1), mapped to [-1,1]
    const Real u = static_cast<Real>(rng() >> 11) * 0x1.0p-53;
    v[i] = 2.0 * u - 1.0;
  }
  if (in_x) return restrict_to_x(grid, std::move(v));
  return GridFunction{std::move(v), false};
}

GridFunction bump_function(const Grid& grid, std::array<Real, kMaxDim> center,
                           Real radius) {
  Vector v(grid.size());
  bool support_in_omega = true;
  for (Index i = 0; i < grid.size(); ++i) {
    Real d2 = 0;
    for (int a = 0; a < grid.dim; ++a) {
      const Real d = grid.node(i, a) - center[a];
      d2 += d * d;
    }
    v[i] = bump_profile(std::sqrt(d2) / radius);
    if (v[i] != 0.0 && !grid.omega_mask[i]) support_in_omega = false;
  }
  return GridFunction{std::move(v), support_in_omega};
}

KernelTable build_kernel_table(const Grid& grid, const ExponentField& exponents,
                               Real s) {
  const Index n = grid.size();
  const Real dimension = static_cast<Real>(grid.dim);
  const Real cell2 = grid.cell_measure * grid.cell_measure;
  KernelTable table;
  table.weights = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      Real d2 = 0;
      for (int a = 0; a < grid.dim; ++a) {
        const Real d = grid.nodes(i, a) - grid.nodes(j, a);
        d2 += d * d;
      }
      const Real dist = std::sqrt(d2);
      const Real w =
          std::pow(dist, -(dimension + s * exponents.p_values(i, j))) * cell2;
      table.weights(i, j) = w;
      table.weights(j, i) = w;
    }
  }
  return table;
}

}  // namespace fpx
