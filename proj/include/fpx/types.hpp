#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpx {

using Real = double;
using Index = Eigen::Index;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = DenseVector<Real>;
using Matrix = DenseMatrix<Real>;
// row-major so that row(i).data() is a contiguous coordinate tuple
using RowMajorMatrix =
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ArrayX = Eigen::ArrayXd;
using ArrayXX = Eigen::ArrayXXd;
using IndexList = std::vector<Index>;

inline constexpr int kMaxDim = 2;

/// Axis-aligned box in 1 or 2 dimensions. Only the first `dim` axes are used.
struct Box {
  int dim = 1;
  std::array<Real, kMaxDim> lo{0.0, 0.0};
  std::array<Real, kMaxDim> hi{0.0, 0.0};

  Real side(int axis) const { return hi[axis] - lo[axis]; }

  Real diameter() const {
    Real d2 = 0;
    for (int a = 0; a < dim; ++a) d2 += side(a) * side(a);
    return std::sqrt(d2);
  }

  bool contains(const Real* x) const {
    for (int a = 0; a < dim; ++a)
      if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
  }

  /// True iff this box lies strictly inside `outer` on every axis.
  bool strictly_inside(const Box& outer) const {
    for (int a = 0; a < dim; ++a)
      if (lo[a] <= outer.lo[a] || hi[a] >= outer.hi[a]) return false;
    return true;
  }
};

/// Distance from the inner box to the boundary of the outer one (min over axes).
inline Real boundary_margin(const Box& inner, const Box& outer) {
  Real m = std::numeric_limits<Real>::infinity();
  for (int a = 0; a < inner.dim; ++a) {
    m = std::min(m, inner.lo[a] - outer.lo[a]);
    m = std::min(m, outer.hi[a] - inner.hi[a]);
  }
  return m;
}

}  // namespace fpx
