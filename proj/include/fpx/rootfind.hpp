#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "fpx/types.hpp"

namespace fpx {

/// Root of a continuous increasing function inside a given bracket.
/// Newton steps from the midpoint when a derivative is supplied, falling back
/// to plain bisection whenever a step leaves the bracket; the bracket is the
/// invariant, so termination is as robust as bisection.
///
/// Stops when |f(x)| <= f_tol. Throws if the bracket does not straddle zero.
template <typename F, typename DF>
Real solve_increasing(F&& f, DF&& df, Real lo, Real hi, Real f_tol,
                      int max_iter = 200) {
  Real flo = f(lo);
  Real fhi = f(hi);
  if (std::abs(flo) <= f_tol) return lo;
  if (std::abs(fhi) <= f_tol) return hi;
  if (flo > 0 || fhi < 0)
    throw std::runtime_error("solve_increasing: bracket does not straddle root");

  Real x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    Real fx = f(x);
    if (std::abs(fx) <= f_tol) return x;
    if (fx > 0)
      hi = x;
    else
      lo = x;
    Real x_next = std::numeric_limits<Real>::quiet_NaN();
    Real d = df(x);
    if (std::isfinite(d) && d > 0) x_next = x - fx / d;
    if (!(x_next > lo && x_next < hi)) x_next = 0.5 * (lo + hi);
    if (hi - lo <= 4 * std::numeric_limits<Real>::epsilon() * std::abs(x))
      return x;  // bracket exhausted at machine precision
    x = x_next;
  }
  return x;
}

/// Same contract without derivative information: pure bisection.
template <typename F>
Real bisect_increasing(F&& f, Real lo, Real hi, Real f_tol, int max_iter = 2000) {
  return solve_increasing(
      std::forward<F>(f), [](Real) { return std::numeric_limits<Real>::quiet_NaN(); },
      lo, hi, f_tol, max_iter);
}

}  // namespace fpx
