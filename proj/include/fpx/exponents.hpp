#pragma once

#include <optional>
#include <string>

#include "fpx/types.hpp"

namespace fpx {

struct Grid;

/// Analytic description of a variable exponent, evaluated at grid nodes.
/// The pair exponent p(x,y) is built from a point profile g via
/// p(x,y) = (g(x) + g(y)) / 2, which is symmetric by construction; dense
/// per-node (or per-pair) samples can be supplied instead.
struct FieldSpec {
  enum class Kind { Constant, Affine, Bump, Samples };

  Kind kind = Kind::Constant;
  Real base = 2.0;
  std::array<Real, kMaxDim> slope{0.0, 0.0};   // affine: base + slope.x
  std::array<Real, kMaxDim> center{0.0, 0.0};  // bump center
  Real radius = 0.0;                           // bump support radius
  Real height = 0.0;                           // bump amplitude (may be negative)
  // Samples: n values (node-indexed point field) or n^2 values (row-major
  // pair matrix, p only).
  Vector samples;

  Real eval(const Real* x, int dim) const;

  static FieldSpec constant(Real v) {
    FieldSpec f;
    f.kind = Kind::Constant;
    f.base = v;
    return f;
  }
  static FieldSpec bump(Real base, Real height, std::array<Real, kMaxDim> center,
                        Real radius) {
    FieldSpec f;
    f.kind = Kind::Bump;
    f.base = base;
    f.height = height;
    f.center = center;
    f.radius = radius;
    return f;
  }
  static FieldSpec affine(Real base, std::array<Real, kMaxDim> slope) {
    FieldSpec f;
    f.kind = Kind::Affine;
    f.base = base;
    f.slope = slope;
    return f;
  }
};

/// Smooth compactly supported profile: exp(1 - 1/(1-t^2)) on |t|<1, else 0.
/// Equals 1 at t = 0 and vanishes with all derivatives at |t| = 1.
Real bump_profile(Real t);

/// Sampled exponent fields with their extremal bounds.
///
/// p is sampled on all node pairs of the truncation box B; q and r are
/// sampled at every node but enter the problem only on Omega, so their
/// recorded extremes are taken over Omega nodes. p's extremes are over all
/// pairs of B, the discrete stand-in for the whole space.
struct ExponentField {
  Matrix p_values;  // n x n, symmetric
  Vector q_values;  // length n
  Vector r_values;  // length n
  Real p_minus = 0, p_plus = 0;
  Real q_minus = 0, q_plus = 0;
  Real r_minus = 0, r_plus = 0;
};

ExponentField sample_exponents(const Grid& grid, const FieldSpec& p,
                               const FieldSpec& q, const FieldSpec& r);

/// Geometry and coefficients of one eigenvalue problem instance.
struct ProblemConfig {
  int dim = 1;
  Real s = 0.25;
  Real alpha = 0.0;
  Real beta = 0.0;
  Box omega;
  Box box;
  Index resolution = 64;
  ExponentField exponents;
};

/// N p(x,x) / (N - s p(x,x)) at node `i`. Throws if s p(x,x) >= N.
Real critical_exponent(const ProblemConfig& config, const Grid& grid, Index node);

struct ConditionCheck {
  std::string name;
  bool passed = false;
  std::string witness;  // empty when passed
};

struct ValidationReport {
  std::vector<ConditionCheck> checks;
  bool q_ge_p_everywhere = false;  // hypothesis used by the modular-norm bounds

  bool passed(const std::string& name) const;
  /// True iff the structural conditions on p, q, r all hold.
  bool structurally_valid() const;
  std::string to_string() const;
};

/// Checks the symmetry/range condition on p, and the subcritical conditions
/// on q and r, node by node. Failures are report entries, never exceptions.
ValidationReport validate_conditions(const ProblemConfig& config, const Grid& grid);

/// Checks the ordering chain p+ < r- <= r+ < q- <= q+ < N p- / (N - s p-),
/// reporting the first failing link.
ValidationReport validate_growth(const ProblemConfig& config);

/// A node-centered open ball found by the witness scans.
struct BallWitness {
  Index center_node = -1;
  Real radius = 0;
  Real r_extreme = 0;   // r+ over the ball (A1) or r- (A2)
  Real pq_extreme = 0;  // min{p-,q-} (A1) or max{p+,q+} (A2) over the ball
};

/// Scans node-centered balls with dyadic radii for an open set U with
/// r+(U) < min{p-(U x B), q-(U)}. Radii descend, centers follow lattice
/// order; the first hit is returned.
std::optional<BallWitness> find_a1_witness(const ProblemConfig& config,
                                           const Grid& grid);

/// Mirror scan for r-(U) > max{p+(U x B), q+(U)}.
std::optional<BallWitness> find_a2_witness(const ProblemConfig& config,
                                           const Grid& grid);

}  // namespace fpx
