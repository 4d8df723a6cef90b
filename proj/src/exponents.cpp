#include "fpx/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpx/grid.hpp"

namespace fpx {

Real bump_profile(Real t) {
  const Real t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

Real FieldSpec::eval(const Real* x, int dim) const {
  switch (kind) {
    case Kind::Constant:
      return base;
    case Kind::Affine: {
      Real v = base;
      for (int a = 0; a < dim; ++a) v += slope[a] * x[a];
      return v;
    }
    case Kind::Bump: {
      Real d2 = 0;
      for (int a = 0; a < dim; ++a) {
        const Real d = x[a] - center[a];
        d2 += d * d;
      }
      return base + height * bump_profile(std::sqrt(d2) / radius);
    }
    case Kind::Samples:
      throw std::logic_error("FieldSpec: sample fields are indexed, not evaluated");
  }
  return base;
}

namespace {

Vector sample_point_field(const Grid& grid, const FieldSpec& spec) {
  const Index n = grid.size();
  if (spec.kind == FieldSpec::Kind::Samples) {
    if (spec.samples.size() != n)
      throw std::invalid_argument("exponent sample file length does not match node count");
    return spec.samples;
  }
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = spec.eval(grid.nodes.row(i).data(), grid.dim);
  return v;
}

Matrix sample_pair_field(const Grid& grid, const FieldSpec& spec) {
  const Index n = grid.size();
  Vector g;
  if (spec.kind == FieldSpec::Kind::Samples) {
    if (spec.samples.size() == n * n) {
      Matrix p(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) p(i, j) = spec.samples[i * n + j];
      return p;
    }
    if (spec.samples.size() != n)
      throw std::invalid_argument(
          "pair exponent sample file must hold n or n^2 values");
    g = spec.samples;
  } else {
    g = sample_point_field(grid, spec);
  }
  // symmetric by construction: p(x,y) = (g(x) + g(y)) / 2
  Matrix p(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j) {
      const Real v = 0.5 * (g[i] + g[j]);
      p(i, j) = v;
      p(j, i) = v;
    }
  return p;
}

}  // namespace

ExponentField sample_exponents(const Grid& grid, const FieldSpec& p,
                               const FieldSpec& q, const FieldSpec& r) {
  ExponentField f;
  f.p_values = sample_pair_field(grid, p);
  f.q_values = sample_point_field(grid, q);
  f.r_values = sample_point_field(grid, r);
  f.p_minus = f.p_values.minCoeff();
  f.p_plus = f.p_values.maxCoeff();
  f.q_minus = std::numeric_limits<Real>::infinity();
  f.q_plus = -std::numeric_limits<Real>::infinity();
  f.r_minus = std::numeric_limits<Real>::infinity();
  f.r_plus = -std::numeric_limits<Real>::infinity();
  for (Index i : grid.omega_idx) {
    f.q_minus = std::min(f.q_minus, f.q_values[i]);
    f.q_plus = std::max(f.q_plus, f.q_values[i]);
    f.r_minus = std::min(f.r_minus, f.r_values[i]);
    f.r_plus = std::max(f.r_plus, f.r_values[i]);
  }
  return f;
}

Real critical_exponent(const ProblemConfig& config, const Grid& grid, Index node) {
  const Real n = static_cast<Real>(config.dim);
  const Real pxx = config.exponents.p_values(node, node);
  if (config.s * pxx >= n) {
    std::ostringstream msg;
    msg << "critical exponent undefined at node " << node << ": s*p(x,x) = "
        << config.s * pxx << " >= N = " << n;
    throw std::domain_error(msg.str());
  }
  return n * pxx / (n - config.s * pxx);
}

bool ValidationReport::passed(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c.passed;
  return false;
}

bool ValidationReport::structurally_valid() const {
  return passed("P") && passed("Q") && passed("R");
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << "(" << c.name << ") " << (c.passed ? "pass" : "FAIL");
    if (!c.witness.empty()) out << "  [" << c.witness << "]";
    out << "\n";
  }
  return out.str();
}

namespace {

std::string node_label(const Grid& grid, Index i) {
  std::ostringstream s;
  s << "node " << i << " at (";
  for (int a = 0; a < grid.dim; ++a) s << (a ? ", " : "") << grid.node(i, a);
  s << ")";
  return s.str();
}

}  // namespace

ValidationReport validate_conditions(const ProblemConfig& config, const Grid& grid) {
  const ExponentField& e = config.exponents;
  const Real n = static_cast<Real>(config.dim);
  const Index nn = grid.size();
  ValidationReport report;

  ConditionCheck p_check{"P", true, ""};
  for (Index i = 0; i < nn && p_check.passed; ++i) {
    for (Index j = 0; j < nn; ++j) {
      const Real pij = e.p_values(i, j);
      if (pij != e.p_values(j, i)) {
        p_check.passed = false;
        p_check.witness = "p asymmetric at pair (" + std::to_string(i) + "," +
                          std::to_string(j) + ")";
        break;
      }
      if (pij <= 1.0 || pij >= n / config.s) {
        p_check.passed = false;
        p_check.witness = "p(" + std::to_string(i) + "," + std::to_string(j) +
                          ") = " + std::to_string(pij) + " outside (1, N/s)";
        break;
      }
    }
  }
  report.checks.push_back(p_check);

  auto subcritical = [&](const Vector& field, const char* name) {
    ConditionCheck c{name, true, ""};
    for (Index i : grid.omega_idx) {
      const Real pxx = e.p_values(i, i);
      if (config.s * pxx >= n) {
        c.passed = false;
        c.witness = "s*p(x,x) >= N at " + node_label(grid, i);
        break;
      }
      const Real crit = n * pxx / (n - config.s * pxx);
      if (field[i] <= 1.0 || field[i] >= crit) {
        c.passed = false;
        std::ostringstream w;
        w << name << "(x) = " << field[i] << " outside (1, " << crit << ") at "
          << node_label(grid, i);
        c.witness = w.str();
        break;
      }
    }
    return c;
  };
  report.checks.push_back(subcritical(e.q_values, "Q"));
  report.checks.push_back(subcritical(e.r_values, "R"));

  report.q_ge_p_everywhere = true;
  for (Index i : grid.omega_idx)
    if (e.q_values[i] < e.p_values(i, i)) {
      report.q_ge_p_everywhere = false;
      break;
    }
  return report;
}

ValidationReport validate_growth(const ProblemConfig& config) {
  const ExponentField& e = config.exponents;
  const Real n = static_cast<Real>(config.dim);
  ValidationReport report;
  ConditionCheck g{"G", true, ""};

  auto fail = [&](const std::string& link) {
    g.passed = false;
    g.witness = "first failing link: " + link;
  };
  std::ostringstream w;
  if (e.p_plus >= e.r_minus) {
    w << "p+ < r-  (" << e.p_plus << " < " << e.r_minus << ")";
    fail(w.str());
  } else if (e.r_minus > e.r_plus) {
    fail("r- <= r+");
  } else if (e.r_plus >= e.q_minus) {
    w << "r+ < q-  (" << e.r_plus << " < " << e.q_minus << ")";
    fail(w.str());
  } else if (e.q_minus > e.q_plus) {
    fail("q- <= q+");
  } else if (config.s * e.p_minus >= n) {
    fail("s p- < N (critical exponent undefined)");
  } else if (e.q_plus >= n * e.p_minus / (n - config.s * e.p_minus)) {
    w << "q+ < N p- / (N - s p-)  (" << e.q_plus << " < "
      << n * e.p_minus / (n - config.s * e.p_minus) << ")";
    fail(w.str());
  }
  report.checks.push_back(g);
  return report;
}

namespace {

std::vector<Real> dyadic_radii(const Grid& grid) {
  Real side = std::numeric_limits<Real>::infinity();
  for (int a = 0; a < grid.dim; ++a) side = std::min(side, grid.omega.side(a));
  return {side / 2, side / 4, side / 8, side / 16};
}

// Local extremes over the open ball of the given center node; pq_min/pq_max
// pair x with every node of B, the discrete stand-in for the whole space.
struct BallExtremes {
  Real r_min, r_max, q_min, q_max, p_min, p_max;
};

BallExtremes ball_extremes(const ProblemConfig& config, const Grid& grid,
                           Index center, Real radius) {
  const ExponentField& e = config.exponents;
  BallExtremes b{1e300, -1e300, 1e300, -1e300, 1e300, -1e300};
  const Index n = grid.size();
  for (Index i : grid.omega_idx) {
    Real d2 = 0;
    for (int a = 0; a < grid.dim; ++a) {
      const Real d = grid.node(i, a) - grid.node(center, a);
      d2 += d * d;
    }
    if (d2 >= radius * radius) continue;
    b.r_min = std::min(b.r_min, e.r_values[i]);
    b.r_max = std::max(b.r_max, e.r_values[i]);
    b.q_min = std::min(b.q_min, e.q_values[i]);
    b.q_max = std::max(b.q_max, e.q_values[i]);
    for (Index j = 0; j < n; ++j) {
      b.p_min = std::min(b.p_min, e.p_values(i, j));
      b.p_max = std::max(b.p_max, e.p_values(i, j));
    }
  }
  return b;
}

}  // namespace

std::optional<BallWitness> find_a1_witness(const ProblemConfig& config,
                                           const Grid& grid) {
  for (Real radius : dyadic_radii(grid)) {
    for (Index c : grid.omega_idx) {
      const BallExtremes b = ball_extremes(config, grid, c, radius);
      const Real pq = std::min(b.p_min, b.q_min);
      if (b.r_max < pq) return BallWitness{c, radius, b.r_max, pq};
    }
  }
  return std::nullopt;
}

std::optional<BallWitness> find_a2_witness(const ProblemConfig& config,
                                           const Grid& grid) {
  for (Real radius : dyadic_radii(grid)) {
    for (Index c : grid.omega_idx) {
      const BallExtremes b = ball_extremes(config, grid, c, radius);
      const Real pq = std::max(b.p_max, b.q_max);
      if (b.r_min > pq) return BallWitness{c, radius, b.r_min, pq};
    }
  }
  return std::nullopt;
}

}  // namespace fpx
