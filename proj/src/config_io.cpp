#include "fpx/config_io.hpp"

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpx {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Line {
  std::string section, key, value;
  int number = 0;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  std::ostringstream out;
  out << source << ":" << line << ": " << msg;
  throw ConfigError(out.str());
}

Real parse_real(const Line& l, const std::string& source, const std::string& tok) {
  try {
    size_t pos = 0;
    const Real v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(source, l.number, "field '" + l.key + "': cannot parse number '" + tok + "'");
  }
}

std::array<Real, kMaxDim> parse_point(const Line& l, const std::string& source,
                                      int dim) {
  const auto toks = tokens(l.value);
  if (static_cast<int>(toks.size()) != dim)
    fail(source, l.number,
         "field '" + l.key + "' expects " + std::to_string(dim) + " value(s)");
  std::array<Real, kMaxDim> out{0.0, 0.0};
  for (int a = 0; a < dim; ++a) out[a] = parse_real(l, source, toks[a]);
  return out;
}

Vector load_sample_file(const std::string& path, const std::string& source,
                        int line) {
  std::ifstream in(path);
  if (!in) fail(source, line, "cannot open sample file '" + path + "'");
  std::vector<Real> vals;
  std::string tok;
  std::string row;
  while (std::getline(in, row)) {
    const std::string t = trim(row);
    if (t.empty() || t[0] == '#') continue;
    for (const auto& cell : tokens(t)) vals.push_back(std::stod(cell));
  }
  Vector v(static_cast<Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Index>(i)] = vals[i];
  return v;
}

FieldSpec parse_field(const Line& l, const std::string& source, int dim,
                      const std::filesystem::path& base_dir) {
  const auto toks = tokens(l.value);
  if (toks.empty()) fail(source, l.number, "field '" + l.key + "' is empty");
  const std::string& family = toks[0];
  FieldSpec f;
  auto want = [&](size_t n) {
    if (toks.size() != n + 1)
      fail(source, l.number,
           "family '" + family + "' for '" + l.key + "' expects " +
               std::to_string(n) + " parameter(s)");
  };
  if (family == "constant") {
    want(1);
    f = FieldSpec::constant(parse_real(l, source, toks[1]));
  } else if (family == "affine") {
    want(1 + static_cast<size_t>(dim));
    std::array<Real, kMaxDim> slope{0.0, 0.0};
    for (int a = 0; a < dim; ++a) slope[a] = parse_real(l, source, toks[2 + a]);
    f = FieldSpec::affine(parse_real(l, source, toks[1]), slope);
  } else if (family == "bump") {
    // bump BASE HEIGHT CENTER... RADIUS
    want(3 + static_cast<size_t>(dim));
    std::array<Real, kMaxDim> center{0.0, 0.0};
    for (int a = 0; a < dim; ++a) center[a] = parse_real(l, source, toks[3 + a]);
    f = FieldSpec::bump(parse_real(l, source, toks[1]),
                        parse_real(l, source, toks[2]), center,
                        parse_real(l, source, toks[3 + dim]));
  } else if (family == "samples") {
    want(1);
    f.kind = FieldSpec::Kind::Samples;
    f.samples = load_sample_file((base_dir / toks[1]).string(), source, l.number);
  } else {
    fail(source, l.number, "unknown exponent family '" + family + "'");
  }
  return f;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& label) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    std::string section;
    while (std::getline(in, raw)) {
      ++number;
      std::string s = trim(raw);
      const auto hash = s.find('#');
      if (hash != std::string::npos) s = trim(s.substr(0, hash));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          fail(label, number, "malformed section header '" + s + "'");
        section = s.substr(1, s.size() - 2);
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos)
        fail(label, number, "expected 'key = value', got '" + s + "'");
      lines.push_back(Line{section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)),
                           number});
    }
  }

  ParsedConfig cfg;
  cfg.source = label;
  const std::filesystem::path base_dir =
      std::filesystem::path(label).has_parent_path()
          ? std::filesystem::path(label).parent_path()
          : std::filesystem::path(".");

  // dimension first: point-valued fields depend on it
  cfg.geometry.dim = 1;
  bool dim_seen = false;
  for (const auto& l : lines)
    if (l.section == "domain" && l.key == "dimension") {
      cfg.geometry.dim = static_cast<int>(parse_real(l, label, l.value));
      if (cfg.geometry.dim < 1 || cfg.geometry.dim > kMaxDim)
        fail(label, l.number, "dimension must be 1 or 2");
      dim_seen = true;
    }
  const int dim = cfg.geometry.dim;
  cfg.geometry.omega.dim = dim;
  cfg.geometry.box.dim = dim;
  cfg.geometry.resolution = (dim == 1) ? 64 : 24;

  bool s_seen = false, omega_min_seen = false, omega_max_seen = false;
  bool box_min_seen = false, box_max_seen = false;
  bool p_seen = false, q_seen = false, r_seen = false;

  for (const auto& l : lines) {
    if (l.section == "domain") {
      if (l.key == "dimension") continue;
      if (l.key == "s") {
        cfg.s = parse_real(l, label, l.value);
        s_seen = true;
      } else if (l.key == "alpha") {
        cfg.alpha = parse_real(l, label, l.value);
      } else if (l.key == "beta") {
        cfg.beta = parse_real(l, label, l.value);
      } else if (l.key == "omega_min") {
        cfg.geometry.omega.lo = parse_point(l, label, dim);
        omega_min_seen = true;
      } else if (l.key == "omega_max") {
        cfg.geometry.omega.hi = parse_point(l, label, dim);
        omega_max_seen = true;
      } else if (l.key == "box_min") {
        cfg.geometry.box.lo = parse_point(l, label, dim);
        box_min_seen = true;
      } else if (l.key == "box_max") {
        cfg.geometry.box.hi = parse_point(l, label, dim);
        box_max_seen = true;
      } else if (l.key == "resolution") {
        cfg.geometry.resolution = static_cast<Index>(parse_real(l, label, l.value));
      } else {
        fail(label, l.number, "unknown [domain] key '" + l.key + "'");
      }
    } else if (l.section == "exponents") {
      if (l.key == "p") {
        cfg.p = parse_field(l, label, dim, base_dir);
        p_seen = true;
      } else if (l.key == "q") {
        cfg.q = parse_field(l, label, dim, base_dir);
        q_seen = true;
      } else if (l.key == "r") {
        cfg.r = parse_field(l, label, dim, base_dir);
        r_seen = true;
      } else {
        fail(label, l.number, "unknown [exponents] key '" + l.key + "'");
      }
    } else if (l.section == "solver") {
      SolverOptions& so = cfg.solver;
      if (l.key == "seed")
        so.seed = static_cast<std::uint64_t>(parse_real(l, label, l.value));
      else if (l.key == "starts" || l.key == "restarts")
        so.starts = static_cast<int>(parse_real(l, label, l.value));
      else if (l.key == "max_iters")
        so.max_iters = static_cast<int>(parse_real(l, label, l.value));
      else if (l.key == "grad_tol")
        so.grad_tol = parse_real(l, label, l.value);
      else if (l.key == "manifold_tol")
        so.manifold_tol = parse_real(l, label, l.value);
      else if (l.key == "luxemburg_tol")
        so.lux.tol = parse_real(l, label, l.value);
      else if (l.key == "luxemburg_max_doublings")
        so.lux.max_doublings = static_cast<int>(parse_real(l, label, l.value));
      else if (l.key == "eigen_residual_tol")
        so.eigen_residual_tol = parse_real(l, label, l.value);
      else if (l.key == "collapse_norm")
        so.collapse_norm = parse_real(l, label, l.value);
      else if (l.key == "armijo_factor")
        so.armijo_factor = parse_real(l, label, l.value);
      else if (l.key == "armijo_c")
        so.armijo_c = parse_real(l, label, l.value);
      else if (l.key == "fd_eps")
        so.fd_eps = parse_real(l, label, l.value);
      else
        fail(label, l.number, "unknown [solver] key '" + l.key + "'");
    } else if (l.section.empty()) {
      fail(label, l.number, "key '" + l.key + "' appears before any section");
    } else {
      fail(label, l.number, "unknown section [" + l.section + "]");
    }
  }

  (void)dim_seen;
  auto require = [&](bool seen, const char* field) {
    if (!seen) throw ConfigError(label + ": missing required field '" +
                                 std::string(field) + "'");
  };
  require(s_seen, "s");
  require(omega_min_seen, "omega_min");
  require(omega_max_seen, "omega_max");
  require(p_seen, "p");
  require(q_seen, "q");
  require(r_seen, "r");

  if (box_min_seen != box_max_seen)
    throw ConfigError(label + ": box_min and box_max must be given together");
  cfg.box_given = box_min_seen;
  if (!cfg.box_given) {
    // default truncation: one Omega diameter of margin on every side
    const Real margin = cfg.geometry.omega.diameter();
    for (int a = 0; a < dim; ++a) {
      cfg.geometry.box.lo[a] = cfg.geometry.omega.lo[a] - margin;
      cfg.geometry.box.hi[a] = cfg.geometry.omega.hi[a] + margin;
    }
  }
  return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void apply_env_overrides(SolverOptions& solver) {
  auto get = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
  auto real_of = [&](const char* name, Real& target) {
    if (auto v = get(name)) target = std::stod(*v);
  };
  auto int_of = [&](const char* name, int& target) {
    if (auto v = get(name)) target = std::stoi(*v);
  };
  if (auto v = get("FPX_SEED")) solver.seed = std::stoull(*v);
  int_of("FPX_STARTS", solver.starts);
  int_of("FPX_MAX_ITERS", solver.max_iters);
  real_of("FPX_GRAD_TOL", solver.grad_tol);
  real_of("FPX_MANIFOLD_TOL", solver.manifold_tol);
  real_of("FPX_LUXEMBURG_TOL", solver.lux.tol);
  int_of("FPX_LUXEMBURG_MAX_DOUBLINGS", solver.lux.max_doublings);
  real_of("FPX_EIGEN_RESIDUAL_TOL", solver.eigen_residual_tol);
  real_of("FPX_COLLAPSE_NORM", solver.collapse_norm);
  real_of("FPX_ARMIJO_FACTOR", solver.armijo_factor);
  real_of("FPX_ARMIJO_C", solver.armijo_c);
  real_of("FPX_FD_EPS", solver.fd_eps);
}

Problem resolve(const ParsedConfig& parsed) {
  return assemble_problem(parsed.geometry, parsed.s, parsed.alpha, parsed.beta,
                          parsed.p, parsed.q, parsed.r);
}

namespace {

struct Fnv1a {
  std::uint64_t state = 0xcbf29ce484222325ull;
  void feed(std::uint64_t bits) {
    for (int b = 0; b < 8; ++b) {
      state ^= (bits >> (8 * b)) & 0xffull;
      state *= 0x100000001b3ull;
    }
  }
  void feed_real(Real v) { feed(std::bit_cast<std::uint64_t>(v)); }
};

}  // namespace

std::uint64_t config_hash(const Problem& problem) {
  Fnv1a h;
  const ProblemConfig& c = problem.config;
  h.feed(static_cast<std::uint64_t>(c.dim));
  h.feed_real(c.s);
  h.feed_real(c.alpha);
  h.feed_real(c.beta);
  for (int a = 0; a < c.dim; ++a) {
    h.feed_real(c.omega.lo[a]);
    h.feed_real(c.omega.hi[a]);
    h.feed_real(c.box.lo[a]);
    h.feed_real(c.box.hi[a]);
  }
  h.feed(static_cast<std::uint64_t>(c.resolution));
  const auto& e = c.exponents;
  for (Index i = 0; i < e.p_values.rows(); ++i)
    for (Index j = 0; j < e.p_values.cols(); ++j) h.feed_real(e.p_values(i, j));
  for (Index i = 0; i < e.q_values.size(); ++i) h.feed_real(e.q_values[i]);
  for (Index i = 0; i < e.r_values.size(); ++i) h.feed_real(e.r_values[i]);
  return h.state;
}

std::string config_hash_hex(const Problem& problem) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash(problem)));
  return std::string(buf);
}

}  // namespace fpx
