#pragma once

#include <string>

#include "fpx/problem.hpp"
#include "fpx/variational.hpp"

namespace fpx {

/// Parse or resolution failure carrying the offending location.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed but not yet resolved configuration: geometry, the three exponent
/// family specs, and solver options. The file format is a flat sectioned
/// text file with [domain], [exponents] and [solver] blocks.
struct ParsedConfig {
  GridGeometry geometry;
  Real s = 0.25;
  Real alpha = 0.0;
  Real beta = 0.0;
  bool box_given = false;
  FieldSpec p, q, r;
  SolverOptions solver;
  std::string source;  // path or label, for diagnostics
};

ParsedConfig parse_config_file(const std::string& path);
ParsedConfig parse_config_text(const std::string& text, const std::string& label);

/// Applies FPX_* environment variables on top of the [solver] section.
void apply_env_overrides(SolverOptions& solver);

/// Samples the exponent families on the lattice and assembles the problem.
Problem resolve(const ParsedConfig& parsed);

/// FNV-1a digest of the resolved geometry, coefficients and exponent samples.
/// Identical resolved configurations hash identically; solver options and
/// seeds are excluded (they are run metadata, not problem identity).
std::uint64_t config_hash(const Problem& problem);
std::string config_hash_hex(const Problem& problem);

}  // namespace fpx
