#pragma once

#include <string>
#include <vector>

#include "fpx/grid.hpp"

namespace fpx {

/// Machine-readable record of one CLI run: what was computed, from which
/// resolved configuration, under which tolerances.
struct RunRecord {
  std::string config_hash;
  std::string command;
  std::vector<std::pair<std::string, Real>> scalars;
  std::vector<std::pair<std::string, std::string>> files;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::string to_json() const;
};

/// 17 significant digits, enough to round-trip a double exactly.
std::string format_real(Real v);

/// Writes through a temporary file and renames into place.
void write_text_atomic(const std::string& path, const std::string& content);

/// Nodal values in lattice order, one per line, with the config hash in a
/// leading comment.
void write_grid_function_csv(const std::string& path, const GridFunction& u,
                             const std::string& config_hash);

/// Reads a nodal function from a CSV column or a JSON array (by extension).
Vector read_grid_function(const std::string& path);

}  // namespace fpx
