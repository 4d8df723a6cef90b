#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpx/types.hpp"

namespace fpx::cli {

/// Flags shared by every subcommand. Optional fields override the [solver]
/// section; environment overrides (FPX_*) are applied in between.
struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::string out_dir = ".";
  bool deterministic = true;
};

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedCheck = 1;   // validation / all levels failed
inline constexpr int kExitOptimizer = 2;     // optimizer failure on all starts
inline constexpr int kExitUsage = 64;        // bad flags or malformed config

int cmd_validate(const CommonArgs& args);
int cmd_norms(const CommonArgs& args, const std::string& function_file);
int cmd_scan(const CommonArgs& args, const std::vector<Real>& t_list);
int cmd_eigen(const CommonArgs& args, Real lambda);
int cmd_gamma(const CommonArgs& args, bool probe);
int cmd_selftest(const CommonArgs& args);

}  // namespace fpx::cli
