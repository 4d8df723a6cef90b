#include <CLI11.hpp>

#include <iostream>

#include "fpx/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fpx: fractional p(x)-Laplacian eigenvalue laboratory"};
  app.require_subcommand(1);

  fpx::cli::CommonArgs common;
  std::uint64_t seed_arg = 0;
  int restarts_arg = 0;
  bool non_deterministic = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", common.config_path, "problem configuration file")
        ->required();
    cmd->add_option("--seed", seed_arg, "override the solver seed");
    cmd->add_option("--restarts", restarts_arg, "override the number of starts");
    cmd->add_option("--out", common.out_dir, "output directory");
    cmd->add_flag("--non-deterministic", non_deterministic,
                  "record wall time instead of keeping outputs byte-identical");
  };

  auto* validate = app.add_subcommand("validate", "check structural conditions");
  add_common(validate);

  auto* norms = app.add_subcommand("norms", "modulars and norms of a nodal function");
  add_common(norms);
  std::string function_file;
  norms->add_option("--function", function_file, "nodal values (CSV column or JSON array)")
      ->required();

  auto* scan = app.add_subcommand("scan", "c1/mu1 scan over energy levels");
  add_common(scan);
  std::vector<double> t_list;
  scan->add_option("--t", t_list, "energy levels (sorted)")->delimiter(',');

  auto* eigen = app.add_subcommand("eigen", "minimize Phi_lambda at a spectral parameter");
  add_common(eigen);
  double lambda = 0;
  eigen->add_option("--lambda", lambda, "spectral parameter (> 0)")->required();

  auto* gamma = app.add_subcommand("gamma", "Rayleigh-quotient infima estimates");
  add_common(gamma);
  bool probe = false;
  gamma->add_flag("--probe", probe, "also run the positivity consistency probe");

  auto* selftest = app.add_subcommand("selftest", "run the built-in verification suites");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fpx::cli::kExitUsage;
  }

  for (auto* cmd : {validate, norms, scan, eigen, gamma, selftest}) {
    if (cmd->parsed()) {
      if (cmd->count("--seed")) common.seed = seed_arg;
      if (cmd->count("--restarts")) common.restarts = restarts_arg;
      common.deterministic = !non_deterministic;
    }
  }

  try {
    if (validate->parsed()) return fpx::cli::cmd_validate(common);
    if (norms->parsed()) return fpx::cli::cmd_norms(common, function_file);
    if (scan->parsed()) return fpx::cli::cmd_scan(common, t_list);
    if (eigen->parsed()) return fpx::cli::cmd_eigen(common, lambda);
    if (gamma->parsed()) return fpx::cli::cmd_gamma(common, probe);
    if (selftest->parsed()) return fpx::cli::cmd_selftest(common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return fpx::cli::kExitUsage;
}
