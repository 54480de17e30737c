// Command-line front end: decide Benedicks-type uncertainty verdicts for
// symplectic matrices, run the decompositions, realize Wigner distributions
// on grids, and build counterexample witnesses.

#include <CLI11.hpp>

#include <iostream>

#include "metaplectic/metaplectic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Benedicks uncertainty verdicts for metaplectic time-frequency representations"};
  app.require_subcommand(1);

  metaplectic::CliConfig cfg;
  std::string catalog_name, input_path, out_path;
  double tau = std::numeric_limits<double>::quiet_NaN();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--catalog", catalog_name, "catalog matrix name (stft|ambiguity|tau_wigner|fourier|chirp|dilation)");
    sub->add_option("--input", input_path, "path to a matrix JSON file");
    sub->add_option("--tau", tau, "tau parameter for tau_wigner");
    sub->add_option("--d", cfg.d, "block dimension d (matrix lives in Sp(4d))");
    sub->add_option("--tol", cfg.tol, "decision tolerance");
    sub->add_option("--grid", cfg.grid_n, "grid points per axis (power of two)");
    sub->add_option("--eps", cfg.eps, "support threshold fraction");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", out_path, "output path for grid data");
  };

  CLI::App* decide = app.add_subcommand("decide", "emit sesquilinear and quadratic verdicts");
  add_common(decide);
  CLI::App* decompose = app.add_subcommand("decompose", "run a factorization");
  add_common(decompose);
  decompose->add_option("--mode", cfg.mode, "pre-iwasawa|free|joint-svd");
  CLI::App* catalog_cmd = app.add_subcommand("catalog", "print a catalog matrix as JSON");
  add_common(catalog_cmd);
  CLI::App* wigner_cmd = app.add_subcommand("wigner", "realize |W_A(f,g)| on a grid");
  add_common(wigner_cmd);
  wigner_cmd->add_option("--f", cfg.f_shape, "shape for f (gauss|rect|sinc|hermiteK)");
  wigner_cmd->add_option("--g", cfg.g_shape, "shape for g");
  CLI::App* witness = app.add_subcommand("witness", "build a counterexample witness");
  add_common(witness);
  witness->add_flag("--quadratic", cfg.quadratic, "use the quadratic dichotomy");
  witness->add_option("--f0", cfg.f0_shape, "compactly supported seed shape for f (default rect)");
  witness->add_option("--g0", cfg.g0_shape, "compactly supported seed shape for g (default rect)");
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the reduced property suites");
  add_common(selfcheck);

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  if (!catalog_name.empty()) cfg.catalog_name = catalog_name;
  if (!input_path.empty()) cfg.input_path = input_path;
  if (!out_path.empty()) cfg.out_path = out_path;
  if (!std::isnan(tau)) cfg.tau = tau;

  return metaplectic::run_command(cfg, std::cout, std::cerr);
}
