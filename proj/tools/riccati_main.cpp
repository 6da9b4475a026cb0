#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "riccati/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Stochastic algebraic Riccati equation solver"};
  app.require_subcommand(1);

  riccati::SolveArgs solve_args;
  double gamma_value = 0.0;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--in", solve_args.in_path, "Input instance (JSON)")
      ->required();
  solve->add_option("--out", solve_args.out_path, "Output result (JSON)")
      ->required();
  solve->add_option("--method", solve_args.method, "Solver: fp or sda")
      ->check(CLI::IsMember({"fp", "sda"}));
  solve->add_option("--tol", solve_args.tol, "Convergence tolerance");
  solve->add_option("--max-iter", solve_args.max_iter, "Iteration limit");
  solve->add_option("--cap", solve_args.cap, "Doubling size cap");
  CLI::Option* gamma_opt = solve->add_option(
      "--gamma", gamma_value, "Fixed Cayley shift (continuous instances)");
  solve->add_option("--seed", solve_args.seed, "Seed for shift selection");
  solve->add_flag("--verify", solve_args.verify,
                  "Re-check residual and stabilizing certificate");

  riccati::GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--kind", gen_args.kind, "sdare or scare")
      ->check(CLI::IsMember({"sdare", "scare"}));
  gen->add_option("--n", gen_args.n, "State dimension")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_args.m, "Input dimension")->check(CLI::PositiveNumber);
  gen->add_option("--r", gen_args.r, "Number of coefficient pairs")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed, "Generator seed");
  gen->add_option("--out", gen_args.out_path, "Output path")->required();

  bool quick = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the property suite");
  selftest->add_flag("--quick", quick, "Fast subset of the suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (solve->parsed()) {
    if (gamma_opt->count() > 0) solve_args.gamma = gamma_value;
    return riccati::cmd_solve(solve_args);
  }
  if (gen->parsed()) {
    return riccati::cmd_gen(gen_args);
  }
  return riccati::cmd_selftest(quick);
}
