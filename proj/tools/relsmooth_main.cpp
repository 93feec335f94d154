#include <CLI11.hpp>
#include <iostream>

#include "relsmooth/commands.hpp"
#include "relsmooth/errors.hpp"
#include "relsmooth/solvers.hpp"

using namespace relsmooth;

int main(int argc, char** argv) {
  CLI::App app{"relsmooth: relatively-smooth first-order optimization toolkit"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  CLI::App* solve = app.add_subcommand("solve", "run a solver on a problem spec");
  solve->add_option("--spec", solve_opts.spec_path, "problem spec (JSON)")
      ->required();
  solve->add_option("--algo", solve_opts.algo, "pgs | das | cpgs | fw");
  solve->add_option("--iters", solve_opts.iters, "iteration budget");
  solve->add_option("--out", solve_opts.trace_path, "trace CSV path");
  solve->add_flag("--timings", solve_opts.timings,
                  "fill the wall_ns column (breaks byte-reproducibility)");

  CertifyOptions certify_opts;
  CLI::App* certify =
      app.add_subcommand("certify", "sampled smoothness certificates");
  certify->add_option("--spec", certify_opts.spec_path, "problem spec (JSON)")
      ->required();
  certify->add_option("--samples", certify_opts.samples, "sample count");
  certify->add_option("--seed", certify_opts.seed, "sampler seed");
  certify->add_option("--out", certify_opts.out_path, "report JSON path");

  BenchOptions bench_opts;
  CLI::App* bench = app.add_subcommand(
      "bench-dopt", "design-objective solver comparison with bound checks");
  bench->add_option("--m", bench_opts.m, "design rows");
  bench->add_option("--n", bench_opts.n, "design columns (n >= m + 1)");
  bench->add_option("--eps", bench_opts.eps, "target optimality gap");
  bench->add_option("--seed", bench_opts.seed, "instance seed");
  bench->add_option("--out", bench_opts.out_dir, "output directory");
  bench->add_flag("--timings", bench_opts.timings,
                  "fill the wall_ns column (breaks byte-reproducibility)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opts);
    if (certify->parsed()) return cmd_certify(certify_opts);
    if (bench->parsed()) return cmd_bench_dopt(bench_opts);
  } catch (const SpecParseError& e) {
    std::cerr << "spec parse error at line " << e.line << ", column " << e.col
              << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const ConfigError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitInputError;
}
