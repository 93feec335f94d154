#pragma once

#include <cstdint>
#include <string>

#include "relsmooth/oracles.hpp"
#include "relsmooth/trace.hpp"

namespace relsmooth {

/// Canonical starting point per domain: e/n on the simplex, u/2 on the box,
/// the all-ones vector elsewhere.
Vector default_start(const RelSmoothPair& pair);

// Process exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSolverFailure = 3;
inline constexpr int kExitCertificateFailure = 4;

struct SolveOptions {
  std::string spec_path;
  std::string algo = "pgs";  // pgs | das | cpgs | fw
  int iters = 1000;
  std::string trace_path = "trace.csv";
  bool timings = false;  // fill wall_ns (breaks byte-reproducibility)
};

/// Parses the spec, runs the solver, writes the trace CSV and prints a
/// one-line summary.  On solver abort the partial trace is still flushed.
int cmd_solve(const SolveOptions& opts);

struct CertifyOptions {
  std::string spec_path;
  int samples = 1000;
  std::uint64_t seed = 0;
  std::string out_path;  // empty: report to stdout only
};

/// Runs the gradient-monotonicity certificate (plus Hessian dominance when
/// both oracles expose Hessians) at the spec's L and mu.
int cmd_certify(const CertifyOptions& opts);

struct BenchOptions {
  int m = 3;
  int n = 10;
  double eps = 0.01;
  std::uint64_t seed = 0;
  std::string out_dir = "bench-out";
  bool timings = false;
};

/// Everything cmd_bench_dopt measures, exposed for in-process use.
struct BenchResult {
  double f_star = 0.0;          // oracle estimate from the long baseline run
  double gap0 = 0.0;            // f(x0) - f_star at the uniform start
  double gap0_bound = 0.0;      // m ln(n/m)
  bool gap0_within_bound = false;
  int guaranteed_k = 0;            // 0 when eps > gap0 (already satisfied)
  bool bound_applicable = false;
  double pgs_gap_at_guaranteed_k = 0.0;
  bool pgs_within_eps_at_guaranteed_k = false;
  bool das_within_eps_at_guaranteed_k = false;
  std::int64_t iters_to_eps_pgs = -1;  // -1: never reached
  std::int64_t iters_to_eps_das = -1;
  std::int64_t iters_to_eps_fw = -1;
  IterateTrace pgs_trace;
  IterateTrace das_trace;
  IterateTrace fw_trace;
};

/// Generates a standard-normal m x n design, estimates f* with a long
/// vertex-direction run stopped at stationarity <= min(eps/100, 1e-6), then
/// runs all three solvers from x0 = e/n and checks the iteration-bound
/// guarantees.  Throws NoConvergence if the oracle run stalls.
BenchResult bench_dopt_run(const BenchOptions& opts);

/// bench_dopt_run plus trace/summary files under out_dir; exits 4 when a
/// guarantee check fails, 3 when the oracle run stalls.
int cmd_bench_dopt(const BenchOptions& opts);

}  // namespace relsmooth
