#include "relsmooth/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "relsmooth/certify.hpp"
#include "relsmooth/references.hpp"
#include "relsmooth/solvers.hpp"
#include "relsmooth/spec_io.hpp"

namespace relsmooth {

namespace {

using nlohmann::json;

double wall_ms(const IterateTrace& trace) {
  return trace.rows.empty() ? 0.0 : trace.rows.back().wall_ns / 1e6;
}

json report_to_json(const CertificateReport& report) {
  return json{{"condition", report.condition}, {"samples", report.samples},
              {"worst_violation", report.worst_violation},
              {"tolerance", report.tolerance},  {"pass", report.pass},
              {"seed", report.seed},            {"note", report.note}};
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::int64_t first_k_with_gap_below(const IterateTrace& trace, double eps) {
  for (const TraceRow& row : trace.rows)
    if (!std::isnan(row.gap) && row.gap <= eps) return row.k;
  return -1;
}

}  // namespace

Vector default_start(const RelSmoothPair& pair) {
  const Domain& domain = pair.domain();
  switch (domain.kind()) {
    case Domain::Kind::UnitSimplex:
      return Vector::Constant(domain.dim(), 1.0 / domain.dim());
    case Domain::Kind::Box:
      return Vector::Constant(domain.dim(), 0.5 * domain.box_upper());
    case Domain::Kind::AllSpace:
    case Domain::Kind::PositiveOrthant:
      return Vector::Constant(domain.dim(), 1.0);
  }
  throw Error("default_start: unreachable");
}

int cmd_solve(const SolveOptions& opts) {
  BuiltProblem problem = [&] {
    ProblemSpec spec = parse_problem_spec_file(opts.spec_path);
    return build_problem(spec);
  }();

  SolverConfig cfg;
  cfg.max_iters = opts.iters;

  IterateTrace trace;
  try {
    if (opts.algo == "pgs") {
      trace = primal_gradient(problem.pair, default_start(problem.pair), cfg);
    } else if (opts.algo == "das") {
      trace = dual_averaging(problem.pair, cfg);
    } else if (opts.algo == "cpgs") {
      // The CLI exposes the composite path with the zero piece; nonzero P
      // is a library-level feature (callbacks cannot come from a file).
      CompositePiece zero;
      zero.value = [](const Vector&) { return 0.0; };
      const ReferencePtr h = problem.pair.reference;
      zero.subproblem = [h](const Vector& c, double) {
        return h->solve_subproblem(c);
      };
      trace = composite_primal_gradient(problem.pair, zero,
                                        default_start(problem.pair), cfg);
    } else if (opts.algo == "fw") {
      if (!problem.dopt)
        throw ConfigError("solve: algo 'fw' requires kind 'dopt'");
      trace = frank_wolfe_dopt(*problem.dopt, default_start(problem.pair), cfg);
    } else {
      throw ConfigError("solve: unknown algo '" + opts.algo + "'");
    }
  } catch (const SolverFailure& fail) {
    write_trace_csv(fail.partial, opts.trace_path, opts.timings);
    std::cerr << "solver aborted: " << fail.what() << "\n"
              << "partial trace flushed to " << opts.trace_path << "\n";
    return kExitSolverFailure;
  }

  write_trace_csv(trace, opts.trace_path, opts.timings);
  std::printf("algo=%s final_f=%.12g iterations=%lld wall_ms=%.3f trace=%s\n",
              opts.algo.c_str(), trace.final_f(),
              static_cast<long long>(trace.rows.back().k), wall_ms(trace),
              opts.trace_path.c_str());
  return kExitOk;
}

int cmd_certify(const CertifyOptions& opts) {
  ProblemSpec spec = parse_problem_spec_file(opts.spec_path);
  BuiltProblem problem = build_problem(spec);
  const RelSmoothPair& pair = problem.pair;

  std::vector<CertificateReport> reports;
  InteriorSampler pair_sampler(pair.domain(), opts.seed);
  reports.push_back(check_gradient_monotonicity(*pair.objective, *pair.reference,
                                                pair.L, pair.mu, pair_sampler,
                                                opts.samples));
  if (pair.objective->has_hessian() && pair.reference->has_hessian()) {
    InteriorSampler point_sampler(pair.domain(), opts.seed + 1);
    reports.push_back(check_hessian_dominance(
        *pair.objective, *pair.reference, pair.L, pair.mu, point_sampler,
        std::min(opts.samples, 200)));
  }

  bool all_pass = true;
  json out = json::array();
  for (const CertificateReport& report : reports) {
    all_pass = all_pass && report.pass;
    out.push_back(report_to_json(report));
    std::printf("%-22s samples=%-6d worst_violation=%.6g tol=%.3g %s\n",
                report.condition.c_str(), report.samples, report.worst_violation,
                report.tolerance, report.pass ? "PASS" : "FAIL");
  }
  if (!opts.out_path.empty())
    write_text_atomic(opts.out_path,
                      json{{"L", pair.L}, {"mu", pair.mu}, {"pass", all_pass},
                           {"certificates", out}}
                          .dump(2) +
                          "\n");
  return all_pass ? kExitOk : kExitCertificateFailure;
}

BenchResult bench_dopt_run(const BenchOptions& opts) {
  if (opts.n < opts.m + 1 || !(opts.eps > 0.0))
    throw ConfigError("bench-dopt: need n >= m + 1 and eps > 0");
  Prng rng(opts.seed);
  const Matrix h = random_normal_matrix(opts.m, opts.n, rng);
  auto objective = std::make_shared<DOptimalDesign>(h);
  auto reference = std::make_shared<SimplexLogBarrier>(opts.n);
  const RelSmoothPair pair(objective, reference, 1.0, 0.0);
  const Vector x0 = Vector::Constant(opts.n, 1.0 / opts.n);

  // Oracle: long vertex-direction run; its stationarity measure
  // max_j kappa_j - m upper-bounds the optimality gap.
  const double oracle_target = opts.eps / 100.0;
  SolverConfig oracle_cfg;
  oracle_cfg.max_iters = 2'000'000;
  oracle_cfg.record_every = 1'000'000;
  oracle_cfg.seed = opts.seed;
  IterateTrace oracle = frank_wolfe_dopt(*objective, x0, oracle_cfg, oracle_target);
  if (!(oracle.fw_stationarity <= oracle_target))
    throw NoConvergence("bench-dopt: oracle run did not reach stationarity " +
                            std::to_string(oracle_target),
                        oracle.fw_stationarity);

  // Mix the oracle point a hair toward the interior so the barrier stays
  // finite at it; the convergence bounds hold at any feasible point.
  const Vector x_star = (1.0 - 1e-10) * oracle.rows.back().x + 1e-10 * x0;

  BenchResult result;
  result.f_star = objective->value(x_star);
  result.gap0 = objective->value(x0) - result.f_star;
  result.gap0_bound = opts.m * std::log(static_cast<double>(opts.n) / opts.m);
  result.gap0_within_bound = result.gap0 <= result.gap0_bound + 1e-9;
  result.bound_applicable = opts.eps <= result.gap0;
  result.guaranteed_k = result.bound_applicable
                         ? dopt_iteration_bound(opts.n, result.gap0, opts.eps)
                         : 0;

  const int run_iters = result.bound_applicable ? result.guaranteed_k : 1000;
  SolverConfig cfg;
  cfg.max_iters = run_iters;
  cfg.record_every = 1;
  cfg.seed = opts.seed;
  cfg.f_star = result.f_star;

  result.pgs_trace = primal_gradient(pair, x0, cfg);
  result.das_trace = dual_averaging(pair, cfg);
  SolverConfig fw_cfg = cfg;
  fw_cfg.max_iters = std::max(10 * run_iters, 10'000);
  fw_cfg.target_gap = opts.eps;
  result.fw_trace = frank_wolfe_dopt(*objective, x0, fw_cfg);

  annotate_trace_bounds(result.pgs_trace, pair, x_star);
  annotate_trace_bounds(result.das_trace, pair, x_star);
  annotate_trace_bounds(result.fw_trace, pair, x_star);

  result.iters_to_eps_pgs = first_k_with_gap_below(result.pgs_trace, opts.eps);
  result.iters_to_eps_das = first_k_with_gap_below(result.das_trace, opts.eps);
  result.iters_to_eps_fw = first_k_with_gap_below(result.fw_trace, opts.eps);

  if (result.bound_applicable) {
    result.pgs_gap_at_guaranteed_k = result.pgs_trace.final_f() - result.f_star;
    result.pgs_within_eps_at_guaranteed_k = result.pgs_gap_at_guaranteed_k <= opts.eps;
    result.das_within_eps_at_guaranteed_k =
        result.das_trace.best_f() - result.f_star <= opts.eps;
  } else {
    result.pgs_gap_at_guaranteed_k = result.gap0;
    result.pgs_within_eps_at_guaranteed_k = true;  // satisfied at k = 0
    result.das_within_eps_at_guaranteed_k = true;
  }
  return result;
}

int cmd_bench_dopt(const BenchOptions& opts) {
  BenchResult result;
  try {
    result = bench_dopt_run(opts);
  } catch (const NoConvergence& err) {
    std::cerr << "bench-dopt: " << err.what() << "\n";
    return kExitSolverFailure;
  }

  std::filesystem::create_directories(opts.out_dir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
  };
  write_trace_csv(result.pgs_trace, path("pgs.csv"), opts.timings);
  write_trace_csv(result.das_trace, path("das.csv"), opts.timings);
  write_trace_csv(result.fw_trace, path("fw.csv"), opts.timings);

  json summary{
      {"m", opts.m},
      {"n", opts.n},
      {"eps", opts.eps},
      {"seed", opts.seed},
      {"prng", Prng::name()},
      {"f_star", result.f_star},
      {"gap0", result.gap0},
      {"gap0_bound", result.gap0_bound},
      {"gap0_within_bound", result.gap0_within_bound},
      {"guaranteed_k", result.guaranteed_k},
      {"bound_applicable", result.bound_applicable},
      {"pgs", {{"iters_to_eps", result.iters_to_eps_pgs},
               {"gap_at_guaranteed_k", result.pgs_gap_at_guaranteed_k},
               {"within_eps_at_guaranteed_k", result.pgs_within_eps_at_guaranteed_k},
               {"wall_ms", wall_ms(result.pgs_trace)}}},
      {"das", {{"iters_to_eps", result.iters_to_eps_das},
               {"within_eps_at_guaranteed_k", result.das_within_eps_at_guaranteed_k},
               {"wall_ms", wall_ms(result.das_trace)}}},
      {"fw", {{"iters_to_eps", result.iters_to_eps_fw},
              {"wall_ms", wall_ms(result.fw_trace)}}},
  };
  write_text_atomic(path("summary.json"), summary.dump(2) + "\n");

  const bool ok = result.gap0_within_bound && result.pgs_within_eps_at_guaranteed_k &&
                  result.das_within_eps_at_guaranteed_k;
  std::printf(
      "bench-dopt m=%d n=%d eps=%g seed=%llu: gap0=%.6g (bound %.6g) "
      "guaranteed_k=%d pgs_to_eps=%lld das_to_eps=%lld fw_to_eps=%lld %s\n",
      opts.m, opts.n, opts.eps, static_cast<unsigned long long>(opts.seed),
      result.gap0, result.gap0_bound, result.guaranteed_k,
      static_cast<long long>(result.iters_to_eps_pgs),
      static_cast<long long>(result.iters_to_eps_das),
      static_cast<long long>(result.iters_to_eps_fw), ok ? "OK" : "CHECK-FAILED");
  return ok ? kExitOk : kExitCertificateFailure;
}

}  // namespace relsmooth
