#include "relsmooth/solvers.hpp"

#include <chrono>
#include <cmath>

#include "relsmooth/prng.hpp"

namespace relsmooth {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
      .count();
}

bool should_record(std::int64_t k, int record_every, int max_iters) {
  if (k == 0 || k == max_iters) return true;
  if (record_every > 0) return k % record_every == 0;
  return k <= 1000 || k % 10 == 0;
}

IterateTrace make_trace(const char* algorithm, double L, double mu,
                        const SolverConfig& cfg, const Vector& x0) {
  IterateTrace trace;
  trace.algorithm = algorithm;
  trace.L = L;
  trace.mu = mu;
  trace.seed = cfg.seed;
  trace.prng = Prng::name();
  trace.x0 = x0;
  return trace;
}

void push_row(IterateTrace& trace, std::int64_t k, const Vector& x, double f,
              double best_f, double residual, double f_star,
              Clock::time_point start) {
  TraceRow row;
  row.k = k;
  row.x = x;
  row.f = f;
  row.best_f = best_f;
  if (!std::isnan(f_star))
    row.gap = (trace.algorithm == "das" ? best_f : f) - f_star;
  row.root_residual = residual;
  row.wall_ns = elapsed_ns(start);
  trace.rows.push_back(std::move(row));
}

// Both primal-gradient variants must produce bit-identical model
// coefficients, so the expression lives in one place.
inline Vector model_coefficients(const Vector& grad_f, const Vector& grad_h,
                                 double inv_L) {
  return inv_L * grad_f - grad_h;
}

void check_start_point(const RelSmoothPair& pair, const Vector& x0,
                       const char* who) {
  if (!pair.domain().contains(x0))
    throw DomainViolation(std::string(who) + ": x0 is not in the domain");
  if (!pair.reference->differentiable_at(x0))
    throw DomainViolation(std::string(who) +
                          ": reference is not differentiable at x0");
}

}  // namespace

double DualAveragingWeights::weight(int k) const {
  if (mu == 0.0) return 1.0 / L;
  return (1.0 / (L - mu)) * std::pow(L / (L - mu), k);
}

double DualAveragingWeights::weight_sum(int k) const {
  if (mu == 0.0) return static_cast<double>(k) / L;
  return (std::pow(1.0 + mu / (L - mu), k) - 1.0) / mu;
}

IterateTrace primal_gradient(const RelSmoothPair& pair, const Vector& x0,
                             const SolverConfig& cfg) {
  check_start_point(pair, x0, "primal_gradient");
  const Objective& f = *pair.objective;
  const Reference& h = *pair.reference;
  const double inv_L = 1.0 / pair.L;

  IterateTrace trace = make_trace("pgs", pair.L, pair.mu, cfg, x0);
  const auto start = Clock::now();
  Vector x = x0;
  double fx = f.value(x);
  double best = fx;
  push_row(trace, 0, x, fx, best,
           std::numeric_limits<double>::quiet_NaN(), cfg.f_star, start);

  for (int i = 0; i < cfg.max_iters; ++i) {
    const Vector c = model_coefficients(f.gradient(x), h.gradient(x), inv_L);
    SubproblemSolve sol;
    try {
      sol = h.solve_subproblem(c);
    } catch (const Error& e) {
      trace.completed = false;
      trace.abort_reason = e.what();
      throw SolverFailure(std::string("primal_gradient: subproblem failed at "
                                      "iteration ") +
                              std::to_string(i + 1) + ": " + e.what(),
                          trace);
    }
    x = std::move(sol.x);
    fx = f.value(x);
    best = std::min(best, fx);
    const std::int64_t k = i + 1;
    const bool hit_target = !std::isnan(cfg.target_gap) &&
                            !std::isnan(cfg.f_star) &&
                            fx - cfg.f_star <= cfg.target_gap;
    if (should_record(k, cfg.record_every, cfg.max_iters) || hit_target)
      push_row(trace, k, x, fx, best, sol.residual, cfg.f_star, start);
    if (hit_target) break;
  }
  return trace;
}

IterateTrace composite_primal_gradient(const RelSmoothPair& pair,
                                       const CompositePiece& piece,
                                       const Vector& x0,
                                       const SolverConfig& cfg) {
  check_start_point(pair, x0, "composite_primal_gradient");
  if (!piece.value || !piece.subproblem)
    throw ConfigError("composite_primal_gradient: piece callbacks missing");
  const Objective& f = *pair.objective;
  const Reference& h = *pair.reference;
  const double inv_L = 1.0 / pair.L;

  IterateTrace trace = make_trace("cpgs", pair.L, pair.mu, cfg, x0);
  const auto start = Clock::now();
  Vector x = x0;
  double fx = f.value(x) + piece.value(x);
  double best = fx;
  push_row(trace, 0, x, fx, best,
           std::numeric_limits<double>::quiet_NaN(), cfg.f_star, start);

  for (int i = 0; i < cfg.max_iters; ++i) {
    const Vector c = model_coefficients(f.gradient(x), h.gradient(x), inv_L);
    SubproblemSolve sol;
    try {
      sol = piece.subproblem(c, inv_L);
    } catch (const Error& e) {
      trace.completed = false;
      trace.abort_reason = e.what();
      throw SolverFailure(
          std::string("composite_primal_gradient: subproblem failed at "
                      "iteration ") +
              std::to_string(i + 1) + ": " + e.what(),
          trace);
    }
    x = std::move(sol.x);
    fx = f.value(x) + piece.value(x);
    best = std::min(best, fx);
    const std::int64_t k = i + 1;
    const bool hit_target = !std::isnan(cfg.target_gap) &&
                            !std::isnan(cfg.f_star) &&
                            fx - cfg.f_star <= cfg.target_gap;
    if (should_record(k, cfg.record_every, cfg.max_iters) || hit_target)
      push_row(trace, k, x, fx, best, sol.residual, cfg.f_star, start);
    if (hit_target) break;
  }
  return trace;
}

IterateTrace dual_averaging(const RelSmoothPair& pair, const SolverConfig& cfg) {
  if (!(pair.L > pair.mu))
    throw ConfigError("dual_averaging: requires L > mu strictly");
  const Objective& f = *pair.objective;
  const double L = pair.L;
  const double mu = pair.mu;

  const Vector x0 = pair.reference->center();
  const ReferencePtr h = normalize_at(pair.reference, x0);  // h(x0) = 0

  IterateTrace trace = make_trace("das", L, mu, cfg, x0);
  const auto start = Clock::now();
  Vector x = x0;
  double fx = f.value(x);
  double best = fx;
  push_row(trace, 0, x, fx, best,
           std::numeric_limits<double>::quiet_NaN(), cfg.f_star, start);

  // Accumulators scaled by the newest weight a_{k+1} so nothing overflows:
  //   wt = (sum_i a_{i+1} v_i) / a_{k+1},  at = A_{k+1} / a_{k+1}.
  const double q = (L - mu) / L;  // a_k / a_{k+1}
  Vector wt = Vector::Zero(x.size());
  double at = 0.0;

  for (int k = 0; k < cfg.max_iters; ++k) {
    Vector v = f.gradient(x);
    if (mu != 0.0) v -= mu * h->gradient(x);
    wt = q * wt + v;
    at = q * at + 1.0;
    const double inv_a = (L - mu) * std::pow(q, k);  // 1 / a_{k+1}
    const double h_coeff = inv_a + mu * at;          // (1 + mu A_{k+1}) / a_{k+1}
    const Vector c = wt / h_coeff;

    SubproblemSolve sol;
    try {
      sol = h->solve_subproblem(c);
    } catch (const Error& e) {
      trace.completed = false;
      trace.abort_reason = e.what();
      throw SolverFailure(std::string("dual_averaging: subproblem failed at "
                                      "iteration ") +
                              std::to_string(k + 1) + ": " + e.what(),
                          trace);
    }
    x = std::move(sol.x);
    fx = f.value(x);
    best = std::min(best, fx);
    const std::int64_t idx = k + 1;
    const bool hit_target = !std::isnan(cfg.target_gap) &&
                            !std::isnan(cfg.f_star) &&
                            best - cfg.f_star <= cfg.target_gap;
    if (should_record(idx, cfg.record_every, cfg.max_iters) || hit_target)
      push_row(trace, idx, x, fx, best, sol.residual, cfg.f_star, start);
    if (hit_target) break;
  }
  return trace;
}

IterateTrace frank_wolfe_dopt(const DOptimalDesign& objective, const Vector& x0,
                              const SolverConfig& cfg,
                              double stationarity_target) {
  const Matrix& h = objective.design_matrix();
  const int m = static_cast<int>(h.rows());
  if (!objective.domain().contains(x0) || !(x0.array() > 0.0).all())
    throw DomainViolation("frank_wolfe_dopt: x0 must be interior");

  IterateTrace trace = make_trace("fw", 1.0, 0.0, cfg, x0);
  const auto start = Clock::now();

  Vector x = x0;
  Matrix m_inv;
  Vector kappa;
  double fx = 0.0;
  auto refactor = [&]() {
    // kappa_j = h_j^T M^{-1} h_j from a fresh factorization of M = H X H^T.
    const Matrix gram = h * x.asDiagonal() * h.transpose();
    Eigen::LLT<Matrix> llt(gram);
    if (llt.info() != Eigen::Success)
      throw SingularMatrix("frank_wolfe_dopt: Gram matrix not positive definite",
                           -1);
    m_inv = llt.solve(Matrix::Identity(m, m));
    const Matrix v = llt.matrixL().solve(h);
    kappa = v.colwise().squaredNorm().transpose();
    double logdet = 0.0;
    for (int i = 0; i < m; ++i) logdet += std::log(llt.matrixL()(i, i));
    fx = -2.0 * logdet;
  };
  try {
    refactor();
  } catch (const SingularMatrix& e) {
    trace.completed = false;
    trace.abort_reason = e.what();
    throw SolverFailure(std::string("frank_wolfe_dopt: ") + e.what(), trace);
  }

  double best = fx;
  push_row(trace, 0, x, fx, best,
           std::numeric_limits<double>::quiet_NaN(), cfg.f_star, start);

  for (int i = 0; i < cfg.max_iters; ++i) {
    int j_star = 0;
    const double kappa_max = kappa.maxCoeff(&j_star);
    trace.fw_stationarity = kappa_max - m;
    if (!std::isnan(stationarity_target) &&
        kappa_max - m <= stationarity_target) {
      if (trace.rows.back().k != i)
        push_row(trace, i, x, fx, best, std::numeric_limits<double>::quiet_NaN(),
                 cfg.f_star, start);
      break;
    }

    double lambda;
    if (kappa_max <= m)
      lambda = 0.0;  // stationary
    else if (m == 1)
      lambda = 1.0;  // the line search sends all mass to the vertex
    else
      lambda = std::clamp((kappa_max - m) / (m * (kappa_max - 1.0)), 0.0, 1.0);

    x *= (1.0 - lambda);
    x[j_star] += lambda;

    const bool full_jump = lambda >= 1.0 - 1e-12;
    if (full_jump || (i + 1) % 50 == 0) {
      try {
        refactor();
      } catch (const SingularMatrix& e) {
        trace.completed = false;
        trace.abort_reason = e.what();
        throw SolverFailure(std::string("frank_wolfe_dopt: persistent "
                                        "singularity: ") +
                                e.what(),
                            trace);
      }
    } else if (lambda > 0.0) {
      // Sherman-Morrison on M(lambda) = (1-lambda) M + lambda h_j h_j^T.
      const double t = lambda / (1.0 - lambda);
      const Vector u = m_inv * h.col(j_star);
      const double beta = lambda / ((1.0 - lambda) + lambda * kappa_max);
      m_inv = (m_inv - beta * u * u.transpose()) / (1.0 - lambda);
      const Vector w = h.transpose() * u;
      kappa = (kappa - beta * w.cwiseProduct(w)) / (1.0 - lambda);
      fx += -m * std::log1p(-lambda) - std::log1p(t * kappa_max);
    }
    best = std::min(best, fx);
    const std::int64_t k = i + 1;
    const bool hit_target = !std::isnan(cfg.target_gap) &&
                            !std::isnan(cfg.f_star) &&
                            fx - cfg.f_star <= cfg.target_gap;
    if (should_record(k, cfg.record_every, cfg.max_iters) || hit_target)
      push_row(trace, k, x, fx, best, std::numeric_limits<double>::quiet_NaN(),
               cfg.f_star, start);
    if (hit_target) break;
  }
  return trace;
}

}  // namespace relsmooth
