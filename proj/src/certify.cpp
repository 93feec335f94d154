#include "relsmooth/certify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace relsmooth {

namespace {

double min_eigenvalue(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Matrix hessian_or_fd(const Objective& f, const Vector& x) {
  if (f.has_hessian()) return f.hessian(x);
  return fd_hessian([&f](const Vector& p) { return f.gradient(p); }, x);
}

Matrix hessian_or_fd(const Reference& h, const Vector& x) {
  if (h.has_hessian()) return h.hessian(x);
  return fd_hessian([&h](const Vector& p) { return h.gradient(p); }, x);
}

}  // namespace

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x) {
  const double step = 1e-5 * (1.0 + x.norm());
  Vector g(x.size());
  Vector p = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    p(i) = x(i) + step;
    const double hi = f(p);
    p(i) = x(i) - step;
    const double lo = f(p);
    p(i) = x(i);
    g(i) = (hi - lo) / (2.0 * step);
  }
  return g;
}

Matrix fd_hessian(const std::function<Vector(const Vector&)>& grad,
                  const Vector& x) {
  const Eigen::Index n = x.size();
  Matrix h(n, n);
  Vector p = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double step = 1e-4 * (1.0 + std::fabs(x(i)));
    p(i) = x(i) + step;
    const Vector hi = grad(p);
    p(i) = x(i) - step;
    const Vector lo = grad(p);
    p(i) = x(i);
    h.col(i) = (hi - lo) / (2.0 * step);
  }
  Matrix sym = 0.5 * (h + h.transpose());
  if (!all_finite(sym))
    throw Error("fd_hessian: finite differences are ill-conditioned here");
  return sym;
}

CertificateReport check_gradient_monotonicity(const Objective& f,
                                              const Reference& h, double L,
                                              double mu, InteriorSampler& sampler,
                                              int n_pairs, double tol) {
  if (tol < 0.0) throw ConfigError("check_gradient_monotonicity: tol < 0");
  CertificateReport report;
  report.condition = "gradient-monotonicity";
  report.samples = n_pairs;
  report.tolerance = tol;
  report.note = "sampled certificate";
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_pairs; ++i) {
    const Vector x = sampler.next();
    const Vector y = sampler.next();
    if (!f.domain().contains(x) || !f.domain().contains(y))
      throw DomainViolation("check_gradient_monotonicity: sampler left the domain");
    const Vector diff = x - y;
    const double df = (f.gradient(x) - f.gradient(y)).dot(diff);
    const double dh = (h.gradient(x) - h.gradient(y)).dot(diff);
    const double scale = 1.0 + std::fabs(df) + std::fabs(dh);
    worst = std::max(worst, (df - L * dh) / scale);
    worst = std::max(worst, (mu * dh - df) / scale);
  }
  report.worst_violation = worst;
  report.pass = worst <= tol;
  return report;
}

CertificateReport check_hessian_dominance(const Objective& f, const Reference& h,
                                          double L, double mu,
                                          const std::vector<Vector>& points,
                                          double tol, std::uint64_t seed) {
  if (tol < 0.0) throw ConfigError("check_hessian_dominance: tol < 0");
  CertificateReport report;
  report.condition = "hessian-dominance";
  report.samples = static_cast<int>(points.size());
  report.tolerance = tol;
  report.seed = seed;
  report.note = "sampled certificate";
  double worst = -std::numeric_limits<double>::infinity();
  for (const Vector& x : points) {
    const Matrix hf = hessian_or_fd(f, x);
    const Matrix hh = hessian_or_fd(h, x);
    const double scale =
        1.0 + hf.norm() + (std::fabs(L) + std::fabs(mu)) * hh.norm();
    worst = std::max(worst, -min_eigenvalue(L * hh - hf) / scale);
    worst = std::max(worst, -min_eigenvalue(hf - mu * hh) / scale);
  }
  report.worst_violation = worst;
  report.pass = worst <= tol;
  return report;
}

CertificateReport check_hessian_dominance(const Objective& f, const Reference& h,
                                          double L, double mu,
                                          InteriorSampler& sampler, int n_points,
                                          double tol) {
  std::vector<Vector> points;
  points.reserve(n_points);
  for (int i = 0; i < n_points; ++i) points.push_back(sampler.next());
  return check_hessian_dominance(f, h, L, mu, points, tol);
}

double eval_bound(const BoundQuery& q) {
  if (q.k < 1) throw ConfigError("eval_bound: k must be >= 1");
  if (!(q.d0 >= 0.0)) throw ConfigError("eval_bound: D0 must be nonnegative");
  if (!(q.L > 0.0) || q.mu < 0.0 || q.mu >= q.L)
    throw ConfigError("eval_bound: requires 0 <= mu < L");
  switch (q.which) {
    case BoundKind::IterateGapExact:
    case BoundKind::MinGapExact: {
      if (q.mu == 0.0) return q.L * q.d0 / q.k;  // analytic limit of mu -> 0
      // expm1/log1p keep (1 + mu/(L-mu))^k - 1 accurate for tiny mu.
      const double growth_m1 = std::expm1(q.k * std::log1p(q.mu / (q.L - q.mu)));
      return q.mu * q.d0 / growth_m1;
    }
    case BoundKind::IterateGapSublinear:
    case BoundKind::MinGapSublinear:
      return (q.L - q.mu) * q.d0 / q.k;
    case BoundKind::IterateGapGeometric:
      return q.L * std::pow(1.0 - q.mu / q.L, q.k) * q.d0;
  }
  throw Error("eval_bound: unreachable");
}

int dopt_iteration_bound(int n, double gap0, double eps) {
  if (n < 1) throw ConfigError("dopt_iteration_bound: n must be >= 1");
  if (!(eps > 0.0) || !(eps <= gap0))
    throw ConfigError("dopt_iteration_bound: requires 0 < eps <= gap0");
  return static_cast<int>(std::ceil(2.0 * n * std::log(2.0 * gap0 / eps) / eps));
}

namespace {

struct TraceBoundSetup {
  BoundKind kind;
  double d0;
  double f_star;
  bool use_best;  // gap from the running best rather than the current f
};

TraceBoundSetup trace_bound_setup(const IterateTrace& trace,
                                  const RelSmoothPair& pair,
                                  const Vector& x_star) {
  if (trace.rows.empty() || trace.x0.size() == 0)
    throw ConfigError("trace bound check: trace lacks rows or metadata");
  const double f_star = pair.objective->value(x_star);
  if (trace.algorithm == "pgs" || trace.algorithm == "cpgs") {
    const double d0 = bregman_distance(*pair.reference, x_star, trace.x0);
    return {BoundKind::IterateGapExact, d0, f_star, false};
  }
  if (trace.algorithm == "das") {
    const double d0 = pair.reference->value(x_star) -
                      pair.reference->value(trace.x0);
    return {BoundKind::MinGapExact, d0, f_star, true};
  }
  throw ConfigError("trace bound check: no bound applies to algorithm '" +
                    trace.algorithm + "'");
}

}  // namespace

CertificateReport check_bound_on_trace(const IterateTrace& trace,
                                       const RelSmoothPair& pair,
                                       const Vector& x_star) {
  const TraceBoundSetup setup = trace_bound_setup(trace, pair, x_star);
  CertificateReport report;
  report.condition = trace.algorithm == "das" ? "min-gap-trace-bound"
                                              : "iterate-gap-trace-bound";
  report.tolerance = 1e-9 * (1.0 + std::fabs(setup.f_star));
  report.seed = trace.seed;
  double worst = -std::numeric_limits<double>::infinity();
  int checked = 0;
  for (const TraceRow& row : trace.rows) {
    if (row.k < 1) continue;
    const double gap = (setup.use_best ? row.best_f : row.f) - setup.f_star;
    const double bound = eval_bound({trace.L, trace.mu,
                                     static_cast<int>(row.k), setup.d0,
                                     setup.kind});
    worst = std::max(worst, gap - bound);
    ++checked;
  }
  report.samples = checked;
  report.worst_violation = worst;
  report.pass = worst <= report.tolerance;
  return report;
}

void annotate_trace_bounds(IterateTrace& trace, const RelSmoothPair& pair,
                           const Vector& x_star) {
  if (trace.algorithm == "fw") {
    const double f_star = pair.objective->value(x_star);
    for (TraceRow& row : trace.rows) row.gap = row.f - f_star;
    return;
  }
  const TraceBoundSetup setup = trace_bound_setup(trace, pair, x_star);
  for (TraceRow& row : trace.rows) {
    row.gap = (setup.use_best ? row.best_f : row.f) - setup.f_star;
    if (row.k >= 1)
      row.gap_bound = eval_bound({trace.L, trace.mu, static_cast<int>(row.k),
                                  setup.d0, setup.kind});
  }
}

}  // namespace relsmooth
