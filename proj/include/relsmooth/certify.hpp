#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relsmooth/oracles.hpp"
#include "relsmooth/sampling.hpp"
#include "relsmooth/trace.hpp"

namespace relsmooth {

/// Outcome of a sampled certification run.  Sampling can only ever spot-check
/// the universally quantified conditions, so a pass is a "sampled
/// certificate", never a proof.  Violations are scaled by the magnitude of
/// the quantities compared; pass holds iff worst_violation <= tolerance.
struct CertificateReport {
  std::string condition;
  int samples = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string note;
};

/// Checks mu <grad h(x)-grad h(y), x-y> <= <grad f(x)-grad f(y), x-y>
///                                      <= L <grad h(x)-grad h(y), x-y>
/// on n_pairs sampled interior pairs.  Violations are scaled by
/// 1 + |inner products|.
CertificateReport check_gradient_monotonicity(const Objective& f,
                                              const Reference& h, double L,
                                              double mu, InteriorSampler& sampler,
                                              int n_pairs, double tol = 1e-9);

/// Checks mu hess(h) <= hess(f) <= L hess(h) in the Loewner order (smallest
/// eigenvalue of the differences) at each given point.  Oracles without an
/// analytic Hessian fall back to central differences of the gradient with
/// per-coordinate step 1e-4 (1 + |x_i|).
CertificateReport check_hessian_dominance(const Objective& f, const Reference& h,
                                          double L, double mu,
                                          const std::vector<Vector>& points,
                                          double tol = 1e-9,
                                          std::uint64_t seed = 0);

CertificateReport check_hessian_dominance(const Objective& f, const Reference& h,
                                          double L, double mu,
                                          InteriorSampler& sampler, int n_points,
                                          double tol = 1e-9);

enum class BoundKind {
  IterateGapExact,      // mu D0 / ((1 + mu/(L-mu))^k - 1); limit L D0 / k at mu = 0
  IterateGapSublinear,  // (L - mu) D0 / k
  IterateGapGeometric,  // L (1 - mu/L)^k D0
  MinGapExact,          // same closed form as IterateGapExact; D0 is the shifted h
  MinGapSublinear,      // (L - mu) D0 / k
};

struct BoundQuery {
  double L;
  double mu;
  int k;
  double d0;  // either D_h(x, x0) or h(x) - h(x0), by bound kind
  BoundKind which;
};

/// Evaluates the requested convergence bound; mu = 0 middle expressions use
/// the analytic limit.  Requires k >= 1, d0 >= 0 and mu < L.
double eval_bound(const BoundQuery& q);

/// Iterations guaranteeing an eps-optimal design objective from the uniform
/// start: ceil(2 n ln(2 gap0 / eps) / eps).  Requires 0 < eps <= gap0.
int dopt_iteration_bound(int n, double gap0, double eps);

/// Checks every recorded iterate of a run against its theoretical bound at
/// the point x_star: gap_k <= bound_k + slack with slack = 1e-9 (1 + |f*|).
/// The bound and gap convention follow the trace's algorithm: current-iterate
/// gap vs IterateGapExact with D0 = D_h(x*, x0) for the primal-gradient
/// schemes, best-so-far gap vs MinGapExact with D0 = h(x*) - h(x0) for
/// dual averaging.
CertificateReport check_bound_on_trace(const IterateTrace& trace,
                                       const RelSmoothPair& pair,
                                       const Vector& x_star);

/// Fills the gap and gap_bound columns of a recorded trace from an oracle
/// point, using the same conventions as check_bound_on_trace.  For the
/// vertex-direction baseline only the gap column is filled.
void annotate_trace_bounds(IterateTrace& trace, const RelSmoothPair& pair,
                           const Vector& x_star);

/// Central-difference gradient with step 1e-5 (1 + ||x||).
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x);

/// Central differences of the gradient, per-coordinate step 1e-4 (1 + |x_i|),
/// symmetrized.
Matrix fd_hessian(const std::function<Vector(const Vector&)>& grad, const Vector& x);

}  // namespace relsmooth
