#pragma once

#include <functional>
#include <limits>

namespace relsmooth {

/// Interval believed to contain a root.  `hi` may be +infinity, in which
/// case the solver expands geometrically from `lo` until it finds a sign
/// change.  `f_lo`/`f_hi` may carry precomputed endpoint values (NaN means
/// "not evaluated yet").
struct Bracket {
  double lo;
  double hi;
  double f_lo = std::numeric_limits<double>::quiet_NaN();
  double f_hi = std::numeric_limits<double>::quiet_NaN();

  static Bracket half_open(double lo) {
    return Bracket{lo, std::numeric_limits<double>::infinity()};
  }
};

struct RootResult {
  double root;
  double residual;      // |func(root)|
  int iterations;       // Newton/bisection iterations spent
  double bracket_lo;    // final enclosing interval
  double bracket_hi;
};

using ScalarFn = std::function<double(double)>;

/// Finds the root of a strictly monotone scalar function by Newton's method
/// safeguarded with bisection: whenever the Newton step leaves the current
/// sign-change bracket the step is replaced by bisection.  The derivative
/// comes from `deriv` when supplied, otherwise from a central difference.
///
/// Stops when |func(theta)| <= tol.  Throws BracketingFailure if no sign
/// change is found after 128 doublings, and NoConvergence (carrying the last
/// residual) after 200 iterations.  Fully deterministic.
RootResult solve_monotone(const ScalarFn& func, Bracket hint, double tol = 1e-12,
                          const ScalarFn& deriv = nullptr);

}  // namespace relsmooth
