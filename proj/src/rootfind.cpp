#include "relsmooth/rootfind.hpp"

#include <cmath>
#include <string>

#include "relsmooth/errors.hpp"

namespace relsmooth {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kMaxExpansions = 128;

double central_difference(const ScalarFn& func, double x) {
  const double h = 1e-7 * (1.0 + std::fabs(x));
  return (func(x + h) - func(x - h)) / (2.0 * h);
}

bool same_sign(double a, double b) { return (a > 0) == (b > 0); }

}  // namespace

RootResult solve_monotone(const ScalarFn& func, Bracket hint, double tol,
                          const ScalarFn& deriv) {
  double lo = hint.lo;
  double f_lo = std::isnan(hint.f_lo) ? func(lo) : hint.f_lo;
  if (std::fabs(f_lo) <= tol) return {lo, std::fabs(f_lo), 0, lo, lo};

  double hi = hint.hi;
  double f_hi;
  if (std::isinf(hi)) {
    // Half-open bracket: walk up from lo in doubling steps.
    double width = 1.0;
    int expansions = 0;
    for (;;) {
      hi = lo + width;
      f_hi = func(hi);
      if (!same_sign(f_lo, f_hi)) break;
      lo = hi;  // monotone, so the root is beyond any same-sign point
      f_lo = f_hi;
      width *= 2.0;
      if (++expansions > kMaxExpansions)
        throw BracketingFailure("solve_monotone: no sign change after " +
                                std::to_string(kMaxExpansions) + " expansions");
    }
  } else {
    f_hi = std::isnan(hint.f_hi) ? func(hi) : hint.f_hi;
    if (std::fabs(f_hi) <= tol) return {hi, std::fabs(f_hi), 0, lo, hi};
    if (same_sign(f_lo, f_hi)) {
      // Grow the upper end; lo is treated as a hard lower boundary.
      double width = hi - lo;
      int expansions = 0;
      for (;;) {
        lo = hi;
        f_lo = f_hi;
        width *= 2.0;
        hi = lo + width;
        f_hi = func(hi);
        if (!same_sign(f_lo, f_hi)) break;
        if (++expansions > kMaxExpansions)
          throw BracketingFailure("solve_monotone: no sign change after " +
                                  std::to_string(kMaxExpansions) + " expansions");
      }
    }
  }
  if (std::fabs(f_hi) <= tol) return {hi, std::fabs(f_hi), 0, lo, hi};

  double x = 0.5 * (lo + hi);
  double fx = func(x);
  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    if (std::fabs(fx) <= tol) return {x, std::fabs(fx), iter, lo, hi};

    // Shrink the bracket around the sign change.
    if (same_sign(fx, f_lo)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }

    const double d = deriv ? deriv(x) : central_difference(func, x);
    double next = (d != 0.0) ? x - fx / d : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    fx = func(x);
  }
  if (std::fabs(fx) <= tol) return {x, std::fabs(fx), kMaxIterations, lo, hi};
  throw NoConvergence("solve_monotone: residual " + std::to_string(std::fabs(fx)) +
                          " above tol after " + std::to_string(kMaxIterations) +
                          " iterations",
                      std::fabs(fx));
}

}  // namespace relsmooth
