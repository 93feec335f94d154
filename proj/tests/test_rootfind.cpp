#include <doctest.h>

#include <cmath>

#include "relsmooth/errors.hpp"
#include "relsmooth/rootfind.hpp"

using namespace relsmooth;

TEST_CASE("linear function") {
  auto f = [](double t) { return t - 1.0; };
  const RootResult r = solve_monotone(f, Bracket{0.0, 2.0}, 1e-12);
  CHECK(r.root == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.residual <= 1e-12);
}

TEST_CASE("quadratic root is the golden ratio conjugate") {
  auto f = [](double t) { return t * t + t - 1.0; };
  const RootResult r = solve_monotone(f, Bracket{0.0, 1.0}, 1e-12);
  const double expected = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.6180339887...
  CHECK(std::fabs(r.root - expected) < 1e-12);
  CHECK(r.root >= r.bracket_lo);
  CHECK(r.root <= r.bracket_hi);
}

TEST_CASE("reciprocal sum with half-open bracket") {
  // sum_j 1/(c_j + t) - 1 with c = (0, 1) clears to t^2 - t - 1 = 0.
  auto f = [](double t) { return 1.0 / t + 1.0 / (1.0 + t) - 1.0; };
  const RootResult r = solve_monotone(f, Bracket::half_open(1e-12), 1e-13);
  const double expected = (1.0 + std::sqrt(5.0)) / 2.0;  // 1.6180339887...
  CHECK(std::fabs(r.root - expected) < 1e-12);
}

TEST_CASE("caller-supplied derivative is used") {
  int deriv_calls = 0;
  auto f = [](double t) { return std::exp(t) - 2.0; };
  auto df = [&deriv_calls](double t) {
    ++deriv_calls;
    return std::exp(t);
  };
  const RootResult r = solve_monotone(f, Bracket{0.0, 5.0}, 1e-12, df);
  CHECK(std::fabs(r.root - std::log(2.0)) < 1e-12);
  CHECK(deriv_calls > 0);
}

TEST_CASE("deterministic: identical inputs give bit-identical roots") {
  auto f = [](double t) { return std::atan(t) - 0.3; };
  const RootResult a = solve_monotone(f, Bracket::half_open(-1.0), 1e-12);
  const RootResult b = solve_monotone(f, Bracket::half_open(-1.0), 1e-12);
  CHECK(a.root == b.root);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("bracketing failure without a sign change") {
  auto f = [](double t) { return 1.0 + t * t; };  // always positive
  CHECK_THROWS_AS(solve_monotone(f, Bracket{0.0, 1.0}, 1e-12), BracketingFailure);
}

TEST_CASE("endpoint roots are accepted immediately") {
  auto f = [](double t) { return t; };
  const RootResult r = solve_monotone(f, Bracket{0.0, 2.0}, 1e-12);
  CHECK(r.root == 0.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("iteration cap reports the last residual") {
  // Sign function: bracketed, but the residual can never reach tol.
  auto f = [](double t) { return t >= 0.0 ? 1.0 : -1.0; };
  try {
    solve_monotone(f, Bracket{-1.0, 1.0}, 1e-12);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.last_residual == 1.0);
  }
}
