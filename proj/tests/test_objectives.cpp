#include <doctest.h>

#include <cmath>

#include "relsmooth/certify.hpp"
#include "relsmooth/objectives.hpp"
#include "relsmooth/sampling.hpp"

using namespace relsmooth;

namespace {

void check_fd_gradient(const Objective& f, InteriorSampler& sampler, int count,
                       double tol = 1e-6) {
  for (int i = 0; i < count; ++i) {
    const Vector x = sampler.next();
    const Vector g = f.gradient(x);
    const Vector fd =
        fd_gradient([&f](const Vector& p) { return f.value(p); }, x);
    REQUIRE((g - fd).norm() / std::max(1.0, g.norm()) <= tol);
  }
}

}  // namespace

TEST_CASE("operator norm basics") {
  CHECK(operator_norm(Matrix::Identity(4, 4)) == doctest::Approx(1.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -3.0;
  CHECK(operator_norm(d) == doctest::Approx(3.0));
}

TEST_CASE("operator norm matches power iteration") {
  Prng rng(17);
  const Matrix m = random_normal_matrix(5, 7, rng);
  const Matrix g = m.transpose() * m;
  Vector v = random_normal_vector(7, rng);
  v /= v.norm();
  for (int i = 0; i < 5000; ++i) {
    v = g * v;
    v /= v.norm();
  }
  const double estimate = std::sqrt(v.dot(g * v));
  CHECK(operator_norm(m) == doctest::Approx(estimate).epsilon(1e-8));
}

// ---------------------------------------------------------------------------
// Design objective
// ---------------------------------------------------------------------------

TEST_CASE("design objective: scalar hand evaluation") {
  Matrix h(1, 2);
  h << 1.0, 2.0;
  const DOptimalDesign f(h);
  Vector x(2);
  x << 0.5, 0.5;
  CHECK(f.value(x) == doctest::Approx(-std::log(2.5)).epsilon(1e-14));
  const Vector g = f.gradient(x);
  CHECK(g(0) == doctest::Approx(-0.4).epsilon(1e-13));
  CHECK(g(1) == doctest::Approx(-1.6).epsilon(1e-13));
}

TEST_CASE("design objective: trace identity <x, grad f(x)> = -m") {
  Prng rng(23);
  const Matrix h = random_normal_matrix(3, 10, rng);
  const DOptimalDesign f(h);
  InteriorSampler sampler(f.domain(), 29);
  for (int i = 0; i < 100; ++i) {
    const Vector x = sampler.next();
    CHECK(std::fabs(x.dot(f.gradient(x)) + 3.0) <= 1e-9);
  }
}

TEST_CASE("design objective: finite-difference gradient") {
  Prng rng(31);
  const DOptimalDesign f(random_normal_matrix(3, 10, rng));
  InteriorSampler sampler(f.domain(), 37, 1e-2);
  check_fd_gradient(f, sampler, 25);
}

TEST_CASE("design objective: rank and shape validation") {
  Matrix h(2, 3);
  h << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0;  // rank 1
  CHECK_THROWS_AS(DOptimalDesign{h}, ConfigError);
  CHECK_THROWS_AS(DOptimalDesign{Matrix::Identity(3, 3)}, ConfigError);  // n < m+1
}

TEST_CASE("design objective: singularity error names the pivot") {
  Matrix h(2, 3);
  h << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  const DOptimalDesign f(h);
  Vector x(3);
  x << 1.0, 0.0, 0.0;  // HXH^T = diag(1, 0)
  try {
    f.value(x);
    FAIL("expected SingularMatrix");
  } catch (const SingularMatrix& e) {
    CHECK(e.pivot == 1);
  }
}

// ---------------------------------------------------------------------------
// Volumetric objective
// ---------------------------------------------------------------------------

TEST_CASE("volumetric: scalar hand evaluation at p = 1") {
  Matrix h(1, 2);
  h << 1.0, 1.0;
  const VolumetricObjective f(h, 1);
  Vector x(2);
  x << 0.5, 0.5;
  CHECK(f.value(x) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  const Vector fd =
      fd_gradient([&f](const Vector& p) { return f.value(p); }, x);
  CHECK((f.gradient(x) - fd).norm() <= 1e-6);
}

TEST_CASE("volumetric: trace identity <x, grad f_p(x)> = -p m") {
  Prng rng(41);
  const VolumetricObjective f(random_normal_matrix(2, 6, rng), 2);
  InteriorSampler sampler(f.domain(), 43, 1e-3);
  for (int i = 0; i < 100; ++i) {
    const Vector x = sampler.next();
    CHECK(std::fabs(x.dot(f.gradient(x)) + 2.0 * 2.0) <= 1e-9);
  }
}

TEST_CASE("volumetric: finite-difference gradient and hessian") {
  Prng rng(47);
  const VolumetricObjective f(random_normal_matrix(2, 6, rng), 2);
  InteriorSampler sampler(f.domain(), 53, 5e-2);
  check_fd_gradient(f, sampler, 25);

  const Vector x = sampler.next();
  const Matrix fd = fd_hessian(
      [&f](const Vector& p) { return f.gradient(p); }, x);
  CHECK((f.hessian(x) - fd).norm() / std::max(1.0, fd.norm()) <= 1e-4);
}

TEST_CASE("volumetric: rejects nonpositive p") {
  Matrix h(1, 2);
  h << 1.0, 1.0;
  CHECK_THROWS_AS(VolumetricObjective(h, 0), ConfigError);
  CHECK_THROWS_AS(VolumetricObjective(h, -1), ConfigError);
}

// ---------------------------------------------------------------------------
// Quartic composite objective
// ---------------------------------------------------------------------------

TEST_CASE("quartic: global minimum when both residuals vanish") {
  Matrix a = Matrix::Identity(2, 2);
  Matrix c = Matrix::Identity(2, 2);
  Vector target(2);
  target << 1.0, -1.0;
  const QuarticObjective f(a, target, c, target);
  CHECK(f.value(target) == 0.0);
  CHECK(f.gradient(target) == Vector::Zero(2));
}

TEST_CASE("quartic: one-dimensional arithmetic") {
  const QuarticObjective f(Matrix::Identity(1, 1), Vector::Zero(1),
                           Matrix::Identity(1, 1), Vector::Zero(1));
  Vector x(1);
  x << 2.0;
  CHECK(f.value(x) == doctest::Approx(6.0));        // 4 + 2
  CHECK(f.gradient(x)(0) == doctest::Approx(10.0));  // 8 + 2
  const Vector fd = fd_gradient([&f](const Vector& p) { return f.value(p); }, x);
  CHECK(std::fabs(fd(0) - 10.0) <= 1e-5);
}

TEST_CASE("quartic: random instance against finite differences") {
  Prng rng(59);
  const QuarticObjective f(random_normal_matrix(3, 4, rng),
                           random_normal_vector(3, rng),
                           random_normal_matrix(2, 4, rng),
                           random_normal_vector(2, rng),
                           random_normal_matrix(4, 4, rng));
  InteriorSampler sampler(f.domain(), 61);
  check_fd_gradient(f, sampler, 25);
  const Vector x = sampler.next();
  const Matrix fd =
      fd_hessian([&f](const Vector& p) { return f.gradient(p); }, x);
  CHECK((f.hessian(x) - fd).norm() / std::max(1.0, fd.norm()) <= 1e-5);
}

// ---------------------------------------------------------------------------
// Smoothness-constant calculus
// ---------------------------------------------------------------------------

TEST_CASE("smoothness from polynomial on R^n") {
  CHECK(smoothness_from_polynomial_rn({{1.0}}) == 1.0);
  CHECK(smoothness_from_polynomial_rn({{0.0, 2.0, 5.0}}) == 7.0);
  CHECK(smoothness_from_polynomial_rn({{-1.0, 2.0, -3.0}}) == 6.0);
}

TEST_CASE("quartic growth coefficients match the closed formula") {
  Prng rng(67);
  const Matrix a = random_normal_matrix(3, 4, rng);
  const Vector b = random_normal_vector(3, rng);
  const Matrix c = random_normal_matrix(2, 4, rng);
  const QuarticObjective f(a, b, c, random_normal_vector(2, rng));
  const double na = operator_norm(a);
  const double nb = b.norm();
  const double nc = operator_norm(c);
  const double expected = 3.0 * std::pow(na, 4) + 6.0 * std::pow(na, 3) * nb +
                          3.0 * na * na * nb * nb + nc * nc;
  CHECK(f.auto_smoothness() == doctest::Approx(expected).epsilon(1e-12));

  // The growth polynomial really dominates the sampled Hessian norm.
  const PolynomialBound poly{f.hessian_growth_coeffs()};
  InteriorSampler sampler(f.domain(), 71);
  for (int i = 0; i < 50; ++i) {
    const Vector x = sampler.next();
    CHECK(operator_norm(f.hessian(x)) <= poly.eval(x.norm()) + 1e-9);
  }
}

TEST_CASE("smoothness from polynomial on the box") {
  CHECK(smoothness_from_polynomial_box({{4.0}}, 1.0, 3) == 4.0);  // s = 0
  const double L = smoothness_from_polynomial_box({{1.0, 1.0}}, 1.0, 2);
  CHECK(L == doctest::Approx(3.0));  // 1*(1/2)^{-1} + 1
  for (double alpha : {2.0, 5.0, 100.0})
    CHECK(1.0 + alpha <= L * alpha + 1e-12);  // q_1(a) <= L a for a >= n/u
  CHECK(smoothness_from_polynomial_box({{0.0, 0.0, 2.5}}, 0.7, 4) ==
        doctest::Approx(2.5));  // homogeneous case
}

TEST_CASE("strong convexity constant from singular values") {
  CHECK(strong_convexity_for_quartic(Matrix::Identity(2, 2),
                                     Matrix::Identity(2, 2)) ==
        doctest::Approx(1.0 / 3.0));
  Matrix e(1, 1), c(1, 1);
  e << 2.0;
  c << 3.0;
  CHECK(strong_convexity_for_quartic(e, c) == doctest::Approx(16.0 / 3.0));
  Matrix rank_deficient(2, 2);
  rank_deficient << 1.0, 1.0, 1.0, 1.0;
  CHECK(strong_convexity_for_quartic(Matrix::Identity(2, 2), rank_deficient) ==
        0.0);
}

// ---------------------------------------------------------------------------
// Univariate polynomial objective
// ---------------------------------------------------------------------------

TEST_CASE("polynomial1d evaluation and recentred smoothness") {
  // f(x) = x^4 - 4x^3 + 7x^2 - 5x + 3 recentres at 1 to y^4 + y^2 + y + 2.
  const Polynomial1D f({3.0, -5.0, 7.0, -4.0, 1.0});
  CHECK(f.eval(0.0) == 3.0);
  CHECK(f.eval(2.0) == doctest::Approx(16.0 - 32.0 + 28.0 - 10.0 + 3.0));
  CHECK(f.deriv(1.0) == doctest::Approx(4.0 - 12.0 + 14.0 - 5.0));
  CHECK(f.second_deriv(1.0) == doctest::Approx(2.0));
  // |2*1| + |6*0| + |12*1| = 14 after the shift
  CHECK(f.auto_smoothness(1.0) == doctest::Approx(14.0));
  // Uncentred: f'' = 12x^2 - 24x + 14 gives 12 + 24 + 14
  CHECK(f.auto_smoothness(0.0) == doctest::Approx(50.0));
}
