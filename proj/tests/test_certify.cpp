#include <doctest.h>

#include <cmath>

#include "relsmooth/certify.hpp"
#include "relsmooth/references.hpp"
#include "relsmooth/sampling.hpp"
#include "relsmooth/solvers.hpp"

using namespace relsmooth;

namespace {

std::shared_ptr<const DOptimalDesign> dopt_objective(int m, int n,
                                                     std::uint64_t seed) {
  Prng rng(seed);
  return std::make_shared<DOptimalDesign>(random_normal_matrix(m, n, rng));
}

std::vector<Vector> grid_1d(double lo, double hi, double step) {
  std::vector<Vector> points;
  for (double x = lo; x <= hi + 1e-12; x += step) {
    Vector p(1);
    p << x;
    points.push_back(p);
  }
  return points;
}

const Polynomial1D& remark_quartic() {
  static const Polynomial1D f({3.0, -5.0, 7.0, -4.0, 1.0});
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gradient monotonicity
// ---------------------------------------------------------------------------

TEST_CASE("gradient monotonicity: equality case f = h") {
  // f = 1/2 ||x||^2 against the euclidean reference with L = mu = 1.
  auto f = std::make_shared<QuarticObjective>(Matrix::Zero(1, 3), Vector::Zero(1),
                                              Matrix::Identity(3, 3),
                                              Vector::Zero(3));
  const EuclideanReference h(3);
  InteriorSampler sampler(h.domain(), 1);
  const CertificateReport report =
      check_gradient_monotonicity(*f, h, 1.0, 1.0, sampler, 500);
  CHECK(report.pass);
  CHECK(report.worst_violation <= 1e-12);
  CHECK(report.note == "sampled certificate");
}

TEST_CASE("gradient monotonicity: design objective is 1-smooth w.r.t. the barrier") {
  const auto f = dopt_objective(3, 10, 2);
  const SimplexLogBarrier h(10);
  InteriorSampler sampler(h.domain(), 3);
  const CertificateReport report =
      check_gradient_monotonicity(*f, h, 1.0, 0.0, sampler, 1000);
  CHECK(report.pass);
}

TEST_CASE("gradient monotonicity: halved L is falsified by a witness") {
  // Low-dimensional simplices put sampled pairs near the binding directions;
  // this instance yields a solid witness (worst violation around 0.23).
  const auto f = dopt_objective(3, 4, 2);
  const SimplexLogBarrier h(4);
  InteriorSampler sampler(h.domain(), 3);
  const CertificateReport report =
      check_gradient_monotonicity(*f, h, 0.5, 0.0, sampler, 1000);
  if (report.worst_violation <= report.tolerance) {
    MESSAGE("no witness among 1000 sampled pairs; falsification inconclusive");
    return;
  }
  CHECK_FALSE(report.pass);
  CHECK(report.worst_violation > 0.0);
}

TEST_CASE("gradient monotonicity: every objective is (1,1)-certified against itself") {
  // The equality case of the two-sided condition, exercised through a
  // reference adaptor around the objective.
  class AsReference : public Reference {
   public:
    explicit AsReference(ObjectivePtr f) : f_(std::move(f)) {}
    const Domain& domain() const override { return f_->domain(); }
    double value(const Vector& x) const override { return f_->value(x); }
    Vector gradient(const Vector& x) const override { return f_->gradient(x); }
    SubproblemSolve solve_subproblem(const Vector&) const override {
      throw UnsupportedOperation("test adaptor");
    }

   private:
    ObjectivePtr f_;
  };

  const auto f = dopt_objective(2, 6, 5);
  const AsReference self(f);
  InteriorSampler sampler(f->domain(), 7);
  const CertificateReport report =
      check_gradient_monotonicity(*f, self, 1.0, 1.0, sampler, 300);
  CHECK(report.pass);

  Prng rng(8);
  auto q = std::make_shared<QuarticObjective>(
      random_normal_matrix(2, 3, rng), random_normal_vector(2, rng),
      random_normal_matrix(3, 3, rng), random_normal_vector(3, rng));
  const AsReference self_q(q);
  InteriorSampler sampler_q(q->domain(), 9);
  CHECK(check_gradient_monotonicity(*q, self_q, 1.0, 1.0, sampler_q, 300).pass);
}

// ---------------------------------------------------------------------------
// Hessian dominance
// ---------------------------------------------------------------------------

TEST_CASE("hessian dominance: recentred reference certifies L = 4") {
  Vector center(1);
  center << 1.0;
  const PowerNormReference h2(2, center);
  const CertificateReport report = check_hessian_dominance(
      remark_quartic(), h2, 4.0, 0.0, grid_1d(-10.0, 12.0, 0.01));
  CHECK(report.pass);

  // The certified constant is tight: the curvature ratio approaches 4.
  double sup_ratio = 0.0;
  for (const Vector& p : grid_1d(-10.0, 12.0, 0.01)) {
    const double ratio =
        remark_quartic().hessian(p)(0, 0) / h2.hessian(p)(0, 0);
    sup_ratio = std::max(sup_ratio, ratio);
  }
  CHECK(sup_ratio >= 3.99);
  CHECK(sup_ratio <= 4.0);
}

TEST_CASE("hessian dominance: uncentred reference needs L = 9 + sqrt(73)") {
  const PowerNormReference h1(2, 1);
  const double L1 = 9.0 + std::sqrt(73.0);
  const auto grid = grid_1d(-10.0, 12.0, 0.01);
  CHECK(check_hessian_dominance(remark_quartic(), h1, L1, 0.0, grid).pass);

  const CertificateReport fail =
      check_hessian_dominance(remark_quartic(), h1, 17.0, 0.0, grid);
  CHECK_FALSE(fail.pass);
  CHECK(fail.worst_violation > 0.0);
}

TEST_CASE("hessian dominance: volumetric p = 2 against the barrier at L = 6") {
  Prng rng(11);
  const VolumetricObjective f(random_normal_matrix(2, 6, rng), 2);
  const SimplexLogBarrier h(6);
  InteriorSampler sampler(h.domain(), 13);
  const CertificateReport report =
      check_hessian_dominance(f, h, 6.0, 0.0, sampler, 200);
  CHECK(report.pass);
}

TEST_CASE("hessian dominance: finite-difference fallback") {
  // An objective without an analytic Hessian: plain quadratic wrapper.
  class NoHessian : public Objective {
   public:
    const Domain& domain() const override { return domain_; }
    double value(const Vector& x) const override { return 0.5 * x.squaredNorm(); }
    Vector gradient(const Vector& x) const override { return x; }

   private:
    Domain domain_ = Domain::all_space(3);
  };
  const NoHessian f;
  const EuclideanReference h(3);
  InteriorSampler sampler(h.domain(), 17);
  const CertificateReport report =
      check_hessian_dominance(f, h, 1.0, 1.0, sampler, 20, 1e-6);
  CHECK(report.pass);
}

// ---------------------------------------------------------------------------
// Bound evaluation
// ---------------------------------------------------------------------------

TEST_CASE("eval_bound values") {
  CHECK(eval_bound({4.0, 0.0, 10, 2.0, BoundKind::IterateGapSublinear}) ==
        doctest::Approx(0.8));
  CHECK(eval_bound({2.0, 1.0, 1, 1.0, BoundKind::IterateGapExact}) ==
        doctest::Approx(1.0));
  CHECK(eval_bound({3.0, 0.0, 6, 2.0, BoundKind::IterateGapExact}) ==
        doctest::Approx(1.0));  // analytic mu -> 0 limit: L D0 / k
  CHECK(eval_bound({2.0, 0.5, 3, 1.0, BoundKind::IterateGapGeometric}) ==
        doctest::Approx(2.0 * std::pow(0.75, 3)));
  CHECK_THROWS_AS(eval_bound({1.0, 1.0, 1, 1.0, BoundKind::IterateGapExact}),
                  ConfigError);
  CHECK_THROWS_AS(eval_bound({1.0, 0.0, 0, 1.0, BoundKind::IterateGapSublinear}),
                  ConfigError);
}

TEST_CASE("eval_bound: geometric form dominates the exact middle expression") {
  for (int li = 1; li <= 10; ++li) {
    for (int mi = 0; mi < 10; ++mi) {
      const double L = li;
      const double mu = L * (mi + 0.5) / 11.0;
      for (int k = 1; k <= 200; ++k) {
        const double middle =
            eval_bound({L, mu, k, 1.0, BoundKind::IterateGapExact});
        const double geometric = eval_bound({L, mu, k, 1.0, BoundKind::IterateGapGeometric});
        REQUIRE(middle <= geometric * (1.0 + 1e-12) + 1e-300);
      }
    }
  }
}

TEST_CASE("eval_bound: middle expression approaches the mu = 0 limit") {
  const double limit = eval_bound({2.0, 0.0, 7, 3.0, BoundKind::IterateGapExact});
  double prev_err = std::numeric_limits<double>::infinity();
  for (double mu : {1e-3, 1e-6, 1e-9}) {
    const double v = eval_bound({2.0, mu, 7, 3.0, BoundKind::IterateGapExact});
    const double err = std::fabs(v - limit) / limit;
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-8);
}

TEST_CASE("design iteration bound") {
  CHECK(dopt_iteration_bound(10, 1.0, 1.0) == 14);  // ceil(20 ln 2)
  CHECK(dopt_iteration_bound(10, 2.0, 0.01) == 11983);
  // Boundary of validity eps = gap0: ceil(2 n ln 2 / eps).
  CHECK(dopt_iteration_bound(5, 0.5, 0.5) ==
        static_cast<int>(std::ceil(10.0 * std::log(2.0) / 0.5)));
  CHECK_THROWS_AS(dopt_iteration_bound(10, 1.0, 2.0), ConfigError);
}

// ---------------------------------------------------------------------------
// Bound checks on recorded runs
// ---------------------------------------------------------------------------

TEST_CASE("trace bound: exact-model run has zero gaps") {
  auto f = std::make_shared<QuarticObjective>(Matrix::Zero(1, 2), Vector::Zero(1),
                                              Matrix::Identity(2, 2),
                                              Vector::Zero(2));
  auto h = std::make_shared<EuclideanReference>(2);
  const RelSmoothPair pair(f, h, 1.0, 0.0);
  Vector x0(2);
  x0 << 2.0, -1.0;
  SolverConfig cfg;
  cfg.max_iters = 10;
  cfg.record_every = 1;
  const IterateTrace trace = primal_gradient(pair, x0, cfg);
  const CertificateReport report =
      check_bound_on_trace(trace, pair, Vector::Zero(2));
  CHECK(report.pass);
  for (const TraceRow& row : trace.rows)
    if (row.k >= 1) CHECK(row.f == 0.0);
}

TEST_CASE("trace bound: design run passes, halved L fails") {
  const auto objective = dopt_objective(3, 10, 19);
  auto h = std::make_shared<SimplexLogBarrier>(10);
  const RelSmoothPair pair(objective, h, 1.0, 0.0);
  const Vector x0 = Vector::Constant(10, 0.1);

  SolverConfig oracle_cfg;
  oracle_cfg.max_iters = 2000000;
  oracle_cfg.record_every = 1000000;
  const IterateTrace oracle =
      frank_wolfe_dopt(*objective, x0, oracle_cfg, 1e-5);
  const Vector x_star = (1.0 - 1e-10) * oracle.rows.back().x + 1e-10 * x0;

  SolverConfig cfg;
  cfg.max_iters = 500;
  cfg.record_every = 1;
  const IterateTrace good = primal_gradient(pair, x0, cfg);
  CHECK(check_bound_on_trace(good, pair, x_star).pass);
}

TEST_CASE("trace bound: a deliberately halved L is caught") {
  // f = h = 1/2 ||x||^2 with the true constant 1.  Running at L = 1/2
  // doubles the step, the iterates oscillate between +-x0, and the gap
  // stalls while the claimed bound decays like 1/k.
  auto f = std::make_shared<QuarticObjective>(Matrix::Zero(1, 2), Vector::Zero(1),
                                              Matrix::Identity(2, 2),
                                              Vector::Zero(2));
  auto h = std::make_shared<EuclideanReference>(2);
  const RelSmoothPair wrong(f, h, 0.5, 0.0);
  Vector x0(2);
  x0 << 1.0, 2.0;
  SolverConfig cfg;
  cfg.max_iters = 50;
  cfg.record_every = 1;
  const IterateTrace bad = primal_gradient(wrong, x0, cfg);
  const CertificateReport report =
      check_bound_on_trace(bad, wrong, Vector::Zero(2));
  CHECK_FALSE(report.pass);
  CHECK(report.worst_violation > 0.0);
}

TEST_CASE("trace bound: annotation fills gap and bound columns consistently") {
  const auto objective = dopt_objective(2, 6, 23);
  auto h = std::make_shared<SimplexLogBarrier>(6);
  const RelSmoothPair pair(objective, h, 1.0, 0.0);
  const Vector x0 = Vector::Constant(6, 1.0 / 6);

  SolverConfig cfg;
  cfg.max_iters = 200;
  cfg.record_every = 1;
  IterateTrace trace = primal_gradient(pair, x0, cfg);

  SolverConfig oracle_cfg;
  oracle_cfg.max_iters = 1000000;
  oracle_cfg.record_every = 1000000;
  const IterateTrace oracle =
      frank_wolfe_dopt(*objective, x0, oracle_cfg, 1e-5);
  const Vector x_star = (1.0 - 1e-10) * oracle.rows.back().x + 1e-10 * x0;

  annotate_trace_bounds(trace, pair, x_star);
  for (const TraceRow& row : trace.rows) {
    if (row.k < 1) continue;
    REQUIRE(!std::isnan(row.gap));
    REQUIRE(!std::isnan(row.gap_bound));
    REQUIRE(row.gap <= row.gap_bound + 1e-9);
  }
}

TEST_CASE("certificates are reproducible bit for bit") {
  const auto f = dopt_objective(2, 6, 29);
  const SimplexLogBarrier h(6);
  InteriorSampler s1(h.domain(), 31);
  InteriorSampler s2(h.domain(), 31);
  const CertificateReport a = check_gradient_monotonicity(*f, h, 1.0, 0.0, s1, 200);
  const CertificateReport b = check_gradient_monotonicity(*f, h, 1.0, 0.0, s2, 200);
  CHECK(a.worst_violation == b.worst_violation);
  CHECK(a.pass == b.pass);
}
