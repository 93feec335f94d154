#include "relsmooth/references.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace relsmooth {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSubproblemTol = 1e-12;

// Single real root of t^3 + p t + q = 0 for p > 0 (hyperbolic form; no
// cancellation for small or large p).
double depressed_cubic_root(double p, double q) {
  const double scale = 2.0 * std::sqrt(p / 3.0);
  const double arg = 3.0 * q / (2.0 * p) * std::sqrt(3.0 / p);
  return -scale * std::sinh(std::asinh(arg) / 3.0);
}
}  // namespace

// ---------------------------------------------------------------------------
// Power-norm family
// ---------------------------------------------------------------------------

PowerNormReference::PowerNormReference(int r, int dim)
    : PowerNormReference(r, Vector::Zero(dim)) {}

PowerNormReference::PowerNormReference(int r, Vector center)
    : r_(r),
      center_(std::move(center)),
      domain_(Domain::all_space(static_cast<int>(center_.size()))) {
  if (r < 1) throw ConfigError("PowerNormReference: r must be >= 1");
}

double PowerNormReference::value(const Vector& x) const {
  const double nrm = (x - center_).norm();
  return std::pow(nrm, r_ + 2) / (r_ + 2) + 0.5 * nrm * nrm;
}

Vector PowerNormReference::gradient(const Vector& x) const {
  const Vector z = x - center_;
  return (1.0 + std::pow(z.norm(), r_)) * z;
}

Matrix PowerNormReference::hessian(const Vector& x) const {
  const Vector z = x - center_;
  const double nrm = z.norm();
  Matrix h = (1.0 + std::pow(nrm, r_)) * Matrix::Identity(z.size(), z.size());
  if (nrm > 0.0) h += r_ * std::pow(nrm, r_ - 2) * z * z.transpose();
  return h;
}

double power_norm_step(double c_norm, int r, bool closed_form) {
  if (c_norm == 0.0) return 1.0;
  const double s = std::pow(c_norm, r);  // root of 1 - t - s t^(r+1) = 0
  auto g = [s, r](double t) { return 1.0 - t - s * std::pow(t, r + 1); };
  auto dg = [s, r](double t) { return -1.0 - (r + 1) * s * std::pow(t, r); };

  double t;
  if (!closed_form || r > 3) {
    t = solve_monotone(g, Bracket{0.0, 1.0}, kSubproblemTol, dg).root;
  } else if (r == 1) {
    t = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * s));
  } else if (r == 2) {
    t = depressed_cubic_root(1.0 / s, -1.0 / s);
  } else {  // r == 3: Ferrari on t^4 + qh t + rh = 0
    const double qh = 1.0 / s;
    const double rh = -1.0 / s;
    // Resolvent cubic m^3 - rh m - qh^2 / 8 = 0 has a positive root.
    const double m = depressed_cubic_root(-rh, -qh * qh / 8.0);
    const double a2 = std::sqrt(2.0 * m);
    const double disc = 2.0 * qh / a2 - 2.0 * m;
    t = 0.5 * (-a2 + std::sqrt(disc));
  }
  // Two Newton corrections recover digits lost to cancellation in the
  // closed forms for extreme ||c||.
  for (int i = 0; i < 2; ++i) {
    const double d = dg(t);
    if (d == 0.0) break;
    t -= g(t) / d;
  }
  return t;
}

SubproblemSolve PowerNormReference::solve_subproblem(const Vector& c) const {
  const double c_norm = c.norm();
  if (c_norm == 0.0) return {center_, 0.0};
  const double t = power_norm_step(c_norm, r_, /*closed_form=*/true);
  const Vector z = -t * c;
  const Vector x = center_ + z;
  const double residual =
      (c + (1.0 + std::pow(z.norm(), r_)) * z).lpNorm<Eigen::Infinity>();
  return {x, residual};
}

// ---------------------------------------------------------------------------
// Simplex log barrier
// ---------------------------------------------------------------------------

double SimplexLogBarrier::value(const Vector& x) const {
  if ((x.array() <= 0.0).any()) return kInf;
  return -x.array().log().sum();
}

Vector SimplexLogBarrier::gradient(const Vector& x) const {
  if ((x.array() <= 0.0).any())
    throw DomainViolation("log barrier gradient needs x > 0");
  return -x.cwiseInverse();
}

Matrix SimplexLogBarrier::hessian(const Vector& x) const {
  if ((x.array() <= 0.0).any())
    throw DomainViolation("log barrier Hessian needs x > 0");
  return x.array().square().inverse().matrix().asDiagonal();
}

SubproblemSolve SimplexLogBarrier::solve_subproblem(const Vector& c) const {
  if (c.size() != domain_.dim())
    throw DimensionMismatch("subproblem: c has wrong dimension");
  // The solution is invariant under shifting c by a constant (the multiplier
  // absorbs it), so work with cs = c - min(c).  Then the multiplier lies in
  // [1, n]: 1/theta <= sum_j 1/(cs_j + theta) = 1 forces theta >= 1, and the
  // sum is already <= 1 at theta = n.  This keeps full double resolution for
  // arbitrarily large accumulated coefficients.
  const double n = static_cast<double>(domain_.dim());
  const Vector cs = c.array() - c.minCoeff();
  auto d = [&cs](double theta) {
    return (cs.array() + theta).inverse().sum() - 1.0;
  };
  auto dd = [&cs](double theta) {
    return -(cs.array() + theta).square().inverse().sum();
  };
  const double lo = 1e-14 * (1.0 + cs.maxCoeff());
  const RootResult root =
      solve_monotone(d, Bracket{lo, n}, kSubproblemTol, dd);
  Vector x = (cs.array() + root.root).inverse();
  return {std::move(x), root.residual};
}

// ---------------------------------------------------------------------------
// Box power barrier
// ---------------------------------------------------------------------------

BoxPowerReference::BoxPowerReference(int s, double u, int dim)
    : s_(s), u_(u), domain_(Domain::box(dim, u)) {
  if (s < 0) throw ConfigError("BoxPowerReference: s must be >= 0");
}

double BoxPowerReference::value(const Vector& x) const {
  if ((x.array() <= 0.0).any()) return kInf;
  const double inv_sum = x.cwiseInverse().sum();
  return std::pow(u_, 3) / (2.0 * (s_ + 1)) * std::pow(inv_sum, s_ + 1);
}

Vector BoxPowerReference::gradient(const Vector& x) const {
  if ((x.array() <= 0.0).any())
    throw DomainViolation("box barrier gradient needs x > 0");
  const double inv_sum = x.cwiseInverse().sum();
  const double coeff = -0.5 * std::pow(u_, 3) * std::pow(inv_sum, s_);
  return coeff * x.array().square().inverse().matrix();
}

Matrix BoxPowerReference::hessian(const Vector& x) const {
  if ((x.array() <= 0.0).any())
    throw DomainViolation("box barrier Hessian needs x > 0");
  const double inv_sum = x.cwiseInverse().sum();
  const double u3 = std::pow(u_, 3);
  const Vector inv_sq = x.array().square().inverse().matrix();
  Matrix h = (u3 * std::pow(inv_sum, s_)) *
             Matrix(x.array().cube().inverse().matrix().asDiagonal());
  if (s_ > 0)
    h += (0.5 * u3 * s_ * std::pow(inv_sum, s_ - 1)) * inv_sq * inv_sq.transpose();
  return h;
}

SubproblemSolve BoxPowerReference::solve_subproblem(const Vector& c) const {
  if (c.size() != domain_.dim())
    throw DimensionMismatch("subproblem: c has wrong dimension");
  const int n = domain_.dim();
  const Vector ch = (2.0 / std::pow(u_, 3)) * c;  // rescaled multiplier

  auto inv_sum_at = [&](double theta) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      if (ch[i] <= theta / (u_ * u_))
        total += 1.0 / u_;
      else
        total += std::sqrt(ch[i] / theta);
    }
    return total;
  };
  auto d = [&](double theta) {
    return theta - std::pow(inv_sum_at(theta), s_);
  };
  auto dd = [&](double theta) {
    // Piecewise-smooth derivative; clamped coordinates contribute nothing.
    double slope = 0.0;
    for (int i = 0; i < n; ++i)
      if (ch[i] > theta / (u_ * u_))
        slope += -0.5 * std::sqrt(ch[i]) * std::pow(theta, -1.5);
    return 1.0 - s_ * std::pow(inv_sum_at(theta), s_ - 1) * slope;
  };

  const double lo = std::pow(n / u_, s_);
  RootResult root{lo, std::fabs(d(lo)), 0, lo, lo};
  if (root.residual > kSubproblemTol)
    root = solve_monotone(d, Bracket::half_open(lo), kSubproblemTol, dd);

  const double theta = root.root;
  Vector x(n);
  for (int i = 0; i < n; ++i)
    x[i] = (ch[i] <= theta / (u_ * u_)) ? u_ : std::sqrt(theta / ch[i]);
  return {std::move(x), root.residual};
}

// ---------------------------------------------------------------------------
// Radial dual reduction
// ---------------------------------------------------------------------------

Vector radial_dual_subproblem(const Vector& c, const RadialDualProblem& problem) {
  auto inner = [&](double t) {
    const Vector x = problem.projector(c, t);
    return c.dot(x) + t * x.squaredNorm();
  };
  auto phi = [&](double t) { return -problem.g_star(t) + inner(t); };

  double a = problem.t_lo;
  double b = problem.t_hi;
  if (std::isinf(b)) {
    // Expand until the concave dual starts decreasing.
    double width = 1.0;
    double best = phi(a);
    b = a;
    int expansions = 0;
    for (;;) {
      const double t = a + width;
      const double v = phi(t);
      b = t;
      if (v < best) break;
      best = v;
      width *= 2.0;
      if (++expansions > 128)
        throw Error("radial_dual_subproblem: dual appears unbounded");
    }
  }

  const double golden = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  double f1 = phi(x1);
  double f2 = phi(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {  // maximizing
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = phi(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = phi(x1);
    }
  }
  return problem.projector(c, 0.5 * (a + b));
}

}  // namespace relsmooth
