#pragma once

#include <functional>

#include "relsmooth/oracles.hpp"
#include "relsmooth/rootfind.hpp"

namespace relsmooth {

/// h(x) = 1/2 ||x||^2 on R^n.  Subproblem solution is x = -c.
class EuclideanReference : public Reference {
 public:
  explicit EuclideanReference(int dim) : domain_(Domain::all_space(dim)) {}
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override { return 0.5 * x.squaredNorm(); }
  Vector gradient(const Vector& x) const override { return x; }
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override {
    return Matrix::Identity(x.size(), x.size());
  }
  SubproblemSolve solve_subproblem(const Vector& c) const override {
    return {-c, 0.0};
  }
  Vector center() const override { return Vector::Zero(domain_.dim()); }

 private:
  Domain domain_;
};

/// h(x) = 1/(r+2) ||x - xc||^(r+2) + 1/2 ||x - xc||^2 on R^n, r >= 1.
/// The subproblem reduces to the scalar root of 1 - t - ||c||^r t^(r+1);
/// closed forms for r in {1,2,3}, safeguarded Newton otherwise.
class PowerNormReference : public Reference {
 public:
  PowerNormReference(int r, int dim);
  PowerNormReference(int r, Vector center);

  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override;
  SubproblemSolve solve_subproblem(const Vector& c) const override;
  Vector center() const override { return center_; }

  int power() const { return r_; }

 private:
  int r_;
  Vector center_;
  Domain domain_;
};

/// Scalar step size for the power-norm subproblem: the unique root of
/// 1 - t - (||c||^r) t^(r+1) = 0 in (0, 1].  Exposed for testing the
/// closed forms against the generic root-finder.
double power_norm_step(double c_norm, int r, bool closed_form);

/// h(x) = -sum_j ln(x_j) over the unit simplex.  The subproblem solves
/// sum_j 1/(c_j + theta) = 1 for theta in (-min_j c_j, inf).
class SimplexLogBarrier : public Reference {
 public:
  explicit SimplexLogBarrier(int dim) : domain_(Domain::unit_simplex(dim)) {}
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override;
  SubproblemSolve solve_subproblem(const Vector& c) const override;
  Vector center() const override {
    return Vector::Constant(domain_.dim(), 1.0 / domain_.dim());
  }
  bool differentiable_at(const Vector& x) const override {
    return x.size() == domain_.dim() && (x.array() > 0.0).all();
  }

 private:
  Domain domain_;
};

/// h(x) = u^3 / (2(s+1)) (sum_i 1/x_i)^(s+1) on the half-open box (0, u]^n.
/// The subproblem takes the raw c of argmin <c,x> + h(x) and rescales by
/// 2/u^3 internally; coordinates clamp to u exactly where the multiplier
/// condition c_i <= theta/u^2 holds.
class BoxPowerReference : public Reference {
 public:
  BoxPowerReference(int s, double u, int dim);
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override;
  SubproblemSolve solve_subproblem(const Vector& c) const override;
  Vector center() const override {
    return Vector::Constant(domain_.dim(), domain_.box_upper());
  }
  bool differentiable_at(const Vector& x) const override {
    return x.size() == domain_.dim() && (x.array() > 0.0).all();
  }

 private:
  int s_;
  double u_;
  Domain domain_;
};

/// Ingredients for the radial-dual reduction of argmin_{x in Q} <c,x> + g(||x||^2):
/// the closed-form conjugate g* on its domain [t_lo, t_hi] (t_hi may be
/// +infinity) and an exact Euclidean-regularized linear minimizer over Q.
/// Strong duality (min/sup exchange) is the caller's responsibility.
struct RadialDualProblem {
  ScalarFn g_star;
  double t_lo;
  double t_hi;
  std::function<Vector(const Vector& c, double t)> projector;
};

/// Maximizes t -> -g*(t) + min_{x in Q} { <c,x> + t||x||^2 } by golden-section
/// search to interval width 1e-10 and returns the inner minimizer at the
/// optimal t.  Throws if the search bracket diverges (unbounded dual).
Vector radial_dual_subproblem(const Vector& c, const RadialDualProblem& problem);

}  // namespace relsmooth
