#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "relsmooth/domain.hpp"
#include "relsmooth/errors.hpp"
#include "relsmooth/types.hpp"

namespace relsmooth {

/// Differentiable convex objective f on the interior of its domain.
/// Evaluations are pure; instances are immutable after construction and may
/// be shared across concurrent solver runs.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual const Domain& domain() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual bool has_hessian() const { return false; }
  virtual Matrix hessian(const Vector& x) const {
    (void)x;
    throw UnsupportedOperation("objective exposes no Hessian");
  }
};

/// Solution of the linearized subproblem argmin_{x in Q} <c,x> + h(x),
/// together with the family-specific stationarity/root residual.
struct SubproblemSolve {
  Vector x;
  double residual;
};

/// Convex reference function h defining the Bregman geometry.  Beyond value
/// and gradient it must solve the linearized subproblem over its domain.
class Reference {
 public:
  virtual ~Reference() = default;
  virtual const Domain& domain() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual bool has_hessian() const { return false; }
  virtual Matrix hessian(const Vector& x) const {
    (void)x;
    throw UnsupportedOperation("reference exposes no Hessian");
  }

  /// argmin_{x in Q} <c,x> + h(x) with diagnostics.
  virtual SubproblemSolve solve_subproblem(const Vector& c) const = 0;

  Vector subproblem(const Vector& c) const { return solve_subproblem(c).x; }

  /// The h-center argmin_{x in Q} h(x).  Default: subproblem with c = 0.
  virtual Vector center() const {
    return subproblem(Vector::Zero(domain().dim()));
  }

  /// True where h is differentiable; wider than the topological domain
  /// interior for the simplex and box barriers (any x > 0 works there).
  virtual bool differentiable_at(const Vector& x) const {
    return domain().interior_contains(x);
  }
};

using ObjectivePtr = std::shared_ptr<const Objective>;
using ReferencePtr = std::shared_ptr<const Reference>;

/// Reference shifted by a constant: value is h(x) - offset, everything else
/// (gradients, Bregman distances, subproblems) is unchanged.
class OffsetReference : public Reference {
 public:
  OffsetReference(ReferencePtr base, double offset)
      : base_(std::move(base)), offset_(offset) {}
  const Domain& domain() const override { return base_->domain(); }
  double value(const Vector& x) const override { return base_->value(x) - offset_; }
  Vector gradient(const Vector& x) const override { return base_->gradient(x); }
  bool has_hessian() const override { return base_->has_hessian(); }
  Matrix hessian(const Vector& x) const override { return base_->hessian(x); }
  SubproblemSolve solve_subproblem(const Vector& c) const override {
    return base_->solve_subproblem(c);
  }
  Vector center() const override { return base_->center(); }
  bool differentiable_at(const Vector& x) const override {
    return base_->differentiable_at(x);
  }

 private:
  ReferencePtr base_;
  double offset_;
};

/// Returns h shifted so that the shifted value vanishes at x0.
inline ReferencePtr normalize_at(ReferencePtr ref, const Vector& x0) {
  const double offset = ref->value(x0);
  return std::make_shared<OffsetReference>(std::move(ref), offset);
}

/// Objective/reference bundle with certified constants: f is L-smooth and
/// mu-strongly convex relative to h on the shared domain.
struct RelSmoothPair {
  ObjectivePtr objective;
  ReferencePtr reference;
  double L;
  double mu;

  RelSmoothPair(ObjectivePtr f, ReferencePtr h, double L_, double mu_)
      : objective(std::move(f)), reference(std::move(h)), L(L_), mu(mu_) {
    if (!objective || !reference) throw ConfigError("RelSmoothPair: null oracle");
    if (!(L > 0.0)) throw ConfigError("RelSmoothPair: L must be positive");
    if (!(mu >= 0.0 && mu <= L))
      throw ConfigError("RelSmoothPair: need 0 <= mu <= L");
    if (objective->domain() != reference->domain())
      throw ConfigError("RelSmoothPair: oracles disagree on the domain");
  }

  const Domain& domain() const { return objective->domain(); }
};

/// Bregman distance D_h(y, x) = h(y) - h(x) - <grad h(x), y - x>.
/// Requires h differentiable at x; y must lie in the domain (h(y) may be
/// +infinity on the boundary).  Nonnegative for convex h up to a 1e-12
/// rounding slack, which is enforced.
double bregman_distance(const Reference& ref, const Vector& y, const Vector& x);

/// Proposition-2 style combination: given pairs (f_i <= L_i h_i, mu_i) and
/// weights alpha_i >= 0, forms f = sum alpha_i f_i, h = sum alpha_i L_i h_i,
/// certified with L = 1 and mu = min over contributing pairs of mu_i / L_i.
RelSmoothPair combine_certificates(
    const std::vector<std::pair<RelSmoothPair, double>>& weighted_pairs);

/// Affine pre-composition x -> (f(Ax), h(Ax)) with unchanged L and mu.
/// Supported for all-space domains (or identity A); the composed reference
/// has no tractable subproblem unless A is the identity.
RelSmoothPair affine_precompose(const RelSmoothPair& pair, const Matrix& A);

}  // namespace relsmooth
