#include "relsmooth/oracles.hpp"

#include <cmath>
#include <limits>

namespace relsmooth {

double bregman_distance(const Reference& ref, const Vector& y, const Vector& x) {
  if (x.size() != ref.domain().dim() || y.size() != ref.domain().dim())
    throw DimensionMismatch("bregman_distance: size mismatch with domain");
  if (!ref.differentiable_at(x))
    throw DomainViolation("bregman_distance: x is not in the domain interior");

  const double hy = ref.value(y);
  if (std::isinf(hy)) return std::numeric_limits<double>::infinity();
  const double hx = ref.value(x);
  const double cross = ref.gradient(x).dot(y - x);
  const double d = hy - hx - cross;
  const double slack =
      1e-12 * (1.0 + std::fabs(hy) + std::fabs(hx) + std::fabs(cross));
  if (d < -slack)
    throw Error("bregman_distance: negative value " + std::to_string(d) +
                " for a convex reference");
  return d;
}

namespace {

class WeightedSumObjective : public Objective {
 public:
  WeightedSumObjective(std::vector<std::pair<double, ObjectivePtr>> terms,
                       Domain domain)
      : terms_(std::move(terms)), domain_(domain) {}
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override {
    double v = 0.0;
    for (const auto& [w, f] : terms_) v += w * f->value(x);
    return v;
  }
  Vector gradient(const Vector& x) const override {
    Vector g = Vector::Zero(domain_.dim());
    for (const auto& [w, f] : terms_) g += w * f->gradient(x);
    return g;
  }
  bool has_hessian() const override {
    for (const auto& [w, f] : terms_)
      if (!f->has_hessian()) return false;
    return true;
  }
  Matrix hessian(const Vector& x) const override {
    Matrix h = Matrix::Zero(domain_.dim(), domain_.dim());
    for (const auto& [w, f] : terms_) h += w * f->hessian(x);
    return h;
  }

 private:
  std::vector<std::pair<double, ObjectivePtr>> terms_;
  Domain domain_;
};

class WeightedSumReference : public Reference {
 public:
  WeightedSumReference(std::vector<std::pair<double, ReferencePtr>> terms,
                       Domain domain)
      : terms_(std::move(terms)), domain_(domain) {}
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override {
    double v = 0.0;
    for (const auto& [w, h] : terms_) v += w * h->value(x);
    return v;
  }
  Vector gradient(const Vector& x) const override {
    Vector g = Vector::Zero(domain_.dim());
    for (const auto& [w, h] : terms_) g += w * h->gradient(x);
    return g;
  }
  bool has_hessian() const override {
    for (const auto& [w, h] : terms_)
      if (!h->has_hessian()) return false;
    return true;
  }
  Matrix hessian(const Vector& x) const override {
    Matrix m = Matrix::Zero(domain_.dim(), domain_.dim());
    for (const auto& [w, h] : terms_) m += w * h->hessian(x);
    return m;
  }
  SubproblemSolve solve_subproblem(const Vector& c) const override {
    // A single scaled term still has a tractable subproblem:
    // argmin <c,x> + w*h(x) = argmin <c/w, x> + h(x).
    const std::pair<double, ReferencePtr>* only = nullptr;
    for (const auto& term : terms_) {
      if (term.first != 0.0) {
        if (only) throw UnsupportedOperation(
            "combined reference has no closed-form subproblem");
        only = &term;
      }
    }
    if (!only) throw UnsupportedOperation("all-zero combined reference");
    return only->second->solve_subproblem(c / only->first);
  }
  bool differentiable_at(const Vector& x) const override {
    for (const auto& [w, h] : terms_)
      if (w != 0.0 && !h->differentiable_at(x)) return false;
    return true;
  }

 private:
  std::vector<std::pair<double, ReferencePtr>> terms_;
  Domain domain_;
};

class AffineObjective : public Objective {
 public:
  AffineObjective(ObjectivePtr base, Matrix a, Domain domain)
      : base_(std::move(base)), a_(std::move(a)), domain_(domain) {}
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override { return base_->value(a_ * x); }
  Vector gradient(const Vector& x) const override {
    return a_.transpose() * base_->gradient(a_ * x);
  }
  bool has_hessian() const override { return base_->has_hessian(); }
  Matrix hessian(const Vector& x) const override {
    return a_.transpose() * base_->hessian(a_ * x) * a_;
  }

 private:
  ObjectivePtr base_;
  Matrix a_;
  Domain domain_;
};

class AffineReference : public Reference {
 public:
  AffineReference(ReferencePtr base, Matrix a, Domain domain)
      : base_(std::move(base)), a_(std::move(a)), domain_(domain) {}
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override { return base_->value(a_ * x); }
  Vector gradient(const Vector& x) const override {
    return a_.transpose() * base_->gradient(a_ * x);
  }
  bool has_hessian() const override { return base_->has_hessian(); }
  Matrix hessian(const Vector& x) const override {
    return a_.transpose() * base_->hessian(a_ * x) * a_;
  }
  SubproblemSolve solve_subproblem(const Vector& c) const override {
    if (a_.rows() == a_.cols() && a_.isIdentity(0.0))
      return base_->solve_subproblem(c);
    throw UnsupportedOperation(
        "affine-composed reference has no tractable subproblem");
  }
  bool differentiable_at(const Vector& x) const override {
    return base_->differentiable_at(a_ * x);
  }

 private:
  ReferencePtr base_;
  Matrix a_;
  Domain domain_;
};

}  // namespace

RelSmoothPair combine_certificates(
    const std::vector<std::pair<RelSmoothPair, double>>& weighted_pairs) {
  if (weighted_pairs.empty())
    throw ConfigError("combine_certificates: no pairs given");
  const Domain& domain = weighted_pairs.front().first.domain();
  double mu = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, ObjectivePtr>> objective_terms;
  std::vector<std::pair<double, ReferencePtr>> reference_terms;
  for (const auto& [pair, alpha] : weighted_pairs) {
    if (!(alpha >= 0.0))
      throw ConfigError("combine_certificates: weights must be nonnegative");
    if (pair.domain() != domain)
      throw ConfigError("combine_certificates: mismatched domains");
    objective_terms.emplace_back(alpha, pair.objective);
    reference_terms.emplace_back(alpha * pair.L, pair.reference);
    if (alpha > 0.0) mu = std::min(mu, pair.mu / pair.L);
  }
  if (std::isinf(mu))
    throw ConfigError("combine_certificates: all weights are zero");
  auto f = std::make_shared<WeightedSumObjective>(std::move(objective_terms), domain);
  auto h = std::make_shared<WeightedSumReference>(std::move(reference_terms), domain);
  return RelSmoothPair(std::move(f), std::move(h), 1.0, mu);
}

RelSmoothPair affine_precompose(const RelSmoothPair& pair, const Matrix& A) {
  if (A.rows() != pair.domain().dim())
    throw DimensionMismatch("affine_precompose: A has " +
                            std::to_string(A.rows()) + " rows, domain dim is " +
                            std::to_string(pair.domain().dim()));
  Domain new_domain = pair.domain();
  const bool identity = A.rows() == A.cols() && A.isIdentity(0.0);
  if (!identity) {
    if (pair.domain().kind() != Domain::Kind::AllSpace)
      throw UnsupportedOperation(
          "affine_precompose: only all-space domains support general A");
    new_domain = Domain::all_space(static_cast<int>(A.cols()));
  }
  auto f = std::make_shared<AffineObjective>(pair.objective, A, new_domain);
  auto h = std::make_shared<AffineReference>(pair.reference, A, new_domain);
  return RelSmoothPair(std::move(f), std::move(h), pair.L, pair.mu);
}

}  // namespace relsmooth
