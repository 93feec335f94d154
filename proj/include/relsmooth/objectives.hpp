#pragma once

#include <optional>
#include <vector>

#include "relsmooth/oracles.hpp"

namespace relsmooth {

/// Largest singular value.
double operator_norm(const Matrix& m);

/// f(x) = -ln det(H X H^T) over the unit simplex, X = Diag(x).
/// H must be m x n with rank m and n >= m + 1 (checked at construction
/// against singular values below 1e-10 * ||H||).  One Cholesky
/// factorization of the m x m Gram matrix serves both value and gradient.
class DOptimalDesign : public Objective {
 public:
  explicit DOptimalDesign(Matrix h);
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override;

  const Matrix& design_matrix() const { return h_; }
  int rows() const { return static_cast<int>(h_.rows()); }

 private:
  Matrix h_;
  Domain domain_;
};

/// f_p(x) = ln det(H X^(-p) H^T) over the unit simplex, integer p >= 1.
class VolumetricObjective : public Objective {
 public:
  VolumetricObjective(Matrix h, int p);
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override;

  int power() const { return p_; }
  int rows() const { return static_cast<int>(h_.rows()); }

 private:
  Matrix h_;
  int p_;
  Domain domain_;
};

/// f(x) = 1/4 ||Ax - b||_4^4 + 1/2 ||Cx - d||_2^2 (+ 1/4 ||Ex||_2^4 when E
/// is present) on R^n.  The Hessian norm grows quadratically in ||x||, so
/// the natural reference is the power-norm family with r = 2.
class QuarticObjective : public Objective {
 public:
  QuarticObjective(Matrix a, Vector b, Matrix c, Vector d,
                   std::optional<Matrix> e = std::nullopt);
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override;

  /// Coefficients of the quadratic bounding ||hessian(x)|| by a polynomial
  /// in ||x||_2: a0 + a1 a + a2 a^2.
  std::vector<double> hessian_growth_coeffs() const;

  /// Smoothness constant from summing |a_i| of the growth polynomial.
  double auto_smoothness() const;

  /// min{sigma_min(E)^4 / 3, sigma_min(C)^2}, or 0 without E.
  double auto_strong_convexity() const;

 private:
  Matrix a_;
  Vector b_;
  Matrix c_;
  Vector d_;
  std::optional<Matrix> e_;
  Domain domain_;
};

/// Univariate polynomial objective sum_i coeffs[i] x^i on R (must be convex
/// on the region explored; convexity is not verified at construction).
class Polynomial1D : public Objective {
 public:
  explicit Polynomial1D(std::vector<double> coeffs);
  const Domain& domain() const override { return domain_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  bool has_hessian() const override { return true; }
  Matrix hessian(const Vector& x) const override;

  double eval(double x) const;
  double deriv(double x) const;
  double second_deriv(double x) const;
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Conservative smoothness constant relative to the power-norm reference
  /// of degree deg-2 centered at `center`: recenters the polynomial and sums
  /// the absolute second-derivative coefficients.
  double auto_smoothness(double center) const;

 private:
  std::vector<double> coeffs_;
  Domain domain_;
};

/// Polynomial p_r(a) = sum_i coeffs[i] a^i bounding a Hessian norm.
struct PolynomialBound {
  std::vector<double> coeffs;  // degree = coeffs.size() - 1

  double eval(double alpha) const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// L = sum |a_i|, valid for pairing with the power-norm reference of the
/// same degree: p_r(a) <= L (1 + a^r) for a >= 0.
double smoothness_from_polynomial_rn(const PolynomialBound& poly);

/// L = sum |a_i| (u/n)^(i-s), valid for the box-power reference of degree s:
/// q_s(a) <= L a^s for a >= n/u.
double smoothness_from_polynomial_box(const PolynomialBound& poly, double u, int n);

/// mu = min{sigma_min(E)^4 / 3, sigma_min(C)^2}; 0 when either matrix is
/// column-rank-deficient (singular values below 1e-10 * sigma_max).
double strong_convexity_for_quartic(const Matrix& e, const Matrix& c);

}  // namespace relsmooth
