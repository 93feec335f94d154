#include "relsmooth/objectives.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace relsmooth {

namespace {

constexpr double kRankTol = 1e-10;

void check_rank_m(const Matrix& h, const char* who) {
  const auto m = h.rows();
  const auto n = h.cols();
  if (m < 1 || n < m + 1)
    throw ConfigError(std::string(who) + ": need m >= 1 and n >= m + 1");
  Eigen::JacobiSVD<Matrix> svd(h);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(sv.size() - 1) > kRankTol * sv(0)))
    throw ConfigError(std::string(who) + ": design matrix is rank-deficient");
}

// Lower-triangular Cholesky that reports the first nonpositive pivot.
Matrix cholesky_or_throw(const Matrix& m, const char* who) {
  const auto dim = m.rows();
  Matrix l = Matrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    double diag = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0))
      throw SingularMatrix(std::string(who) + ": nonpositive pivot " +
                               std::to_string(diag) + " at index " +
                               std::to_string(j),
                           static_cast<int>(j));
    l(j, j) = std::sqrt(diag);
    for (Eigen::Index i = j + 1; i < dim; ++i) {
      double v = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

double log_det_from_cholesky(const Matrix& l) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

void require_positive(const Vector& x, const char* who) {
  if ((x.array() <= 0.0).any())
    throw DomainViolation(std::string(who) + ": needs x > 0");
}

}  // namespace

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// D-optimal design
// ---------------------------------------------------------------------------

DOptimalDesign::DOptimalDesign(Matrix h)
    : h_(std::move(h)), domain_(Domain::unit_simplex(static_cast<int>(h_.cols()))) {
  check_rank_m(h_, "DOptimalDesign");
}

double DOptimalDesign::value(const Vector& x) const {
  const Matrix m = h_ * x.asDiagonal() * h_.transpose();
  return -log_det_from_cholesky(cholesky_or_throw(m, "DOptimalDesign"));
}

Vector DOptimalDesign::gradient(const Vector& x) const {
  const Matrix m = h_ * x.asDiagonal() * h_.transpose();
  const Matrix l = cholesky_or_throw(m, "DOptimalDesign");
  const Matrix v = l.triangularView<Eigen::Lower>().solve(h_);
  return -v.colwise().squaredNorm().transpose();
}

Matrix DOptimalDesign::hessian(const Vector& x) const {
  const Matrix m = h_ * x.asDiagonal() * h_.transpose();
  const Matrix l = cholesky_or_throw(m, "DOptimalDesign");
  const Matrix v = l.triangularView<Eigen::Lower>().solve(h_);
  const Matrix b = v.transpose() * v;  // H^T (HXH^T)^{-1} H
  return b.cwiseProduct(b);
}

// ---------------------------------------------------------------------------
// Generalized volumetric objective
// ---------------------------------------------------------------------------

VolumetricObjective::VolumetricObjective(Matrix h, int p)
    : h_(std::move(h)),
      p_(p),
      domain_(Domain::unit_simplex(static_cast<int>(h_.cols()))) {
  check_rank_m(h_, "VolumetricObjective");
  if (p < 1) throw ConfigError("VolumetricObjective: p must be a positive integer");
}

double VolumetricObjective::value(const Vector& x) const {
  require_positive(x, "VolumetricObjective");
  const Vector w = x.array().pow(-p_);
  const Matrix m = h_ * w.asDiagonal() * h_.transpose();
  return log_det_from_cholesky(cholesky_or_throw(m, "VolumetricObjective"));
}

Vector VolumetricObjective::gradient(const Vector& x) const {
  require_positive(x, "VolumetricObjective");
  const Vector w = x.array().pow(-p_);
  const Matrix m = h_ * w.asDiagonal() * h_.transpose();
  const Matrix l = cholesky_or_throw(m, "VolumetricObjective");
  const Matrix v = l.triangularView<Eigen::Lower>().solve(h_);
  const Vector diag_b = v.colwise().squaredNorm().transpose();
  return (-static_cast<double>(p_)) *
         (x.array().pow(-p_ - 1) * diag_b.array()).matrix();
}

Matrix VolumetricObjective::hessian(const Vector& x) const {
  require_positive(x, "VolumetricObjective");
  const Vector w = x.array().pow(-p_);
  const Matrix m = h_ * w.asDiagonal() * h_.transpose();
  const Matrix l = cholesky_or_throw(m, "VolumetricObjective");
  const Matrix v = l.triangularView<Eigen::Lower>().solve(h_);
  const Matrix b = v.transpose() * v;  // H^T (H X^{-p} H^T)^{-1} H
  const double p = p_;
  const Vector xp1 = x.array().pow(-p_ - 1);
  Matrix hess = (-p * p) * (xp1 * xp1.transpose()).cwiseProduct(b.cwiseProduct(b));
  hess.diagonal() +=
      (p * (p + 1.0)) * (x.array().pow(-p_ - 2) * b.diagonal().array()).matrix();
  return hess;
}

// ---------------------------------------------------------------------------
// Quartic composite objective
// ---------------------------------------------------------------------------

QuarticObjective::QuarticObjective(Matrix a, Vector b, Matrix c, Vector d,
                                   std::optional<Matrix> e)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      d_(std::move(d)),
      e_(std::move(e)),
      domain_(Domain::all_space(static_cast<int>(a_.cols()))) {
  if (a_.rows() != b_.size() || c_.rows() != d_.size() || a_.cols() != c_.cols())
    throw DimensionMismatch("QuarticObjective: inconsistent shapes");
  if (e_ && e_->cols() != a_.cols())
    throw DimensionMismatch("QuarticObjective: E has wrong column count");
}

double QuarticObjective::value(const Vector& x) const {
  const Vector r4 = a_ * x - b_;
  const Vector r2 = c_ * x - d_;
  double v = 0.25 * r4.array().pow(4).sum() + 0.5 * r2.squaredNorm();
  if (e_) {
    const double q = (*e_ * x).squaredNorm();
    v += 0.25 * q * q;
  }
  return v;
}

Vector QuarticObjective::gradient(const Vector& x) const {
  const Vector r4 = a_ * x - b_;
  const Vector r2 = c_ * x - d_;
  Vector g = a_.transpose() * r4.array().cube().matrix() + c_.transpose() * r2;
  if (e_) {
    const Vector ex = *e_ * x;
    g += ex.squaredNorm() * (e_->transpose() * ex);
  }
  return g;
}

Matrix QuarticObjective::hessian(const Vector& x) const {
  const Vector r4 = a_ * x - b_;
  Matrix h = 3.0 * a_.transpose() * r4.array().square().matrix().asDiagonal() * a_ +
             c_.transpose() * c_;
  if (e_) {
    const Vector ex = *e_ * x;
    const Vector ete_x = e_->transpose() * ex;
    h += ex.squaredNorm() * (e_->transpose() * *e_) +
         2.0 * ete_x * ete_x.transpose();
  }
  return h;
}

std::vector<double> QuarticObjective::hessian_growth_coeffs() const {
  const double na = operator_norm(a_);
  const double nb = b_.norm();
  const double nc = operator_norm(c_);
  double a2 = 3.0 * std::pow(na, 4);
  if (e_) a2 += 3.0 * std::pow(operator_norm(*e_), 4);
  return {3.0 * na * na * nb * nb + nc * nc, 6.0 * std::pow(na, 3) * nb, a2};
}

double QuarticObjective::auto_smoothness() const {
  return smoothness_from_polynomial_rn(PolynomialBound{hessian_growth_coeffs()});
}

double QuarticObjective::auto_strong_convexity() const {
  if (!e_) return 0.0;
  return strong_convexity_for_quartic(*e_, c_);
}

// ---------------------------------------------------------------------------
// Univariate polynomial objective
// ---------------------------------------------------------------------------

Polynomial1D::Polynomial1D(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)), domain_(Domain::all_space(1)) {
  if (coeffs_.empty()) throw ConfigError("Polynomial1D: empty coefficient list");
}

double Polynomial1D::eval(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

double Polynomial1D::deriv(double x) const {
  double v = 0.0;
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 1; --i)
    v = v * x + i * coeffs_[i];
  return v;
}

double Polynomial1D::second_deriv(double x) const {
  double v = 0.0;
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 2; --i)
    v = v * x + i * (i - 1) * coeffs_[i];
  return v;
}

double Polynomial1D::value(const Vector& x) const { return eval(x(0)); }

Vector Polynomial1D::gradient(const Vector& x) const {
  Vector g(1);
  g(0) = deriv(x(0));
  return g;
}

Matrix Polynomial1D::hessian(const Vector& x) const {
  Matrix h(1, 1);
  h(0, 0) = second_deriv(x(0));
  return h;
}

double Polynomial1D::auto_smoothness(double center) const {
  // Taylor-shift the coefficients to the center, then sum the absolute
  // coefficients of the second derivative.
  const int deg = static_cast<int>(coeffs_.size()) - 1;
  std::vector<double> shifted(coeffs_.size(), 0.0);
  for (int k = 0; k <= deg; ++k) {
    double binom = 1.0;  // C(i, k) built incrementally over i
    double pw = 1.0;
    for (int i = k; i <= deg; ++i) {
      shifted[k] += coeffs_[i] * binom * pw;
      binom = binom * (i + 1) / (i + 1 - k);
      pw *= center;
    }
  }
  double total = 0.0;
  for (int k = 2; k <= deg; ++k)
    total += std::fabs(shifted[k] * k * (k - 1));
  return total;
}

// ---------------------------------------------------------------------------
// Smoothness-constant calculus
// ---------------------------------------------------------------------------

double PolynomialBound::eval(double alpha) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * alpha + *it;
  return v;
}

double smoothness_from_polynomial_rn(const PolynomialBound& poly) {
  double total = 0.0;
  for (double a : poly.coeffs) total += std::fabs(a);
  return total;
}

double smoothness_from_polynomial_box(const PolynomialBound& poly, double u, int n) {
  if (!(u > 0.0) || n < 1)
    throw ConfigError("smoothness_from_polynomial_box: need u > 0 and n >= 1");
  const int s = poly.degree();
  double total = 0.0;
  for (int i = 0; i <= s; ++i)
    total += std::fabs(poly.coeffs[i]) * std::pow(u / n, i - s);
  return total;
}

double strong_convexity_for_quartic(const Matrix& e, const Matrix& c) {
  auto min_singular = [](const Matrix& m) -> double {
    if (m.rows() < m.cols()) return 0.0;  // cannot have full column rank
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    return smallest > kRankTol * sv(0) ? smallest : 0.0;
  };
  const double se = min_singular(e);
  const double sc = min_singular(c);
  return std::min(std::pow(se, 4) / 3.0, sc * sc);
}

}  // namespace relsmooth
