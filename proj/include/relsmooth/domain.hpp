#pragma once

#include <string>

#include "relsmooth/types.hpp"

namespace relsmooth {

/// Feasible set Q.  Four shapes cover everything in this library:
/// all of R^n, the unit simplex, the half-open box (0, u]^n, and the
/// positive orthant.
class Domain {
 public:
  enum class Kind { AllSpace, UnitSimplex, Box, PositiveOrthant };

  static Domain all_space(int dim) { return Domain(Kind::AllSpace, dim, 0.0); }
  static Domain unit_simplex(int dim) { return Domain(Kind::UnitSimplex, dim, 0.0); }
  static Domain box(int dim, double u);
  static Domain positive_orthant(int dim) {
    return Domain(Kind::PositiveOrthant, dim, 0.0);
  }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double box_upper() const { return u_; }

  /// Membership in Q.  The simplex equality constraint is tested with an
  /// absolute tolerance of 1e-9 on |sum(x) - 1|; all sign constraints are
  /// exact.  The box is half-open: 0 < x_i <= u.
  bool contains(const Vector& x) const;

  /// Strict-inequality interior membership (margin zero): x > 0 for the
  /// simplex and orthant, 0 < x < u for the box.
  bool interior_contains(const Vector& x) const;

  bool operator==(const Domain& other) const {
    return kind_ == other.kind_ && dim_ == other.dim_ && u_ == other.u_;
  }
  bool operator!=(const Domain& other) const { return !(*this == other); }

  std::string describe() const;

 private:
  Domain(Kind kind, int dim, double u);

  Kind kind_;
  int dim_;
  double u_;
};

}  // namespace relsmooth
