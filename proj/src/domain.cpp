#include "relsmooth/domain.hpp"

#include <cmath>

#include "relsmooth/errors.hpp"

namespace relsmooth {

namespace {
constexpr double kSimplexSumTol = 1e-9;
}

Domain::Domain(Kind kind, int dim, double u) : kind_(kind), dim_(dim), u_(u) {
  if (dim < 1) throw ConfigError("Domain: dim must be >= 1");
  if (kind == Kind::UnitSimplex && dim < 2)
    throw ConfigError("Domain: unit simplex needs dim >= 2");
}

Domain Domain::box(int dim, double u) {
  if (!(u > 0.0)) throw ConfigError("Domain: box upper bound must be positive");
  return Domain(Kind::Box, dim, u);
}

bool Domain::contains(const Vector& x) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  switch (kind_) {
    case Kind::AllSpace:
      return true;
    case Kind::UnitSimplex:
      return (x.array() >= 0.0).all() && std::fabs(x.sum() - 1.0) <= kSimplexSumTol;
    case Kind::Box:
      return (x.array() > 0.0).all() && (x.array() <= u_).all();
    case Kind::PositiveOrthant:
      return (x.array() >= 0.0).all();
  }
  return false;
}

bool Domain::interior_contains(const Vector& x) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  switch (kind_) {
    case Kind::AllSpace:
      return true;
    case Kind::UnitSimplex:
      return (x.array() > 0.0).all() && std::fabs(x.sum() - 1.0) <= kSimplexSumTol;
    case Kind::Box:
      return (x.array() > 0.0).all() && (x.array() < u_).all();
    case Kind::PositiveOrthant:
      return (x.array() > 0.0).all();
  }
  return false;
}

std::string Domain::describe() const {
  switch (kind_) {
    case Kind::AllSpace:
      return "R^" + std::to_string(dim_);
    case Kind::UnitSimplex:
      return "simplex(" + std::to_string(dim_) + ")";
    case Kind::Box:
      return "box(0," + std::to_string(u_) + "]^" + std::to_string(dim_);
    case Kind::PositiveOrthant:
      return "orthant(" + std::to_string(dim_) + ")";
  }
  return "?";
}

}  // namespace relsmooth
