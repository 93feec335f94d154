#pragma once

#include "relsmooth/domain.hpp"
#include "relsmooth/prng.hpp"
#include "relsmooth/types.hpp"

namespace relsmooth {

/// Matrix with iid standard-normal entries, filled row by row.
Matrix random_normal_matrix(int rows, int cols, Prng& rng);

Vector random_normal_vector(int dim, Prng& rng);

/// Deterministic stream of interior points of a domain.
///   all-space:  standard normals
///   simplex:    normalized exponentials of uniforms, mixed with the uniform
///               point so every coordinate stays >= truncation
///   box:        coordinates uniform on [trunc*u, (1-trunc)*u]
///   orthant:    exponentials shifted by the truncation
/// Hessians of the barrier references blow up at the boundary, so samples
/// keep the stated margin from it.
class InteriorSampler {
 public:
  InteriorSampler(Domain domain, std::uint64_t seed, double truncation = 1e-6);

  Vector next();
  const Domain& domain() const { return domain_; }

 private:
  Domain domain_;
  Prng rng_;
  double truncation_;
};

}  // namespace relsmooth
