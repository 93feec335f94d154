#include "relsmooth/sampling.hpp"

#include <cmath>

#include "relsmooth/errors.hpp"

namespace relsmooth {

Matrix random_normal_matrix(int rows, int cols, Prng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

Vector random_normal_vector(int dim, Prng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  return v;
}

InteriorSampler::InteriorSampler(Domain domain, std::uint64_t seed,
                                 double truncation)
    : domain_(domain), rng_(seed), truncation_(truncation) {
  if (!(truncation > 0.0) || truncation * domain.dim() >= 0.5)
    throw ConfigError("InteriorSampler: truncation out of range");
}

Vector InteriorSampler::next() {
  const int n = domain_.dim();
  Vector x(n);
  switch (domain_.kind()) {
    case Domain::Kind::AllSpace:
      for (int i = 0; i < n; ++i) x(i) = rng_.normal();
      return x;
    case Domain::Kind::UnitSimplex: {
      for (int i = 0; i < n; ++i) {
        double u = rng_.uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        x(i) = -std::log(u);
      }
      x /= x.sum();
      // Mix toward the uniform point: keeps sum(x) = 1 and x_i >= truncation.
      return (1.0 - n * truncation_) * x +
             Vector::Constant(n, truncation_);
    }
    case Domain::Kind::Box: {
      const double u = domain_.box_upper();
      for (int i = 0; i < n; ++i)
        x(i) = u * rng_.uniform(truncation_, 1.0 - truncation_);
      return x;
    }
    case Domain::Kind::PositiveOrthant: {
      for (int i = 0; i < n; ++i) {
        double v = rng_.uniform();
        if (v <= 0.0) v = 0x1.0p-53;
        x(i) = -std::log(v) + truncation_;
      }
      return x;
    }
  }
  throw Error("InteriorSampler: unreachable");
}

}  // namespace relsmooth
