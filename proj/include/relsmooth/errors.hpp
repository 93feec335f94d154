#pragma once

#include <stdexcept>
#include <string>

namespace relsmooth {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A point violates a domain membership or interiority requirement.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix dimensions are inconsistent.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid solver or problem configuration (e.g. mu >= L where L > mu is required).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// No sign change found while expanding a root bracket.
class BracketingFailure : public Error {
 public:
  using Error::Error;
};

/// An iterative routine hit its iteration cap; carries the last residual.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& msg, double residual)
      : Error(msg), last_residual(residual) {}
  double last_residual;
};

/// A matrix expected to be positive definite failed to factorize;
/// `pivot` is the zero-based index of the first nonpositive pivot.
class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& msg, int pivot_index)
      : Error(msg), pivot(pivot_index) {}
  int pivot;
};

/// Requested an operation the object cannot provide (e.g. a subproblem
/// solve on a reference with no tractable subproblem).
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Problem-spec file failed to parse; carries a 1-based line/column position.
class SpecParseError : public Error {
 public:
  SpecParseError(const std::string& msg, int line_no, int col_no)
      : Error(msg), line(line_no), col(col_no) {}
  int line;
  int col;
};

}  // namespace relsmooth
