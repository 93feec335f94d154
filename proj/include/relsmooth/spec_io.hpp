#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relsmooth/objectives.hpp"
#include "relsmooth/oracles.hpp"

namespace relsmooth {

struct ReferenceSpec {
  std::string type = "euclidean";  // power-norm | log-barrier | box-power | euclidean
  int r = 2;                       // power-norm degree
  int s = 0;                       // box-power degree
  double u = 1.0;                  // box upper bound
  std::optional<Vector> center;    // power-norm center
};

/// Parsed problem description.  Matrices may come inline, from a
/// whitespace-delimited file with a "rows cols" header line, or be generated
/// ("random-normal") from the seed with the library PRNG.
struct ProblemSpec {
  std::string kind;  // dopt | volumetric | quartic | custom-poly
  int m = 0;
  int n = 0;
  std::optional<Matrix> H;
  std::optional<Matrix> A;
  std::optional<Vector> b;
  std::optional<Matrix> C;
  std::optional<Vector> d;
  std::optional<Matrix> E;
  std::vector<double> coeffs;  // custom-poly coefficients, constant term first
  int p = 1;                   // volumetric power
  ReferenceSpec reference;
  bool L_auto = true;
  double L = 0.0;
  bool mu_auto = true;
  double mu = 0.0;
  std::uint64_t seed = 0;
};

/// Parses a JSON problem spec.  Throws SpecParseError (with 1-based
/// line/column) on syntax errors and ConfigError on semantic ones.
/// Relative matrix-file paths resolve against base_dir.
ProblemSpec parse_problem_spec(const std::string& text, const std::string& base_dir);
ProblemSpec parse_problem_spec_file(const std::string& path);

/// Instantiated problem: the certified pair plus the concrete design
/// objective when the kind supports the vertex-direction baseline.
struct BuiltProblem {
  RelSmoothPair pair;
  std::shared_ptr<const DOptimalDesign> dopt;  // non-null iff kind == dopt
};

/// Builds oracles from a spec and resolves "auto" constants:
/// dopt -> L = 1, mu = 0; volumetric -> L = p(p+1), mu = 0; quartic ->
/// the Hessian-growth formula and the singular-value strong convexity;
/// custom-poly -> recentred absolute-coefficient sum.
BuiltProblem build_problem(const ProblemSpec& spec);

/// Dense text matrix I/O ("rows cols" header then row-major values).
Matrix read_dense_matrix(const std::string& path);
void write_dense_matrix(const Matrix& m, const std::string& path);

}  // namespace relsmooth
