#include "relsmooth/spec_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relsmooth/references.hpp"
#include "relsmooth/sampling.hpp"

namespace relsmooth {

namespace {

using nlohmann::json;

[[noreturn]] void rethrow_with_position(const std::string& text,
                                        const json::parse_error& err) {
  // nlohmann reports a 1-based byte offset; convert to line/column.
  std::size_t byte = err.byte > 0 ? err.byte - 1 : 0;
  if (byte > text.size()) byte = text.size();
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw SpecParseError(err.what(), line, col);
}

Matrix matrix_from_json(const json& j, const std::string& base_dir, int rows,
                        int cols, std::uint64_t seed, const char* field) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "random-normal") {
      if (rows <= 0 || cols <= 0)
        throw ConfigError(std::string("spec: random-normal '") + field +
                          "' needs explicit m and n");
      Prng rng(seed);
      return random_normal_matrix(rows, cols, rng);
    }
    std::filesystem::path p(s);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return read_dense_matrix(p.string());
  }
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ConfigError(std::string("spec: '") + field +
                      "' must be a nested array, a file path, or 'random-normal'");
  const auto r = j.size();
  const auto c = j.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (j[i].size() != c)
      throw ConfigError(std::string("spec: ragged rows in '") + field + "'");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
  }
  if (!all_finite(m))
    throw ConfigError(std::string("spec: non-finite entries in '") + field + "'");
  return m;
}

Vector vector_from_json(const json& j, const char* field) {
  if (!j.is_array())
    throw ConfigError(std::string("spec: '") + field + "' must be a flat array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
  if (!all_finite(v))
    throw ConfigError(std::string("spec: non-finite entries in '") + field + "'");
  return v;
}

void parse_constant(const json& j, const char* field, bool& is_auto, double& value) {
  if (j.is_string()) {
    if (j.get<std::string>() != "auto")
      throw ConfigError(std::string("spec: '") + field +
                        "' must be a number or \"auto\"");
    is_auto = true;
    return;
  }
  is_auto = false;
  value = j.get<double>();
}

}  // namespace

Matrix read_dense_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file: " + path);
  int rows = 0;
  int cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1)
    throw ConfigError("matrix file " + path + ": bad 'rows cols' header");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!(in >> m(i, j)))
        throw ConfigError("matrix file " + path + ": too few values");
  return m;
}

void write_dense_matrix(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot open matrix file for writing: " + path);
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << buf << (j + 1 == m.cols() ? '\n' : ' ');
    }
  }
}

ProblemSpec parse_problem_spec(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    rethrow_with_position(text, err);
  }
  if (!j.is_object()) throw ConfigError("spec: top level must be an object");

  ProblemSpec spec;
  try {
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("m")) spec.m = j["m"].get<int>();
    if (j.contains("n")) spec.n = j["n"].get<int>();
    if (j.contains("p")) spec.p = j["p"].get<int>();
    if (j.contains("coeffs"))
      spec.coeffs = j["coeffs"].get<std::vector<double>>();

    if (j.contains("H"))
      spec.H = matrix_from_json(j["H"], base_dir, spec.m, spec.n, spec.seed, "H");
    if (j.contains("A"))
      spec.A = matrix_from_json(j["A"], base_dir, spec.m, spec.n, spec.seed, "A");
    if (j.contains("C"))
      spec.C = matrix_from_json(j["C"], base_dir, spec.m, spec.n, spec.seed + 1, "C");
    if (j.contains("E"))
      spec.E = matrix_from_json(j["E"], base_dir, spec.m, spec.n, spec.seed + 2, "E");
    if (j.contains("b")) spec.b = vector_from_json(j["b"], "b");
    if (j.contains("d")) spec.d = vector_from_json(j["d"], "d");

    if (j.contains("reference")) {
      const json& r = j["reference"];
      spec.reference.type = r.at("type").get<std::string>();
      if (r.contains("r")) spec.reference.r = r["r"].get<int>();
      if (r.contains("s")) spec.reference.s = r["s"].get<int>();
      if (r.contains("u")) spec.reference.u = r["u"].get<double>();
      if (r.contains("center"))
        spec.reference.center = vector_from_json(r["center"], "center");
    } else if (spec.kind == "dopt" || spec.kind == "volumetric") {
      spec.reference.type = "log-barrier";
    } else {
      spec.reference.type = "power-norm";
    }

    if (j.contains("L")) parse_constant(j["L"], "L", spec.L_auto, spec.L);
    if (j.contains("mu")) parse_constant(j["mu"], "mu", spec.mu_auto, spec.mu);
  } catch (const json::exception& err) {
    throw ConfigError(std::string("spec: ") + err.what());
  }
  return spec;
}

ProblemSpec parse_problem_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_spec(buf.str(),
                            std::filesystem::path(path).parent_path().string());
}

namespace {

ReferencePtr build_reference(const ReferenceSpec& ref, int dim) {
  if (ref.type == "euclidean") return std::make_shared<EuclideanReference>(dim);
  if (ref.type == "log-barrier") return std::make_shared<SimplexLogBarrier>(dim);
  if (ref.type == "box-power")
    return std::make_shared<BoxPowerReference>(ref.s, ref.u, dim);
  if (ref.type == "power-norm") {
    if (ref.center) {
      if (ref.center->size() != dim)
        throw ConfigError("spec: reference center has wrong dimension");
      return std::make_shared<PowerNormReference>(ref.r, *ref.center);
    }
    return std::make_shared<PowerNormReference>(ref.r, dim);
  }
  throw ConfigError("spec: unknown reference type '" + ref.type + "'");
}

}  // namespace

BuiltProblem build_problem(const ProblemSpec& spec) {
  ObjectivePtr objective;
  std::shared_ptr<const DOptimalDesign> dopt;
  double auto_L = 0.0;
  double auto_mu = 0.0;
  bool has_auto = false;

  if (spec.kind == "dopt") {
    if (!spec.H) throw ConfigError("spec: dopt needs H");
    dopt = std::make_shared<DOptimalDesign>(*spec.H);
    objective = dopt;
    auto_L = 1.0;
    has_auto = true;
  } else if (spec.kind == "volumetric") {
    if (!spec.H) throw ConfigError("spec: volumetric needs H");
    objective = std::make_shared<VolumetricObjective>(*spec.H, spec.p);
    auto_L = static_cast<double>(spec.p) * (spec.p + 1);
    has_auto = true;
  } else if (spec.kind == "quartic") {
    if (!spec.A || !spec.b || !spec.C || !spec.d)
      throw ConfigError("spec: quartic needs A, b, C, d");
    auto q = std::make_shared<QuarticObjective>(*spec.A, *spec.b, *spec.C,
                                                *spec.d, spec.E);
    if (spec.reference.type == "power-norm" && spec.reference.r == 2) {
      auto_L = q->auto_smoothness();
      auto_mu = q->auto_strong_convexity();
      has_auto = true;
    }
    objective = q;
  } else if (spec.kind == "custom-poly") {
    if (spec.coeffs.empty()) throw ConfigError("spec: custom-poly needs coeffs");
    auto poly = std::make_shared<Polynomial1D>(spec.coeffs);
    if (spec.reference.type == "power-norm") {
      const double center =
          spec.reference.center ? (*spec.reference.center)(0) : 0.0;
      auto_L = poly->auto_smoothness(center);
      has_auto = true;
    }
    objective = poly;
  } else {
    throw ConfigError("spec: unknown kind '" + spec.kind + "'");
  }

  const int dim = objective->domain().dim();
  ReferencePtr reference = build_reference(spec.reference, dim);
  if (reference->domain() != objective->domain())
    throw ConfigError("spec: reference domain " + reference->domain().describe() +
                      " does not match objective domain " +
                      objective->domain().describe());

  double L = spec.L;
  if (spec.L_auto) {
    if (!has_auto)
      throw ConfigError(
          "spec: no auto smoothness formula for this kind/reference; give L");
    L = auto_L;
  }
  double mu = spec.mu_auto ? auto_mu : spec.mu;
  return BuiltProblem{RelSmoothPair(objective, reference, L, mu), dopt};
}

}  // namespace relsmooth
