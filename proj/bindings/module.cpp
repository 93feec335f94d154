#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relsmooth/certify.hpp"
#include "relsmooth/commands.hpp"
#include "relsmooth/references.hpp"
#include "relsmooth/sampling.hpp"
#include "relsmooth/solvers.hpp"
#include "relsmooth/spec_io.hpp"

namespace py = pybind11;
using namespace relsmooth;

namespace {

SolverConfig config_from_kwargs(int max_iters, int record_every,
                                double target_gap, double f_star,
                                std::uint64_t seed) {
  SolverConfig cfg;
  cfg.max_iters = max_iters;
  cfg.record_every = record_every;
  cfg.target_gap = target_gap;
  cfg.f_star = f_star;
  cfg.seed = seed;
  return cfg;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

PYBIND11_MODULE(_relsmooth, m) {
  m.doc() = "Relatively-smooth first-order optimization toolkit";

  py::register_exception<DomainViolation>(m, "DomainViolationError",
                                          PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<SingularMatrix>(m, "SingularMatrixError",
                                         PyExc_ArithmeticError);
  py::register_exception<NoConvergence>(m, "NoConvergenceError",
                                        PyExc_RuntimeError);

  py::class_<Domain>(m, "Domain")
      .def_static("all_space", &Domain::all_space, py::arg("dim"))
      .def_static("unit_simplex", &Domain::unit_simplex, py::arg("dim"))
      .def_static("box", &Domain::box, py::arg("dim"), py::arg("u"))
      .def_static("positive_orthant", &Domain::positive_orthant, py::arg("dim"))
      .def_property_readonly("dim", &Domain::dim)
      .def("contains", &Domain::contains)
      .def("interior_contains", &Domain::interior_contains)
      .def("__eq__", [](const Domain& a, const Domain& b) { return a == b; })
      .def("__repr__", &Domain::describe);

  py::class_<Objective, std::shared_ptr<Objective>>(m, "Objective")
      .def_property_readonly("domain", &Objective::domain)
      .def("value", &Objective::value, py::arg("x"))
      .def("gradient", &Objective::gradient, py::arg("x"))
      .def("has_hessian", &Objective::has_hessian)
      .def("hessian", &Objective::hessian, py::arg("x"));

  py::class_<SubproblemSolve>(m, "SubproblemSolve")
      .def_readonly("x", &SubproblemSolve::x)
      .def_readonly("residual", &SubproblemSolve::residual);

  py::class_<Reference, std::shared_ptr<Reference>>(m, "Reference")
      .def_property_readonly("domain", &Reference::domain)
      .def("value", &Reference::value, py::arg("x"))
      .def("gradient", &Reference::gradient, py::arg("x"))
      .def("has_hessian", &Reference::has_hessian)
      .def("hessian", &Reference::hessian, py::arg("x"))
      .def("subproblem", &Reference::subproblem, py::arg("c"))
      .def("solve_subproblem", &Reference::solve_subproblem, py::arg("c"))
      .def("center", &Reference::center);

  m.def(
      "normalize_at",
      [](ReferencePtr reference, const Vector& x0) {
        return std::const_pointer_cast<Reference>(
            normalize_at(std::move(reference), x0));
      },
      py::arg("reference"), py::arg("x0"),
      "Shift a reference so its value vanishes at x0.");

  py::class_<DOptimalDesign, Objective, std::shared_ptr<DOptimalDesign>>(
      m, "DOptimalDesign")
      .def(py::init<Matrix>(), py::arg("H"));
  py::class_<VolumetricObjective, Objective,
             std::shared_ptr<VolumetricObjective>>(m, "VolumetricObjective")
      .def(py::init<Matrix, int>(), py::arg("H"), py::arg("p"));
  py::class_<QuarticObjective, Objective, std::shared_ptr<QuarticObjective>>(
      m, "QuarticObjective")
      .def(py::init<Matrix, Vector, Matrix, Vector, std::optional<Matrix>>(),
           py::arg("A"), py::arg("b"), py::arg("C"), py::arg("d"),
           py::arg("E") = std::nullopt)
      .def("auto_smoothness", &QuarticObjective::auto_smoothness)
      .def("auto_strong_convexity", &QuarticObjective::auto_strong_convexity);
  py::class_<Polynomial1D, Objective, std::shared_ptr<Polynomial1D>>(
      m, "Polynomial1D")
      .def(py::init<std::vector<double>>(), py::arg("coeffs"))
      .def("auto_smoothness", &Polynomial1D::auto_smoothness, py::arg("center"));

  py::class_<EuclideanReference, Reference, std::shared_ptr<EuclideanReference>>(
      m, "EuclideanReference")
      .def(py::init<int>(), py::arg("dim"));
  py::class_<PowerNormReference, Reference, std::shared_ptr<PowerNormReference>>(
      m, "PowerNormReference")
      .def(py::init<int, int>(), py::arg("r"), py::arg("dim"))
      .def(py::init<int, Vector>(), py::arg("r"), py::arg("center"));
  py::class_<SimplexLogBarrier, Reference, std::shared_ptr<SimplexLogBarrier>>(
      m, "SimplexLogBarrier")
      .def(py::init<int>(), py::arg("dim"));
  py::class_<BoxPowerReference, Reference, std::shared_ptr<BoxPowerReference>>(
      m, "BoxPowerReference")
      .def(py::init<int, double, int>(), py::arg("s"), py::arg("u"),
           py::arg("dim"));

  py::class_<RelSmoothPair>(m, "RelSmoothPair")
      .def(py::init<ObjectivePtr, ReferencePtr, double, double>(),
           py::arg("objective"), py::arg("reference"), py::arg("L"),
           py::arg("mu"))
      .def_property_readonly(
          "objective",
          [](const RelSmoothPair& p) {
            return std::const_pointer_cast<Objective>(p.objective);
          })
      .def_property_readonly(
          "reference",
          [](const RelSmoothPair& p) {
            return std::const_pointer_cast<Reference>(p.reference);
          })
      .def_readonly("L", &RelSmoothPair::L)
      .def_readonly("mu", &RelSmoothPair::mu);

  m.def("bregman_distance", &bregman_distance, py::arg("reference"),
        py::arg("y"), py::arg("x"));
  m.def("combine_certificates", &combine_certificates, py::arg("weighted_pairs"));
  m.def("affine_precompose", &affine_precompose, py::arg("pair"), py::arg("A"));

  m.def("operator_norm", &operator_norm, py::arg("M"));
  m.def("smoothness_from_polynomial_rn",
        [](const std::vector<double>& coeffs) {
          return smoothness_from_polynomial_rn({coeffs});
        },
        py::arg("coeffs"));
  m.def("smoothness_from_polynomial_box",
        [](const std::vector<double>& coeffs, double u, int n) {
          return smoothness_from_polynomial_box({coeffs}, u, n);
        },
        py::arg("coeffs"), py::arg("u"), py::arg("n"));
  m.def("strong_convexity_for_quartic", &strong_convexity_for_quartic,
        py::arg("E"), py::arg("C"));

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("k", &TraceRow::k)
      .def_readonly("x", &TraceRow::x)
      .def_readonly("f", &TraceRow::f)
      .def_readonly("best_f", &TraceRow::best_f)
      .def_readonly("gap", &TraceRow::gap)
      .def_readonly("gap_bound", &TraceRow::gap_bound)
      .def_readonly("root_residual", &TraceRow::root_residual)
      .def_readonly("wall_ns", &TraceRow::wall_ns);

  py::class_<IterateTrace>(m, "IterateTrace")
      .def_readonly("rows", &IterateTrace::rows)
      .def_readonly("algorithm", &IterateTrace::algorithm)
      .def_readonly("L", &IterateTrace::L)
      .def_readonly("mu", &IterateTrace::mu)
      .def_readonly("seed", &IterateTrace::seed)
      .def_readonly("prng", &IterateTrace::prng)
      .def_readonly("x0", &IterateTrace::x0)
      .def_readonly("completed", &IterateTrace::completed)
      .def_readonly("fw_stationarity", &IterateTrace::fw_stationarity)
      .def("final_f", &IterateTrace::final_f)
      .def("best_f", &IterateTrace::best_f);

  m.def("write_trace_csv", &write_trace_csv, py::arg("trace"), py::arg("path"),
        py::arg("include_wall_times") = false);

  m.def(
      "primal_gradient",
      [](const RelSmoothPair& pair, const Vector& x0, int max_iters,
         int record_every, double target_gap, double f_star,
         std::uint64_t seed) {
        return primal_gradient(
            pair, x0,
            config_from_kwargs(max_iters, record_every, target_gap, f_star,
                               seed));
      },
      py::arg("pair"), py::arg("x0"), py::arg("max_iters") = 1000,
      py::arg("record_every") = 0, py::arg("target_gap") = kNaN,
      py::arg("f_star") = kNaN, py::arg("seed") = 0);

  m.def(
      "dual_averaging",
      [](const RelSmoothPair& pair, int max_iters, int record_every,
         double target_gap, double f_star, std::uint64_t seed) {
        return dual_averaging(
            pair, config_from_kwargs(max_iters, record_every, target_gap,
                                     f_star, seed));
      },
      py::arg("pair"), py::arg("max_iters") = 1000, py::arg("record_every") = 0,
      py::arg("target_gap") = kNaN, py::arg("f_star") = kNaN,
      py::arg("seed") = 0);

  m.def(
      "composite_primal_gradient",
      [](const RelSmoothPair& pair,
         const std::function<double(const Vector&)>& p_value,
         const std::function<Vector(const Vector&, double)>& p_subproblem,
         const Vector& x0, int max_iters, int record_every, double target_gap,
         double f_star, std::uint64_t seed) {
        CompositePiece piece;
        piece.value = p_value;
        piece.subproblem = [p_subproblem](const Vector& c, double scale) {
          return SubproblemSolve{p_subproblem(c, scale), kNaN};
        };
        return composite_primal_gradient(
            pair, piece, x0,
            config_from_kwargs(max_iters, record_every, target_gap, f_star,
                               seed));
      },
      py::arg("pair"), py::arg("P_value"), py::arg("P_subproblem"),
      py::arg("x0"), py::arg("max_iters") = 1000, py::arg("record_every") = 0,
      py::arg("target_gap") = kNaN, py::arg("f_star") = kNaN,
      py::arg("seed") = 0);

  m.def(
      "frank_wolfe_dopt",
      [](const DOptimalDesign& objective, const Vector& x0, int max_iters,
         int record_every, double target_gap, double f_star,
         std::uint64_t seed, double stationarity_target) {
        return frank_wolfe_dopt(
            objective, x0,
            config_from_kwargs(max_iters, record_every, target_gap, f_star,
                               seed),
            stationarity_target);
      },
      py::arg("objective"), py::arg("x0"), py::arg("max_iters") = 1000,
      py::arg("record_every") = 0, py::arg("target_gap") = kNaN,
      py::arg("f_star") = kNaN, py::arg("seed") = 0,
      py::arg("stationarity_target") = kNaN);

  py::class_<InteriorSampler>(m, "InteriorSampler")
      .def(py::init<Domain, std::uint64_t, double>(), py::arg("domain"),
           py::arg("seed"), py::arg("truncation") = 1e-6)
      .def("next", &InteriorSampler::next);

  py::class_<CertificateReport>(m, "CertificateReport")
      .def_readonly("condition", &CertificateReport::condition)
      .def_readonly("samples", &CertificateReport::samples)
      .def_readonly("worst_violation", &CertificateReport::worst_violation)
      .def_readonly("tolerance", &CertificateReport::tolerance)
      .def_readonly("pass_", &CertificateReport::pass)
      .def_readonly("seed", &CertificateReport::seed)
      .def_readonly("note", &CertificateReport::note)
      .def("__bool__", [](const CertificateReport& r) { return r.pass; });

  m.def(
      "check_gradient_monotonicity",
      [](const Objective& f, const Reference& h, double L, double mu,
         InteriorSampler& sampler, int n_pairs, double tol) {
        return check_gradient_monotonicity(f, h, L, mu, sampler, n_pairs, tol);
      },
      py::arg("f"), py::arg("h"), py::arg("L"), py::arg("mu"),
      py::arg("sampler"), py::arg("n_pairs") = 1000, py::arg("tol") = 1e-9);

  m.def(
      "check_hessian_dominance",
      [](const Objective& f, const Reference& h, double L, double mu,
         InteriorSampler& sampler, int n_points, double tol) {
        return check_hessian_dominance(f, h, L, mu, sampler, n_points, tol);
      },
      py::arg("f"), py::arg("h"), py::arg("L"), py::arg("mu"),
      py::arg("sampler"), py::arg("n_points") = 200, py::arg("tol") = 1e-9);

  m.def(
      "check_hessian_dominance_at",
      [](const Objective& f, const Reference& h, double L, double mu,
         const std::vector<Vector>& points, double tol) {
        return check_hessian_dominance(f, h, L, mu, points, tol);
      },
      py::arg("f"), py::arg("h"), py::arg("L"), py::arg("mu"),
      py::arg("points"), py::arg("tol") = 1e-9);

  py::enum_<BoundKind>(m, "BoundKind")
      .value("ITERATE_GAP_EXACT", BoundKind::IterateGapExact)
      .value("ITERATE_GAP_SUBLINEAR", BoundKind::IterateGapSublinear)
      .value("ITERATE_GAP_GEOMETRIC", BoundKind::IterateGapGeometric)
      .value("MIN_GAP_EXACT", BoundKind::MinGapExact)
      .value("MIN_GAP_SUBLINEAR", BoundKind::MinGapSublinear);

  m.def(
      "eval_bound",
      [](double L, double mu, int k, double d0, BoundKind which) {
        return eval_bound({L, mu, k, d0, which});
      },
      py::arg("L"), py::arg("mu"), py::arg("k"), py::arg("d0"),
      py::arg("which"));
  m.def("dopt_iteration_bound", &dopt_iteration_bound, py::arg("n"),
        py::arg("gap0"), py::arg("eps"));
  m.def("check_bound_on_trace", &check_bound_on_trace, py::arg("trace"),
        py::arg("pair"), py::arg("x_star"));
  m.def("annotate_trace_bounds", &annotate_trace_bounds, py::arg("trace"),
        py::arg("pair"), py::arg("x_star"));

  m.def("parse_problem_spec", &parse_problem_spec, py::arg("text"),
        py::arg("base_dir") = ".");
  m.def("build_pair_from_spec", [](const std::string& text,
                                   const std::string& base_dir) {
    return build_problem(parse_problem_spec(text, base_dir)).pair;
  });
  m.def("default_start", &default_start, py::arg("pair"));

  m.attr("__version__") = "0.1.0";
}
