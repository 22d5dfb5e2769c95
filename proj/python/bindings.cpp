#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "maxsmooth/counterexample.hpp"
#include "maxsmooth/eigfamily.hpp"
#include "maxsmooth/errors.hpp"
#include "maxsmooth/lti.hpp"
#include "maxsmooth/maxfun.hpp"
#include "maxsmooth/report.hpp"
#include "maxsmooth/solvers.hpp"

namespace py = pybind11;
using namespace maxsmooth;

namespace {

py::dict report_dict(const SolveReport& r) {
  py::list iterations;
  for (const auto& it : r.iterations) iterations.append(py::make_tuple(it.level, it.width));
  py::list certificates;
  for (const auto& c : r.certificates) certificates.append(py::make_tuple(c.point, c.value));
  py::dict d;
  d["optimum"] = r.optimum;
  d["locations"] = r.locations;
  d["status"] = std::string(status_name(r.status));
  d["iterations"] = iterations;
  d["certificates"] = certificates;
  d["history"] = r.history;
  d["empirical_order"] = r.empirical_order;
  d["curvature"] = r.curvature;
  d["residual"] = r.residual;
  d["evaluations"] = r.evaluations;
  return d;
}

py::dict probe_dict(const ProbeReport& p) {
  py::dict d;
  d["point"] = p.point;
  d["value"] = p.value;
  d["fd_first_left"] = p.fd_first_left;
  d["fd_first_right"] = p.fd_first_right;
  d["fd_second_left"] = p.fd_second_left;
  d["fd_second_right"] = p.fd_second_right;
  d["used_step"] = p.used_step;
  d["lipschitz_estimate"] = p.lipschitz_estimate;
  d["cluster_size"] = p.cluster_size;
  d["status"] = std::string(probe_status_name(p.status));
  d["smooth"] = p.smooth;
  return d;
}

ExtremalFunction polynomial_extremal(const std::vector<CMatrix>& coeffs, const std::string& kind) {
  const ExtremalKind k = parse_kind(kind);
  if (k == ExtremalKind::sigma_max || k == ExtremalKind::sigma_min)
    return ExtremalFunction(MatrixFamily::polynomial(coeffs), k);
  return ExtremalFunction(HermitianFamily::polynomial(coeffs), k);
}

SolverOptions solver_options(std::optional<double> tol, const std::string& method, int samples, int threads) {
  SolverOptions o;
  o.tol = tol;
  o.method = parse_method(method);
  o.samples = samples;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Max functions, eigenvalue extremal functions and level-set solvers";
  m.attr("__version__") = MAXSMOOTH_VERSION;

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // Counterexample construction.
  py::class_<CounterexampleFunction, std::shared_ptr<CounterexampleFunction>>(m, "Counterexample")
      .def(py::init([](const std::string& slopes, int k_max, int q) {
             return std::make_shared<CounterexampleFunction>(SlopeSequence::parse(slopes), k_max, q);
           }),
           py::arg("slopes") = "a", py::arg("k_max") = 40, py::arg("q") = 3)
      .def("f", &CounterexampleFunction::f, py::arg("t"), py::arg("order") = 0)
      .def("fmax", &CounterexampleFunction::fmax, py::arg("t"))
      .def("constraint_residuals", &CounterexampleFunction::constraint_residuals, py::arg("k"))
      .def("coefficients",
           [](const CounterexampleFunction& fn, int k) {
             std::vector<std::string> out;
             for (const auto& c : fn.piece(k).coeffs) out.push_back(c.str());
             return out;
           },
           py::arg("k"), "exact coefficients of piece k as rational strings, increasing degree")
      .def("kink_gap", [](const CounterexampleFunction& fn, int k) { return kink_gap(fn, k); }, py::arg("k"))
      .def_property_readonly("k_max", &CounterexampleFunction::k_max);

  m.def("verify_c3",
        [](const CounterexampleFunction& fn, int k_first, int k_last) {
          const SmoothnessReport r = verify_c3(fn, k_first, k_last);
          py::dict d;
          d["sup_deriv"] = r.sup_deriv;
          d["max_jump"] = r.max_jump;
          d["jumps_ok"] = r.jumps_ok;
          d["sup_nonincreasing"] = r.sup_nonincreasing;
          d["c3_plausible"] = r.c3_plausible;
          return d;
        },
        py::arg("fn"), py::arg("k_first"), py::arg("k_last"));
  m.def("isolation_bound", &isolation_bound, py::arg("k"));
  m.def("verify_isolated_max", &verify_isolated_max, py::arg("fn"), py::arg("k_start"), py::arg("k_end"));
  m.def("plot_data",
        [](const std::string& figure, int resolution) {
          std::ostringstream os;
          emit_plot_data(parse_figure(figure), resolution, os);
          return os.str();
        },
        py::arg("figure"), py::arg("resolution"), "CSV text with a header row");

  // Extremal functions of polynomial families.
  m.def("eval_extremal",
        [](const std::vector<CMatrix>& coeffs, const std::string& kind, double t) {
          return eval_extremal(polynomial_extremal(coeffs, kind), t);
        },
        py::arg("coefficients"), py::arg("kind"), py::arg("t"));
  m.def("smoothness_probe",
        [](const std::vector<CMatrix>& coeffs, const std::string& kind, double x) {
          return probe_dict(smoothness_probe(polynomial_extremal(coeffs, kind), x));
        },
        py::arg("coefficients"), py::arg("kind"), py::arg("x"));
  m.def("local_refine",
        [](const std::vector<CMatrix>& coeffs, const std::string& kind, double a, double b, double tol) {
          return report_dict(local_refine(polynomial_extremal(coeffs, kind), a, b, tol));
        },
        py::arg("coefficients"), py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-10);

  // Systems and solvers.
  py::class_<LtiSystem>(m, "LtiSystem")
      .def(py::init<CMatrix, CMatrix, CMatrix, CMatrix>(), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"))
      .def_property_readonly("A", &LtiSystem::A)
      .def_property_readonly("B", &LtiSystem::B)
      .def_property_readonly("C", &LtiSystem::C)
      .def_property_readonly("D", &LtiSystem::D)
      .def("transfer", [](const LtiSystem& s, double omega) { return transfer_eval(s, omega); }, py::arg("omega"))
      .def("to_json",
           [](const LtiSystem& s) {
             std::ostringstream os;
             write_lti_json(s, os);
             return os.str();
           })
      .def_static("from_json",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return read_lti_json(in);
                  },
                  py::arg("text"));

  m.def("random_system", &random_system, py::arg("seed"), py::arg("n"), py::arg("m"), py::arg("p"),
        py::arg("stable") = true, py::arg("margin") = 0.5, py::arg("complex_entries") = true);
  m.def("is_stable", [](const LtiSystem& s) { return is_stable(s.A()); }, py::arg("sys"));

  m.def("hinf_norm",
        [](const LtiSystem& s, std::optional<double> tol, const std::string& method, int samples, int threads) {
          return report_dict(hinf_norm(s, solver_options(tol, method, samples, threads)));
        },
        py::arg("sys"), py::arg("tol") = py::none(), py::arg("method") = "levelset", py::arg("samples") = 1024,
        py::arg("threads") = 1);
  m.def("numerical_radius",
        [](const CMatrix& a, std::optional<double> tol, const std::string& form, const std::string& method) {
          return report_dict(numerical_radius(a, solver_options(tol, method, 1024, 1), parse_radius_form(form)));
        },
        py::arg("a"), py::arg("tol") = py::none(), py::arg("form") = "lambda_max", py::arg("method") = "levelset");
  m.def("passivity_gamma",
        [](const LtiSystem& s, double xi, std::optional<double> tol) {
          return report_dict(passivity_gamma(s, xi, solver_options(tol, "levelset", 1024, 1)));
        },
        py::arg("sys"), py::arg("xi"), py::arg("tol") = py::none());
  m.def("passivity_margin",
        [](const LtiSystem& s, std::optional<double> tol) {
          return report_dict(passivity_margin(s, solver_options(tol, "levelset", 1024, 1)));
        },
        py::arg("sys"), py::arg("tol") = py::none());
  m.def("empirical_order", [](const std::vector<double>& h) { return empirical_order(h); }, py::arg("history"));
}
