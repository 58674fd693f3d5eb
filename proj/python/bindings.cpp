#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "kahler/coeff_algebra.hpp"
#include "kahler/constants.hpp"
#include "kahler/diameter.hpp"
#include "kahler/errors.hpp"
#include "kahler/model_check.hpp"
#include "kahler/rayleigh.hpp"

namespace py = pybind11;
using namespace kahler;

namespace {

py::dict bound_dict(const DiameterBound& b) {
  py::dict d;
  d["method"] = std::string(to_string(b.method));
  d["value"] = b.value;
  d["k"] = b.params.k ? py::cast(*b.params.k) : py::none();
  d["p"] = b.params.p ? py::cast(*b.params.p) : py::none();
  d["d_star"] = b.params.d_star ? py::cast(*b.params.d_star) : py::none();
  d["m"] = b.geometry.m();
  d["rho"] = b.geometry.rho();
  return d;
}

py::dict report_dict(const algebra::CheckReport& r) {
  py::dict d;
  d["id"] = r.id;
  d["description"] = r.description;
  d["passed"] = r.passed();
  d["residual"] = r.residual.to_string();
  d["assumptions"] = r.assumptions;
  d["min_value"] = r.min_value ? py::cast(*r.min_value) : py::none();
  d["detail"] = r.detail;
  return d;
}

py::object to_fraction(const mpq_class& q) {
  return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

IntegralBackend parse_backend(const std::string& name) {
  if (name == "recurrence") return IntegralBackend::Recurrence;
  if (name == "quadrature") return IntegralBackend::Quadrature;
  throw DomainError("backend must be 'recurrence' or 'quadrature'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kähler Sobolev constants, diameter bounds and their checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CatalogError>(m, "CatalogError", PyExc_KeyError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  // constants
  m.def("riemannian_sobolev_constant", &riemannian_sobolev_constant,
        py::arg("n"), py::arg("p"), py::arg("rho"));
  m.def("kahler_sobolev_constant",
        [](int dim, double rho, double p) {
          return kahler_sobolev_constant(GeometryParams(dim, rho), p);
        },
        py::arg("m"), py::arg("rho"), py::arg("p"));
  m.def("kahler_beckner_constant",
        [](int dim, double rho, double p) {
          return kahler_beckner_constant(GeometryParams(dim, rho), p);
        },
        py::arg("m"), py::arg("rho"), py::arg("p"));
  m.def("log_sobolev_constant",
        [](int dim, double rho) { return log_sobolev_constant(GeometryParams(dim, rho)); },
        py::arg("m"), py::arg("rho"));
  m.def("boundary_exponent", &boundary_exponent, py::arg("m"), py::arg("k"));
  m.def("optimal_k_for_p", &optimal_k_for_p, py::arg("m"), py::arg("p"));
  m.def("proposition_c_constant",
        [](int dim, double rho, double p, double k) {
          return proposition_c_constant(GeometryParams(dim, rho), p, k);
        },
        py::arg("m"), py::arg("rho"), py::arg("p"), py::arg("k"));

  // coefficient algebra
  m.def("expression_catalog", &algebra::expression_catalog);
  m.def("identity_catalog", &algebra::identity_catalog);
  m.def("build_named_expression",
        [](const std::string& name) {
          return algebra::build_named_expression(name).to_string();
        },
        py::arg("name"));
  m.def("verify_identity",
        [](const std::string& id) { return report_dict(algebra::verify_identity(id)); },
        py::arg("id"));

  // diameter
  m.def("bonnet_myers_bound",
        [](int dim, double rho) { return bonnet_myers_bound(GeometryParams(dim, rho)); },
        py::arg("m"), py::arg("rho"));
  m.def("family_bound",
        [](int dim, double rho, double k) {
          return bound_dict(family_bound(GeometryParams(dim, rho), k));
        },
        py::arg("m"), py::arg("rho"), py::arg("k"));
  m.def("closed_form_24m",
        [](int dim, double rho) {
          return bound_dict(closed_form_24m(GeometryParams(dim, rho)));
        },
        py::arg("m"), py::arg("rho"));
  m.def("optimize_family",
        [](int dim, double rho, double tol) {
          return bound_dict(optimize_family(GeometryParams(dim, rho), tol));
        },
        py::arg("m"), py::arg("rho"), py::arg("tol") = 1e-9);
  m.def("chain_24m_check",
        [](int m_max) { return report_dict(chain_24m_check(m_max)); },
        py::arg("m_max"));

  // rayleigh
  m.def("sin_power_integral",
        [](int n, double theta, const std::string& backend) {
          const QuadratureEstimate e = sin_power_integral(n, theta, parse_backend(backend));
          return py::make_tuple(e.value, e.error_estimate);
        },
        py::arg("n"), py::arg("theta"), py::arg("backend") = "recurrence");
  m.def("wallis_factor", [](int k) { return to_fraction(wallis_factor(k)); },
        py::arg("m"));
  m.def("rayleigh_ratio",
        [](int dim, double d) {
          const QuadratureEstimate e = rayleigh_ratio(dim, d);
          return py::make_tuple(e.value, e.error_estimate);
        },
        py::arg("m"), py::arg("d"));
  m.def("prop_p_margin", &prop_p_margin, py::arg("m"), py::arg("d"));
  m.def("solve_max_diameter",
        [](int dim, double tol) { return bound_dict(solve_max_diameter(dim, tol)); },
        py::arg("m"), py::arg("tol") = 1e-10);
  m.def("closed_form_200", [](int dim) { return bound_dict(closed_form_200(dim)); },
        py::arg("m"));
  m.def("chain_epsilon_threshold", &chain_epsilon_threshold, py::arg("m"));
  m.def("replay_chain",
        [](int dim, double epsilon) {
          const ChainReport r = replay_chain(dim, epsilon);
          py::list steps;
          for (const ChainStep& s : r.steps) {
            py::dict d;
            d["name"] = s.name;
            d["lhs"] = s.lhs;
            d["relation"] = s.relation;
            d["rhs"] = s.rhs;
            d["pass"] = s.pass;
            steps.append(d);
          }
          py::dict d;
          d["m"] = r.m;
          d["epsilon"] = r.epsilon;
          d["d"] = r.d;
          d["in_hypothesis"] = r.in_hypothesis;
          d["steps"] = steps;
          d["steps_hold"] = r.steps_hold();
          d["contradiction"] = r.contradiction;
          return d;
        },
        py::arg("m"), py::arg("epsilon"));

  // model space
  m.def("run_model_suite",
        [](const std::string& suite, std::uint64_t seed, int functions, double rho,
           int order) {
          if (suite != "beckner" && suite != "sobolev") {
            throw DomainError("suite must be 'beckner' or 'sobolev'");
          }
          SuiteOptions options;
          options.seed = seed;
          options.functions = functions;
          options.spec = ManifoldSpec{rho, order};
          const SuiteResult r = run_model_suite(
              suite == "beckner" ? ModelSuite::Beckner : ModelSuite::Sobolev, options);
          py::dict d;
          d["suite"] = suite;
          d["p_grid"] = r.p_grid;
          d["checks"] = r.checks;
          d["evaluations"] = r.evaluations;
          d["violations"] = r.violations;
          d["below_tolerance"] = r.below_tolerance;
          d["min_margin"] = r.min_margin;
          d["max_ratio"] = r.max_ratio;
          return d;
        },
        py::arg("suite"), py::arg("seed") = 0, py::arg("functions") = 200,
        py::arg("rho") = 1.0, py::arg("order") = 64);

  // command line
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          const int code = cli::run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
