#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rkb/error.hpp"
#include "rkb/fracmath.hpp"
#include "rkb/kernels.hpp"
#include "rkb/orthonormalize.hpp"
#include "rkb/problems.hpp"
#include "rkb/solver.hpp"
#include "rkb/verify.hpp"

namespace py = pybind11;
using namespace rkb;

namespace {

ExampleId example_id(const py::object& id) {
    if (py::isinstance<py::int_>(id)) return parse_example_id(std::to_string(id.cast<int>()));
    return parse_example_id(id.cast<std::string>());
}

py::dict report_dict(const ErrorReport& r) {
    py::list rows;
    for (const ErrorRow& row : r.rows)
        rows.append(py::dict(py::arg("xi") = row.point.xi, py::arg("eta") = row.point.eta,
                             py::arg("approx") = row.approx, py::arg("exact") = row.exact,
                             py::arg("abs_error") = row.abs_error));
    return py::dict(py::arg("rows") = rows, py::arg("max_abs_error") = r.max_abs_error,
                    py::arg("mean_abs_error") = r.mean_abs_error);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reproducing-kernel collocation for the time-fractional Burgers equation";

    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NumericalError& e) {
            PyErr_SetString(numerical_error.ptr(), e.what());
        }
    });

    m.def("gamma", &rkb::gamma, py::arg("x"));
    m.def(
        "caputo_power", [](double k, double alpha, double t) { return caputo_power(k, FractionalOrder(alpha), t); },
        py::arg("k"), py::arg("alpha"), py::arg("t"), "Caputo derivative of t^k.");
    m.def("weighted_moment", &weighted_moment, py::arg("m"), py::arg("alpha"), py::arg("a"), py::arg("b"),
          py::arg("c"), "int_a^b r^m (c-r)^(-alpha) dr");
    m.def(
        "gauss_jacobi",
        [](double alpha, int n) {
            const QuadratureRule r = gauss_jacobi(alpha, n);
            return py::make_tuple(r.nodes, r.weights);
        },
        py::arg("alpha"), py::arg("n"), "Nodes and weights on (0,1) for the weight (1-u)^(-alpha).");

    m.def("r1", &r1, py::arg("x"), py::arg("xi"));
    m.def("r2", &r2, py::arg("t"), py::arg("eta"), py::arg("dt") = 0, py::arg("deta") = 0);
    m.def("r3", &r3, py::arg("x"), py::arg("xi"), py::arg("dx") = 0, py::arg("dxi") = 0);

    py::class_<Problem>(m, "Problem")
        .def_readonly("name", &Problem::name)
        .def_property_readonly("alpha", [](const Problem& p) { return p.alpha.value(); })
        .def_property_readonly("has_exact", [](const Problem& p) { return p.exact.has_value(); })
        .def("f", [](const Problem& p, double xi, double eta) { return p.f(xi, eta); })
        .def("k", [](const Problem& p, int which, double xi, double eta) {
            switch (which) {
                case 1: return p.k1(xi, eta);
                case 2: return p.k2(xi, eta);
                case 3: return p.k3(xi, eta);
                case 4: return p.k4(xi, eta);
            }
            throw py::value_error("coefficient index must be 1..4");
        })
        .def("exact", [](const Problem& p, double xi, double eta) {
            if (!p.exact) throw py::value_error(p.name + " has no exact solution");
            return (*p.exact)(xi, eta);
        });

    m.def(
        "build_example", [](const py::object& id, double alpha) { return build_example(example_id(id), alpha); },
        py::arg("example"), py::arg("alpha"), "1/'benchmark1' or 2/'benchmark2'.");
    m.def(
        "build_catalog_problem",
        [](double alpha, const std::string& f, const std::string& k1, const std::string& k2, const std::string& k3,
           const std::string& k4, std::optional<std::string> exact_space, double exact_time_power,
           const std::string& name) {
            CatalogProblemSpec spec;
            spec.name = name;
            spec.alpha = alpha;
            spec.f = CatalogExpression::parse(f);
            spec.k1 = CatalogExpression::parse(k1);
            spec.k2 = CatalogExpression::parse(k2);
            spec.k3 = CatalogExpression::parse(k3);
            spec.k4 = CatalogExpression::parse(k4);
            if (exact_space) spec.exact_space = CatalogExpression::parse(*exact_space);
            spec.exact_time_power = exact_time_power;
            return build_catalog_problem(spec);
        },
        py::arg("alpha"), py::arg("f"), py::arg("k1") = "", py::arg("k2") = "", py::arg("k3") = "",
        py::arg("k4") = "", py::arg("exact_space") = py::none(), py::arg("exact_time_power") = 1.0,
        py::arg("name") = "custom");

    py::class_<ApproximateSolution>(m, "Solution")
        .def_property_readonly("size", &ApproximateSolution::size)
        .def_property_readonly("B", &ApproximateSolution::coefficients)
        .def_property_readonly("F", &ApproximateSolution::f_values)
        .def_property_readonly("expansion", &ApproximateSolution::expansion)
        .def_property_readonly("beta", [](const ApproximateSolution& s) { return s.orthonormal_basis().beta; })
        .def_property_readonly("gram", [](const ApproximateSolution& s) { return s.orthonormal_basis().gram.entries; })
        .def_property_readonly("orthonormality_defect",
                               [](const ApproximateSolution& s) { return orthonormality_defect(s.orthonormal_basis()); })
        .def_property_readonly("points",
                               [](const ApproximateSolution& s) {
                                   std::vector<std::pair<double, double>> pts;
                                   for (const Point& p : s.grid().points()) pts.emplace_back(p.xi, p.eta);
                                   return pts;
                               })
        .def("evaluate", &ApproximateSolution::evaluate, py::arg("xi"), py::arg("eta"), py::arg("dxi_order") = 0)
        .def("residual", &ApproximateSolution::residual, py::arg("xi"), py::arg("eta"))
        .def("norm_squared", &ApproximateSolution::norm_squared, py::arg("m"));

    m.def(
        "solve",
        [](const Problem& problem, int p, int q, int nodes, int picard) {
            py::gil_scoped_release release;
            return solve(problem, CollocationGrid::uniform(p, q),
                         SolverOptions{.quadrature_nodes = nodes, .picard_iters = picard});
        },
        py::arg("problem"), py::arg("p"), py::arg("q"), py::arg("nodes") = kDefaultQuadratureNodes,
        py::arg("picard") = 0);

    m.def(
        "error_report",
        [](const ApproximateSolution& s, std::optional<std::vector<double>> coords) {
            return report_dict(error_report(s, tensor_mesh(coords ? *coords : table_coordinates())));
        },
        py::arg("solution"), py::arg("coords") = py::none(),
        "Errors on the tensor mesh of coords (default 0.1..0.6).");

    m.def(
        "verify_forcing",
        [](const Problem& problem, int n, double tol) {
            const ForcingReport r = verify_forcing(problem, square_mesh(n), tol);
            return py::dict(py::arg("max_discrepancy") = r.max_discrepancy,
                            py::arg("worst") = py::make_tuple(r.worst.xi, r.worst.eta), py::arg("passed") = r.passed);
        },
        py::arg("problem"), py::arg("n") = 10, py::arg("tol") = 1e-10);

    m.def(
        "run_verification",
        [](int nodes, double inject_forcing, bool duplicate_point) {
            VerifyOptions o;
            o.quadrature_nodes = nodes;
            o.forcing_perturbation = inject_forcing;
            o.duplicate_point = duplicate_point;
            std::vector<CheckResult> results;
            {
                py::gil_scoped_release release;
                results = run_verification(o);
            }
            py::list out;
            for (const CheckResult& r : results)
                out.append(py::dict(py::arg("name") = r.name, py::arg("passed") = r.passed, py::arg("value") = r.value,
                                    py::arg("tolerance") = r.tolerance, py::arg("detail") = r.detail));
            return out;
        },
        py::arg("nodes") = kDefaultQuadratureNodes, py::arg("inject_forcing") = 0.0,
        py::arg("duplicate_point") = false);
}
