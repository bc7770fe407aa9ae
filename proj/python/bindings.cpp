#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sinhmodel/acceptance.hpp"
#include "sinhmodel/boundary_functions.hpp"
#include "sinhmodel/equilibrium.hpp"
#include "sinhmodel/expansion.hpp"
#include "sinhmodel/gaussian_exact.hpp"
#include "sinhmodel/model_core.hpp"
#include "sinhmodel/reference_oracle.hpp"

namespace py = pybind11;
using namespace sinhmodel;

namespace {

// A Python callable may run on oracle worker threads, so each call takes the GIL itself.
Potential custom_from_python(int k_max, py::function f) {
    auto holder = std::make_shared<py::function>(std::move(f));
    return Potential::custom(k_max, [holder](int k, double x) {
        py::gil_scoped_acquire gil;
        return (*holder)(k, x).cast<double>();
    });
}

py::dict report_dict(const ExpansionReport& r) {
    py::list terms;
    for (const auto& t : r.terms) {
        py::dict d;
        d["label"] = t.label;
        d["exponent"] = t.exponent;
        d["coefficient"] = t.coefficient;
        d["log_power"] = t.log_power;
        d["value"] = t.value;
        terms.append(d);
    }
    py::dict out;
    out["N"] = r.N;
    out["terms"] = terms;
    out["total"] = r.total();
    out["truncation_order"] = r.truncation_order;
    out["error_order"] = r.error_order_label;
    return out;
}

}  // namespace

PYBIND11_MODULE(_sinhmodel, m) {
    m.doc() = "Large-N asymptotics of sinh-type log-gas partition functions";

    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double w1, double w2, double beta, double alpha) {
                 ModelParams p(w1, w2, beta, alpha);
                 p.validate();
                 return p;
             }),
             py::arg("omega1") = 1.0, py::arg("omega2") = 1.0, py::arg("beta") = 1.0, py::arg("alpha") = 0.1)
        .def_readonly("omega1", &ModelParams::omega1)
        .def_readonly("omega2", &ModelParams::omega2)
        .def_readonly("beta", &ModelParams::beta)
        .def_readonly("alpha", &ModelParams::alpha)
        .def_property_readonly("s", &ModelParams::s)
        .def_property_readonly("kappa0", &ModelParams::kappa0)
        .def_property_readonly("varsigma", &ModelParams::varsigma)
        .def_property_readonly("log_constant", &ModelParams::log_constant)
        .def_property_readonly("u1", &ModelParams::u1)
        .def_property_readonly("outside_proven_regime", &ModelParams::outside_proven_regime)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(omega1=" + std::to_string(p.omega1) + ", omega2=" + std::to_string(p.omega2) +
                   ", beta=" + std::to_string(p.beta) + ", alpha=" + std::to_string(p.alpha) + ")";
        });

    py::class_<Potential>(m, "Potential")
        .def_static("quadratic", &Potential::quadratic, py::arg("g"), py::arg("t") = 0.0)
        .def_static("polynomial", &Potential::polynomial, py::arg("coeffs"))
        .def_static("custom", &custom_from_python, py::arg("k_max"), py::arg("deriv"),
                    "deriv(k, x) returns the k-th derivative of V at x, for 0 <= k <= k_max")
        .def("__call__", &Potential::eval)
        .def("deriv", &Potential::deriv, py::arg("k"), py::arg("x"))
        .def_property_readonly("k_max", &Potential::k_max)
        .def_property_readonly("coeffs", &Potential::coeffs);

    py::class_<Support>(m, "Support")
        .def_readonly("a", &Support::a)
        .def_readonly("b", &Support::b)
        .def_readonly("a_N", &Support::a_N)
        .def_readonly("b_N", &Support::b_N)
        .def_readonly("a_N1", &Support::a_N1)
        .def_readonly("b_N1", &Support::b_N1)
        .def_readonly("order", &Support::order)
        .def_readonly("N", &Support::N)
        .def_readonly("iterations", &Support::iterations)
        .def_readonly("residual", &Support::residual);

    py::class_<BoundaryFunctions>(m, "BoundaryFunctions")
        .def(py::init([](const ModelParams& p, int max_order) {
                 BoundaryOptions opt;
                 opt.max_order = max_order;
                 return std::make_unique<BoundaryFunctions>(p, opt);
             }),
             py::arg("params"), py::arg("max_order") = 4)
        .def("u", &BoundaryFunctions::u, py::arg("l"))
        .def("J", &BoundaryFunctions::J, py::arg("x"))
        .def("rho0", &BoundaryFunctions::rho0, py::arg("x"))
        .def("varpi", &BoundaryFunctions::varpi, py::arg("l"), py::arg("x"))
        .def("b_func", &BoundaryFunctions::b_func, py::arg("l"), py::arg("x"))
        .def("a_func", &BoundaryFunctions::a_func, py::arg("l"), py::arg("x"))
        .def("a0_series", &BoundaryFunctions::a0_series, py::arg("x"))
        .def("a0_integral", &BoundaryFunctions::a0_integral, py::arg("x"))
        .def("frak_c", &BoundaryFunctions::frak_c, py::arg("x"))
        .def("r_func", &BoundaryFunctions::r_func, py::arg("x"))
        .def("daleth_p_rotated", &BoundaryFunctions::daleth_p_rotated, py::arg("p"))
        .def("daleth_sl", &BoundaryFunctions::daleth_sl, py::arg("s"), py::arg("l"))
        .def("gimel", &BoundaryFunctions::gimel, py::arg("n"))
        .def("aleph0", [](const BoundaryFunctions& bf) { return bf.aleph0().value; });

    m.def("kernel_S", &kernel_S, py::arg("params"), py::arg("x"));
    m.def("kernel_sN", &kernel_sN, py::arg("params"), py::arg("N"), py::arg("x"));

    m.def("endpoints_infinite", [](const Potential& V, const ModelParams& p) { return endpoints_infinite(V, p); },
          py::arg("V"), py::arg("params"));
    m.def("endpoints_N", &endpoints_N, py::arg("V"), py::arg("params"), py::arg("bf"), py::arg("N"),
          py::arg("order") = 3);
    m.def("free_energy_leading", &free_energy_leading, py::arg("V"), py::arg("params"));
    m.def(
        "density_infinite",
        [](const Potential& V, const ModelParams& p, const std::vector<double>& xi) {
            const auto d = equilibrium_density_infinite(V, p);
            std::vector<double> out;
            out.reserve(xi.size());
            for (double x : xi) out.push_back(d(x));
            return out;
        },
        py::arg("V"), py::arg("params"), py::arg("xi"));

    m.def(
        "gaussian_logZ_exact",
        [](double g, double t, const ModelParams& p, double N) { return gaussian_logZ_exact({g, t, p, N}); },
        py::arg("g"), py::arg("t"), py::arg("params"), py::arg("N"));
    m.def(
        "gaussian_logZ_asymptotic",
        [](double g, double t, const ModelParams& p, double N, bool pole) {
            return report_dict(gaussian_logZ_asymptotic({g, t, p, N}, pole));
        },
        py::arg("g"), py::arg("t"), py::arg("params"), py::arg("N"), py::arg("include_pole_correction") = true);
    m.def(
        "gaussian_asymptotic_residual",
        [](double g, double t, const ModelParams& p, double N, bool pole) {
            return gaussian_asymptotic_residual({g, t, p, N}, pole);
        },
        py::arg("g"), py::arg("t"), py::arg("params"), py::arg("N"), py::arg("include_pole_correction") = true);
    m.def(
        "mellin_M_log",
        [](int r, double a, double tau) {
            const auto res = mellin_M_log(r, a, tau);
            return std::make_pair(res.direct, res.asymptotic);
        },
        py::arg("r"), py::arg("a"), py::arg("tau"));
    m.def("matched_gaussian", &matched_gaussian, py::arg("a_N"), py::arg("b_N"), py::arg("N"), py::arg("params"));

    m.def(
        "main_expansion",
        [](const Potential& V, const ModelParams& p, const BoundaryFunctions& bf, double N, int order) {
            const auto e = main_expansion(V, p, bf, N, order);
            py::dict out = report_dict(e.report);
            out["support"] = e.support;
            out["g_N"] = e.g_N;
            out["t_N"] = e.t_N;
            out["matched"] = e.matched;
            out["logZ_gaussian"] = e.logZ_gaussian;
            out["logZ_absolute"] = e.logZ_absolute;
            return out;
        },
        py::arg("V"), py::arg("params"), py::arg("bf"), py::arg("N"), py::arg("order") = 3);

    m.def(
        "logZ_quadrature",
        [](const Potential& V, const ModelParams& p, int N, double rel_tol) {
            QuadOracleOptions opt;
            opt.rel_tol = rel_tol;
            const auto r = logZ_quadrature(V, p, N, opt);
            return std::make_pair(r.logZ, r.error_estimate);
        },
        py::arg("V"), py::arg("params"), py::arg("N"), py::arg("rel_tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "logZ_ratio_mc",
        [](const Potential& V1, const Potential& V0, const ModelParams& p, int N, long samples, int chains,
           int t_nodes, unsigned long long seed) {
            MCOptions opt;
            opt.samples = samples;
            opt.chains = chains;
            opt.t_nodes = t_nodes;
            opt.seed = seed;
            const auto r = logZ_ratio_mc(V1, V0, p, N, opt);
            return std::make_pair(r.logZ, r.error_estimate);
        },
        py::arg("V1"), py::arg("V0"), py::arg("params"), py::arg("N"), py::arg("samples") = 20000,
        py::arg("chains") = 4, py::arg("t_nodes") = 8, py::arg("seed") = 12345,
        py::call_guard<py::gil_scoped_release>());

    m.attr("CRITERION_COUNT") = kCriterionCount;
    m.def(
        "run_criterion",
        [](int id) {
            CriterionResult r;
            {
                py::gil_scoped_release nogil;
                r = run_criterion(id);
            }
            py::dict out;
            out["id"] = r.id;
            out["title"] = r.title;
            out["pass"] = r.pass;
            out["summary"] = r.summary;
            out["details"] = r.details;
            out["seconds"] = r.seconds;
            out["line"] = format_result_line(r);
            return out;
        },
        py::arg("id"));
}
