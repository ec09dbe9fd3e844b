#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwstar/asymptotics.hpp"
#include "qwstar/collapsed_walk.hpp"
#include "qwstar/full_walk.hpp"
#include "qwstar/graph.hpp"
#include "qwstar/spectral.hpp"
#include "qwstar/trace.hpp"

namespace py = pybind11;
using namespace qwstar;

namespace {

py::dict trace_dict(const ProbabilityTrace& trace) {
    std::vector<std::size_t> t;
    std::vector<double> p;
    std::vector<Complex> k, s;
    for (const auto& r : trace.rows) {
        t.push_back(r.t);
        p.push_back(r.p_vstar);
        k.push_back(r.psi_K_plus);
        s.push_back(r.psi_S_plus);
    }
    py::dict d;
    d["N"] = trace.metadata.clique_size;
    d["m"] = trace.metadata.leaf_count;
    d["mode"] = trace.metadata.mode;
    d["leaf_phase"] = std::string(to_string(trace.metadata.leaf_phase));
    d["t"] = t;
    d["p_vstar"] = p;
    d["psi_K_plus"] = k;
    d["psi_S_plus"] = s;
    return d;
}

LeafPhase parse_phase(const std::string& name) {
    if (name == "reverse") return LeafPhase::reversal;
    if (name == "plain") return LeafPhase::plain;
    throw py::value_error("leaf_phase must be 'reverse' or 'plain'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum-walk search on a complete graph with a glued star";
    m.attr("__version__") = kToolVersion;

    py::register_exception<std::overflow_error>(m, "OverflowError", PyExc_OverflowError);

    m.def("leaves_from_alpha", &leaves_from_alpha, py::arg("N"), py::arg("alpha"));
    m.def("class_sizes", &class_sizes, py::arg("N"), py::arg("m"));

    py::class_<GluedGraph>(m, "GluedGraph")
        .def(py::init<std::size_t, std::size_t>(), py::arg("N"), py::arg("m"))
        .def_property_readonly("clique_size", &GluedGraph::clique_size)
        .def_property_readonly("leaf_count", &GluedGraph::leaf_count)
        .def_property_readonly("vertex_count", &GluedGraph::vertex_count)
        .def_property_readonly("arc_count", &GluedGraph::arc_count)
        .def("degree", &GluedGraph::degree)
        .def("arc", [](const GluedGraph& g, ArcId a) {
            const Arc& arc = g.arc(a);
            return py::make_tuple(arc.origin, arc.terminus, arc.inverse, std::string(to_string(arc.cls)));
        });

    m.def(
        "simulate_full",
        [](std::size_t n, std::size_t leaves, std::size_t steps, const std::string& phase) {
            const GluedGraph g(n, leaves);
            ProbabilityTrace trace;
            {
                py::gil_scoped_release release;
                trace = evolve(g, initial_state(g), steps, parse_phase(phase));
            }
            trace.metadata.clique_size = n;
            trace.metadata.leaf_count = leaves;
            return trace_dict(trace);
        },
        py::arg("N"), py::arg("m"), py::arg("steps"), py::arg("leaf_phase") = "reverse");

    m.def(
        "simulate_collapsed",
        [](std::size_t n, std::size_t leaves, std::size_t steps, const std::string& phase) {
            const auto p = parse_phase(phase);
            auto trace = evolve_collapsed(build_reduced_operators(n, leaves, p), collapsed_initial_state(n, leaves), steps);
            trace.metadata.clique_size = n;
            trace.metadata.leaf_count = leaves;
            trace.metadata.leaf_phase = p;
            return trace_dict(trace);
        },
        py::arg("N"), py::arg("m"), py::arg("steps"), py::arg("leaf_phase") = "reverse");

    m.def(
        "simulate_closed", [](std::size_t n, std::size_t leaves, std::size_t steps) {
            return trace_dict(evolve_closed(n, leaves, steps));
        },
        py::arg("N"), py::arg("m"), py::arg("steps"));

    m.def(
        "reduced_operators",
        [](std::size_t n, std::size_t leaves, const std::string& phase) {
            const auto ops = build_reduced_operators(n, leaves, parse_phase(phase));
            py::dict d;
            d["S0"] = Eigen::MatrixXd(ops.shift);
            d["boundary"] = Eigen::MatrixXd(ops.boundary);
            d["U0"] = Eigen::MatrixXd(ops.evolution);
            d["T"] = Eigen::MatrixXd(ops.discriminant);
            return d;
        },
        py::arg("N"), py::arg("m"), py::arg("leaf_phase") = "reverse");

    m.def(
        "discriminant_angles",
        [](std::size_t n, std::size_t leaves) {
            const auto a = discriminant_angles(n, leaves);
            py::dict d;
            d["cos_theta_1"] = a.cos_theta_1;
            d["cos_theta_2"] = a.cos_theta_2;
            d["theta_1"] = a.theta_1;
            d["theta_2"] = a.theta_2;
            return d;
        },
        py::arg("N"), py::arg("m"));

    m.def(
        "spectrum",
        [](std::size_t n, std::size_t leaves) {
            const auto r = u_eigensystem(n, leaves);
            py::list pairs;
            for (std::size_t k = 0; k < 5; ++k) {
                const auto& e = r.eigenpairs[k];
                pairs.append(py::make_tuple(to_string(kEigenLabels[k]), e.value,
                                            Eigen::VectorXcd(e.vector), e.residual));
            }
            py::list flagged;
            for (const auto& a : r.audit)
                if (a.flagged) flagged.append(py::make_tuple(a.item, a.component, a.deviation));
            py::dict d;
            d["theta_1"] = r.angles.theta_1;
            d["theta_2"] = r.angles.theta_2;
            d["beta_sq"] = r.beta_sq;
            d["max_residual"] = r.max_residual();
            d["eigenpairs"] = pairs;
            d["flagged"] = flagged;
            return d;
        },
        py::arg("N"), py::arg("m"));

    m.def("closed_form_probability", &closed_form_probability, py::arg("N"), py::arg("m"), py::arg("t"));
    m.def("optimal_time_exact", &optimal_time_exact, py::arg("N"), py::arg("m"));
    m.def("optimal_time_branch", &optimal_time_branch, py::arg("N"), py::arg("alpha"));
    m.def("theta1_approx", &theta1_approx, py::arg("N"), py::arg("alpha"));
    m.def("probability_approx", &probability_approx, py::arg("N"), py::arg("alpha"), py::arg("t"));
    m.def(
        "exponent_fit",
        [](double alpha, const std::vector<std::size_t>& ns) {
            const auto f = exponent_fit(alpha, ns);
            py::dict d;
            d["alpha"] = f.alpha;
            d["samples"] = f.samples;
            d["fitted_exponent"] = f.fitted_exponent;
            d["theory_exponent"] = f.theory_exponent;
            d["fit_residual"] = f.fit_residual;
            return d;
        },
        py::arg("alpha"), py::arg("Ns"));
}
