#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctwalk/classical.hpp"
#include "ctwalk/graph.hpp"
#include "ctwalk/graph_json.hpp"
#include "ctwalk/quantum.hpp"
#include "ctwalk/spectral.hpp"

namespace py = pybind11;
using namespace ctwalk;

namespace {

Method parse_method(const std::string& name) {
    if (name == "closed_form") return Method::closed_form;
    if (name == "spectral") return Method::spectral;
    throw argument_error("method must be 'closed_form' or 'spectral'");
}

} // namespace

PYBIND11_MODULE(ctwalk, m) {
    m.doc() = "Continuous-time quantum and classical walks on threshold graphs";

    py::register_exception<error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<argument_error>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<precondition_error>(m, "PreconditionError",
                                               PyExc_RuntimeError);
    py::register_exception<coverage_error>(m, "CoverageError",
                                           PyExc_RuntimeError);
    py::register_exception<consistency_error>(m, "ConsistencyError",
                                              PyExc_RuntimeError);

    py::class_<ThresholdGraph>(m, "ThresholdGraph")
        .def_property_readonly("n", &ThresholdGraph::n)
        .def_property_readonly("theta", &ThresholdGraph::theta)
        .def_property_readonly("x", &ThresholdGraph::hidden_values)
        .def_property_readonly(
            "k_runs",
            [](const ThresholdGraph& g) { return g.blocks().k_runs(); })
        .def_property_readonly(
            "l_runs",
            [](const ThresholdGraph& g) { return g.blocks().l_runs(); })
        .def_property_readonly("order", &ThresholdGraph::order)
        .def_property_readonly("connected", &ThresholdGraph::connected)
        .def_property_readonly("edge_count", &ThresholdGraph::edge_count)
        .def("edges", &ThresholdGraph::edge_list)
        .def("adjacent", &ThresholdGraph::adjacent, py::arg("u"), py::arg("w"))
        .def("degree", &ThresholdGraph::degree, py::arg("v"))
        .def(
            "level",
            [](const ThresholdGraph& g, index_t v) {
                const LevelPart lp = g.level_of(v);
                return py::make_tuple(lp.level, lp.part);
            },
            py::arg("v"), "Returns (level, part) of a canonical vertex")
        .def("start_vertex", &ThresholdGraph::start_vertex, py::arg("part"))
        .def(
            "complete_split",
            [](const ThresholdGraph& g) -> py::object {
                auto split = g.complete_split();
                if (!split) return py::none();
                return py::make_tuple(split->first, split->second);
            },
            "(clique size, null size) or None")
        .def("to_json",
             [](const ThresholdGraph& g) { return graph_to_json(g); });

    m.def(
        "generate_bernoulli",
        [](index_t n, double p, double theta, std::uint64_t seed) {
            return generate(HiddenVariableConfig::bernoulli(n, p, theta, seed));
        },
        py::arg("n"), py::arg("p") = 0.5, py::arg("theta") = 0.5,
        py::arg("seed") = 0);
    m.def(
        "generate_uniform",
        [](index_t n, double lo, double hi, double theta, std::uint64_t seed) {
            return generate(
                HiddenVariableConfig::uniform(n, lo, hi, theta, seed));
        },
        py::arg("n"), py::arg("lo") = 0.0, py::arg("hi") = 1.0,
        py::arg("theta") = 0.5, py::arg("seed") = 0);
    m.def(
        "generate_explicit",
        [](std::vector<double> values, double theta) {
            return generate(
                HiddenVariableConfig::explicit_values(std::move(values), theta));
        },
        py::arg("values"), py::arg("theta") = 0.0);

    m.def("creation_sequence", &creation_sequence, py::arg("values"),
          py::arg("theta"));
    m.def("graph_from_json", &graph_from_json, py::arg("text"));
    m.def("load_graph", &load_graph, py::arg("path"));
    m.def("save_graph", &save_graph, py::arg("graph"), py::arg("path"));

    m.def(
        "spectrum",
        [](const ThresholdGraph& g) {
            return SpectralDecomposition(g).spectrum();
        },
        py::arg("graph"), "List of (eigenvalue, multiplicity), ascending");

    m.def(
        "quantum_evolve",
        [](const ThresholdGraph& g, index_t start, double t,
           const std::string& method) {
            return quantum::evolve(g, start, t, parse_method(method)).amplitudes;
        },
        py::arg("graph"), py::arg("start"), py::arg("t"),
        py::arg("method") = "closed_form");
    m.def(
        "quantum_probability",
        [](const ThresholdGraph& g, index_t start, double t,
           const std::string& method) {
            return quantum::probability(g, start, t, parse_method(method)).masses;
        },
        py::arg("graph"), py::arg("start"), py::arg("t"),
        py::arg("method") = "closed_form");
    m.def(
        "quantum_time_averaged",
        [](const ThresholdGraph& g, index_t start) {
            return quantum::time_averaged(g, start).masses;
        },
        py::arg("graph"), py::arg("start"));
    m.def("propagator_entry_binary", &quantum::propagator_entry_binary,
          py::arg("graph"), py::arg("v"), py::arg("w"), py::arg("t"));
    m.def("propagator_entry_general", &quantum::propagator_entry_general,
          py::arg("graph"), py::arg("v"), py::arg("w"), py::arg("t"));

    m.def(
        "classical_evolve",
        [](const ThresholdGraph& g, index_t start, double t) {
            return classical::evolve(g, start, t).masses;
        },
        py::arg("graph"), py::arg("start"), py::arg("t"));
    m.def(
        "classical_time_average",
        [](const ThresholdGraph& g, index_t start) {
            return classical::time_average(g, start).masses;
        },
        py::arg("graph"), py::arg("start"));
}
