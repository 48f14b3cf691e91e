// Python bindings for the main operations. Structured data crosses the
// boundary as JSON text; the trophom package wraps these in dict-level
// helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trophom/errors.hpp"
#include "trophom/selftest.hpp"
#include "trophom/spectral.hpp"

namespace py = pybind11;
using namespace trophom;

namespace {

PermGroup group_from_strings(const std::vector<std::string>& generators, int degree,
                             std::size_t cap) {
    std::vector<Permutation> gens;
    gens.reserve(generators.size());
    for (const std::string& s : generators) gens.push_back(Permutation::parse(s, degree));
    return PermGroup::closure(degree, std::move(gens), cap);
}

std::string homology_json(const std::vector<HomologyGroup>& groups) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t k = 0; k < groups.size(); ++k) {
        nlohmann::json h = homology_group_to_json(groups[k]);
        h["degree"] = k;
        j.push_back(std::move(h));
    }
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_trophom, m) {
    m.doc() = "exact integral homology of sphere quotients and tropical moduli spaces";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

    m.def(
        "parse_permutation",
        [](const std::string& text, int degree) {
            Permutation g = Permutation::parse(text, degree);
            std::vector<int> image(static_cast<std::size_t>(degree));
            for (int i = 0; i < degree; ++i) image[static_cast<std::size_t>(i)] = g.apply(i);
            return image;
        },
        py::arg("text"), py::arg("degree"));

    m.def(
        "group_order",
        [](const std::vector<std::string>& generators, int degree, std::size_t cap) {
            return group_from_strings(generators, degree, cap).order();
        },
        py::arg("generators"), py::arg("degree"), py::arg("cap") = kDefaultGroupCap);

    m.def(
        "contains_transposition",
        [](const std::vector<std::string>& generators, int degree, std::size_t cap) {
            return group_from_strings(generators, degree, cap).contains_transposition();
        },
        py::arg("generators"), py::arg("degree"), py::arg("cap") = kDefaultGroupCap);

    m.def(
        "smith_diagonal",
        [](std::size_t rows, std::size_t cols,
           const std::vector<std::tuple<std::size_t, std::size_t, long>>& entries) {
            SparseIntMatrix mat(rows, cols);
            for (const auto& [r, c, v] : entries) mat.add(r, c, Int(v));
            std::vector<long> out;
            for (const Int& d : smith_diagonal(mat)) out.push_back(d.get_si());
            return out;
        },
        py::arg("rows"), py::arg("cols"), py::arg("entries"));

    m.def(
        "sphere_quotient_homology",
        [](int p, const std::vector<std::string>& generators, int level, bool shortcut,
           std::size_t cap) {
            PermGroup group = group_from_strings(generators, p + 1, cap);
            SphereQuotientOptions opts;
            opts.level = level;
            opts.use_shortcut = shortcut;
            py::gil_scoped_release release;
            return homology_json(reduced_sphere_quotient_homology(p, group, opts));
        },
        py::arg("p"), py::arg("generators"), py::arg("level") = 1, py::arg("shortcut") = true,
        py::arg("cap") = kDefaultGroupCap);

    m.def(
        "sphere_quotient_homology_graph",
        [](const std::string& graph_json, int level, bool shortcut, std::size_t cap) {
            StableGraph graph = graph_from_json(nlohmann::json::parse(graph_json));
            PermGroup group = edge_group(graph, cap);
            SphereQuotientOptions opts;
            opts.level = level;
            opts.use_shortcut = shortcut;
            py::gil_scoped_release release;
            return homology_json(
                reduced_sphere_quotient_homology(graph.num_edges() - 1, group, opts));
        },
        py::arg("graph_json"), py::arg("level") = 1, py::arg("shortcut") = true,
        py::arg("cap") = kDefaultGroupCap);

    m.def(
        "enumerate_graphs",
        [](int genus, int n, int max_edges) {
            std::vector<StableGraph> graphs = max_edges > 0
                                                  ? enumerate_stable_graphs(genus, n, max_edges)
                                                  : enumerate_stable_graphs(genus, n);
            nlohmann::json j = nlohmann::json::array();
            for (const StableGraph& g : graphs) j.push_back(graph_to_json(g));
            return j.dump();
        },
        py::arg("genus"), py::arg("n") = 0, py::arg("max_edges") = 0);

    m.def(
        "in_bm",
        [](const std::string& graph_json) {
            return in_bm(graph_from_json(nlohmann::json::parse(graph_json)));
        },
        py::arg("graph_json"));

    m.def(
        "contract",
        [](const std::string& graph_json, int edge) {
            return graph_to_json(
                       contract(graph_from_json(nlohmann::json::parse(graph_json)), edge))
                .dump();
        },
        py::arg("graph_json"), py::arg("edge"));

    m.def(
        "edge_group_order",
        [](const std::string& graph_json, std::size_t cap) {
            return edge_group(graph_from_json(nlohmann::json::parse(graph_json)), cap).order();
        },
        py::arg("graph_json"), py::arg("cap") = kDefaultGroupCap);

    m.def(
        "isomorphic",
        [](const std::string& a, const std::string& b) {
            return isomorphic(graph_from_json(nlohmann::json::parse(a)),
                              graph_from_json(nlohmann::json::parse(b)));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "check_one_skeleton",
        [](int genus, int n) { return check_one_skeleton(genus, n); },
        py::arg("genus"), py::arg("n") = 0);

    m.def(
        "delta_report",
        [](int genus, int n, int level, int jobs) {
            SpectralOptions opts;
            opts.level = level;
            opts.jobs = jobs;
            py::gil_scoped_release release;
            return delta_report_to_json(delta_report(genus, n, opts)).dump();
        },
        py::arg("genus"), py::arg("n") = 0, py::arg("level") = 1, py::arg("jobs") = 1);

    m.attr("__version__") = "0.1.0";
}
