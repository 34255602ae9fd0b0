#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ldpgc/baseline_rr.hpp"
#include "ldpgc/count.hpp"
#include "ldpgc/error.hpp"
#include "ldpgc/graph.hpp"
#include "ldpgc/harness.hpp"
#include "ldpgc/mech_marked.hpp"
#include "ldpgc/mech_walk.hpp"
#include "ldpgc/oracle.hpp"
#include "ldpgc/pattern.hpp"

namespace py = pybind11;
using namespace ldpgc;

namespace {

// counts can exceed 64 bits; hand them to python as arbitrary-precision ints
py::int_ as_pyint(Count v) { return py::int_(py::str(count_to_string(v))); }

Graph graph_from_edges(std::size_t n,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    return Graph(n, edges);
}

Graph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

MarkedRunConfig make_cfg(double eps, int n_rep, bool noiseless, bool distinct,
                         std::optional<MarkVector> fixed_marks, std::uint64_t seed,
                         std::uint64_t trial) {
    MarkedRunConfig cfg;
    cfg.eps = eps;
    cfg.n_rep = n_rep;
    cfg.noiseless = noiseless;
    cfg.distinct = distinct;
    cfg.fixed_marks = std::move(fixed_marks);
    cfg.seed = seed;
    cfg.trial = trial;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "edge-LDP walk, path, and acyclic pattern counting";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("m", &Graph::m)
        .def("degree", &Graph::degree)
        .def("max_degree", &Graph::max_degree)
        .def("neighbors", &Graph::neighbors)
        .def("has_edge", &Graph::has_edge)
        .def("edge_list_text", [](const Graph& g) {
            std::ostringstream out;
            g.write_edge_list(out);
            return out.str();
        });

    m.def("load_edge_list", &graph_from_text, py::arg("text"));
    m.def("load_edge_list_file", &load_edge_list_file, py::arg("path"));
    m.def("gen_erdos_renyi", &gen_erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));

    py::class_<Pattern>(m, "Pattern")
        .def_readonly("vertex_count", &Pattern::vertex_count)
        .def_readonly("edges", &Pattern::edges)
        .def_property_readonly("k", &Pattern::k);

    py::class_<TreeForm>(m, "TreeForm")
        .def_readonly("k", &TreeForm::k)
        .def_readonly("root_vertex", &TreeForm::root_vertex)
        .def_readonly("subscript_of_vertex", &TreeForm::subscript_of_vertex)
        .def_readonly("parent", &TreeForm::parent)
        .def_readonly("children", &TreeForm::children)
        .def_readonly("leaf", &TreeForm::leaf)
        .def_readonly("subtree_edges", &TreeForm::subtree_edges)
        .def_readonly("sigma", &TreeForm::sigma)
        .def_property_readonly("rounds", [](const TreeForm& t) { return round_count(t); });

    m.def("parse_pattern", &parse_pattern, py::arg("spec"));
    m.def("formulate_tree", &formulate_tree, py::arg("pattern"),
          py::arg("root") = std::nullopt);
    m.def("automorphism_count", &automorphism_count, py::arg("pattern"));

    m.def("walk_count_oriented",
          [](const Graph& g, int k) { return as_pyint(walk_count_oriented(g, k)); });
    m.def("walk_count_unoriented",
          [](const Graph& g, int k) { return as_pyint(walk_count_unoriented(g, k)); });
    m.def(
        "path_count_oriented",
        [](const Graph& g, int k, std::uint64_t work_guard) {
            return as_pyint(path_count_oriented(g, k, work_guard));
        },
        py::arg("g"), py::arg("k"), py::arg("work_guard") = kDefaultPathWorkGuard);
    m.def(
        "pattern_count",
        [](const Graph& g, const Pattern& p, std::uint64_t work_guard) {
            return as_pyint(pattern_count(g, p, work_guard));
        },
        py::arg("g"), py::arg("pattern"), py::arg("work_guard") = kDefaultPathWorkGuard);
    m.def(
        "star_count",
        [](const Graph& g, int k, bool distinct) {
            return as_pyint(star_count(g, k, distinct ? StarMode::distinct
                                                      : StarMode::ordered));
        },
        py::arg("g"), py::arg("k"), py::arg("distinct") = true);
    m.def("marked_pattern_count",
          [](const Graph& g, const TreeForm& t, const MarkVector& marks) {
              return as_pyint(marked_pattern_count(g, t, marks));
          });

    py::class_<CommLedger>(m, "CommLedger")
        .def_readonly("bytes_node_to_node", &CommLedger::bytes_node_to_node)
        .def_readonly("bytes_node_to_analyzer", &CommLedger::bytes_node_to_analyzer)
        .def_readonly("bytes_analyzer_to_node", &CommLedger::bytes_analyzer_to_node)
        .def("total_bytes", &CommLedger::total_bytes);

    py::class_<Estimate>(m, "Estimate")
        .def_readonly("value", &Estimate::value)
        .def_readonly("exact", &Estimate::exact)
        .def_readonly("eps_spent", &Estimate::eps_spent)
        .def_readonly("ledger", &Estimate::ledger)
        .def_readonly("rounds", &Estimate::rounds)
        .def("__repr__", [](const Estimate& e) {
            return "Estimate(value=" + std::to_string(e.value) + ")";
        });

    m.def(
        "run_walk",
        [](const Graph& g, int k, double eps, const std::string& variant, bool noiseless,
           bool unoriented, std::uint64_t seed, std::uint64_t trial) {
            WalkRunConfig cfg;
            cfg.k = k;
            cfg.eps = eps;
            cfg.noiseless = noiseless;
            cfg.unoriented = unoriented;
            cfg.seed = seed;
            cfg.trial = trial;
            if (variant != "basic" && variant != "opt")
                throw UsageError("walk variant must be 'basic' or 'opt'");
            return run_walk(g, variant == "basic" ? WalkVariant::basic : WalkVariant::opt,
                            cfg);
        },
        py::arg("g"), py::arg("k"), py::arg("eps"), py::arg("variant") = "opt",
        py::arg("noiseless") = false, py::arg("unoriented") = false, py::arg("seed") = 0,
        py::arg("trial") = 0);

    m.def(
        "run_path",
        [](const Graph& g, int k, double eps, int n_rep, bool noiseless, bool distinct,
           std::optional<MarkVector> fixed_marks, std::uint64_t seed, std::uint64_t trial) {
            auto cfg = make_cfg(eps, n_rep, noiseless, distinct, std::move(fixed_marks),
                                seed, trial);
            return run_with_reps(g, MarkedQuery::make_path(k), cfg);
        },
        py::arg("g"), py::arg("k"), py::arg("eps"), py::arg("n_rep") = 1,
        py::arg("noiseless") = false, py::arg("distinct") = false,
        py::arg("fixed_marks") = std::nullopt, py::arg("seed") = 0, py::arg("trial") = 0);

    m.def(
        "run_pattern",
        [](const Graph& g, const TreeForm& t, double eps, int n_rep, bool noiseless,
           bool distinct, std::optional<MarkVector> fixed_marks, std::uint64_t seed,
           std::uint64_t trial) {
            auto cfg = make_cfg(eps, n_rep, noiseless, distinct, std::move(fixed_marks),
                                seed, trial);
            return run_with_reps(g, MarkedQuery::make_pattern(t), cfg);
        },
        py::arg("g"), py::arg("tree"), py::arg("eps"), py::arg("n_rep") = 1,
        py::arg("noiseless") = false, py::arg("distinct") = false,
        py::arg("fixed_marks") = std::nullopt, py::arg("seed") = 0, py::arg("trial") = 0);

    m.def(
        "run_star",
        [](const Graph& g, int k, double eps, bool noiseless, bool distinct,
           std::uint64_t seed, std::uint64_t trial) {
            auto cfg = make_cfg(eps, 1, noiseless, distinct, std::nullopt, seed, trial);
            return run_star(g, k, cfg);
        },
        py::arg("g"), py::arg("k"), py::arg("eps"), py::arg("noiseless") = false,
        py::arg("distinct") = true, py::arg("seed") = 0, py::arg("trial") = 0);

    m.def(
        "run_rr",
        [](const Graph& g, const std::string& pattern_spec, double eps, bool distinct,
           std::uint64_t seed, std::uint64_t trial) {
            auto spec = parse_pattern_spec(pattern_spec);
            RrTarget target = [&] {
                switch (spec.kind) {
                    case ParsedPatternSpec::Kind::walk: return RrTarget::walk(spec.k);
                    case ParsedPatternSpec::Kind::path: return RrTarget::path(spec.k);
                    default: return RrTarget::from_pattern(*spec.pattern);
                }
            }();
            auto noisy = build_noisy_graph(g, eps, seed, trial);
            return rr_count(noisy, target, distinct);
        },
        py::arg("g"), py::arg("pattern"), py::arg("eps"), py::arg("distinct") = false,
        py::arg("seed") = 0, py::arg("trial") = 0);

    py::class_<ErrorDecomposition>(m, "ErrorDecomposition")
        .def_readonly("sampling_rel_err", &ErrorDecomposition::sampling_rel_err)
        .def_readonly("dp_rel_err", &ErrorDecomposition::dp_rel_err)
        .def_readonly("total_rel_err", &ErrorDecomposition::total_rel_err)
        .def_readonly("trimmed", &ErrorDecomposition::trimmed);

    m.def(
        "error_decompose",
        [](const Graph& g, const std::string& pattern_spec, double eps, int n_rep,
           int trials, double exact, bool distinct, std::uint64_t seed) {
            auto spec = parse_pattern_spec(pattern_spec);
            MarkedQuery query = [&] {
                switch (spec.kind) {
                    case ParsedPatternSpec::Kind::path:
                        return MarkedQuery::make_path(spec.k);
                    case ParsedPatternSpec::Kind::star:
                        return MarkedQuery::make_star(spec.k);
                    case ParsedPatternSpec::Kind::custom:
                        return MarkedQuery::make_pattern(formulate_tree(*spec.pattern));
                    default:
                        throw UsageError("error_decompose takes path/star/pattern targets");
                }
            }();
            auto cfg = make_cfg(eps, n_rep, false, distinct, std::nullopt, seed, 0);
            return error_decompose(g, query, cfg, trials, exact);
        },
        py::arg("g"), py::arg("pattern"), py::arg("eps"), py::arg("n_rep") = 1,
        py::arg("trials") = 10, py::arg("exact") = 1.0, py::arg("distinct") = false,
        py::arg("seed") = 0);
}
