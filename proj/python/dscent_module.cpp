#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dscent/centrality.hpp"
#include "dscent/error.hpp"
#include "dscent/graph.hpp"
#include "dscent/rank.hpp"
#include "dscent/simulate.hpp"
#include "dscent/spectral.hpp"

namespace py = pybind11;
using namespace dscent;

namespace {

SpreadParams params(double beta, double mu, int t) { return {beta, mu, t}; }

} // namespace

PYBIND11_MODULE(dscent, m) {
    m.doc() = "Dynamics-sensitive centrality, spreading simulation and rank scoring.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<Graph>(m, "Graph")
        .def_static("load_edge_list", [](const std::string& path) {
            return Graph::load_edge_list_file(path);
        }, py::arg("path"))
        .def_static("from_text", [](const std::string& text) {
            std::istringstream in(text);
            return Graph::load_edge_list(in);
        }, py::arg("text"))
        .def_static("from_edges", &Graph::from_edges, py::arg("node_count"),
                    py::arg("edges"))
        .def_property_readonly("n", &Graph::node_count)
        .def_property_readonly("e", &Graph::edge_count)
        .def_property_readonly("mean_degree", &Graph::mean_degree)
        .def("degree", &Graph::degree, py::arg("v"))
        .def("neighbors", [](const Graph& g, std::int32_t v) {
            auto nb = g.neighbors(v);
            return std::vector<std::int32_t>(nb.begin(), nb.end());
        }, py::arg("v"))
        .def("label", &Graph::label, py::arg("v"))
        .def("canonical_edge_list", &Graph::canonical_edge_list)
        .def("repairs", [](const Graph& g) {
            py::dict d;
            d["self_loops_dropped"] = g.repairs().self_loops_dropped;
            d["duplicate_edges_collapsed"] = g.repairs().duplicate_edges_collapsed;
            return d;
        })
        .def("__repr__", [](const Graph& g) {
            return "<dscent.Graph n=" + std::to_string(g.node_count()) +
                   " e=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("stats", [](const Graph& g) {
        const auto s = compute_stats(g, leading_eigenpair(g));
        py::dict d;
        d["n"] = s.n;
        d["e"] = s.e;
        d["mean_degree"] = s.mean_degree;
        d["inv_lambda1"] = s.inv_lambda1;
        return d;
    }, py::arg("graph"));

    m.def("leading_eigenpair", [](const Graph& g, double tol, std::int64_t max_iters) {
        const auto spec = leading_eigenpair(g, tol, max_iters);
        return py::make_tuple(spec.lambda1(), spec.q1());
    }, py::arg("graph"), py::arg("tol") = 1e-10, py::arg("max_iters") = 100000);

    m.def("degree_centrality",
          [](const Graph& g) { return degree_centrality(g).scores; }, py::arg("graph"));
    m.def("kshell_centrality",
          [](const Graph& g) { return kshell_centrality(g).scores; }, py::arg("graph"));
    m.def("eigenvector_centrality",
          [](const Graph& g) { return eigenvector_centrality(g).scores; },
          py::arg("graph"));

    m.def("ds_centrality", [](const Graph& g, double beta, double mu, int t) {
        return ds_centrality_iterative(g, params(beta, mu, t)).scores;
    }, py::arg("graph"), py::arg("beta"), py::arg("mu") = 1.0, py::arg("t") = 5);

    m.def("ds_centrality_closed_form", [](const Graph& g, double beta, double mu) {
        return ds_centrality_closed_form(g, params(beta, mu, 1)).scores;
    }, py::arg("graph"), py::arg("beta"), py::arg("mu") = 1.0);

    m.def("ds_centrality_spectral", [](const Graph& g, double beta, double mu, int t,
                                       std::int32_t size_cap) {
        const auto spec = full_spectrum(g, size_cap);
        return ds_centrality_spectral(g, spec, params(beta, mu, t)).scores;
    }, py::arg("graph"), py::arg("beta"), py::arg("mu") = 1.0, py::arg("t") = 5,
       py::arg("size_cap") = 2000);

    m.def("infection_probabilities", [](const Graph& g, std::int32_t seed, double beta,
                                        double mu, int t) {
        return infection_probabilities(g, seed, params(beta, mu, t)).scores;
    }, py::arg("graph"), py::arg("seed"), py::arg("beta"), py::arg("mu") = 1.0,
       py::arg("t") = 5);

    m.def("verify_recursion_identity", [](const Graph& g, double beta, double mu, int t,
                                          std::int32_t seed) {
        return verify_recursion_identity(g, params(beta, mu, t), seed);
    }, py::arg("graph"), py::arg("beta"), py::arg("mu"), py::arg("t"),
       py::arg("seed") = 0);

    m.def("estimate_influence", [](const Graph& g, double beta, double mu, int t,
                                   int runs, std::uint64_t rng_seed,
                                   const std::vector<std::int32_t>& seeds, int threads) {
        SimConfig cfg;
        cfg.params = params(beta, mu, t);
        cfg.runs_per_seed = runs;
        cfg.rng_seed = rng_seed;
        cfg.seeds = seeds;
        cfg.threads = threads;
        InfluenceEstimate est;
        {
            py::gil_scoped_release release;
            est = estimate_influence(g, cfg);
        }
        py::dict d;
        d["mean"] = est.mean_influence.scores;
        d["std_error"] = est.std_error;
        d["runs"] = est.runs;
        d["seeds"] = est.seeds;
        return d;
    }, py::arg("graph"), py::arg("beta"), py::arg("mu"), py::arg("t"), py::arg("runs"),
       py::arg("rng_seed") = 0, py::arg("seeds") = std::vector<std::int32_t>{},
       py::arg("threads") = 0);

    m.def("exact_influence", [](const Graph& g, std::int32_t seed, double beta, double mu,
                                int t) {
        return exact_influence_small(g, seed, params(beta, mu, t));
    }, py::arg("graph"), py::arg("seed"), py::arg("beta"), py::arg("mu"), py::arg("t"));

    m.def("kendall_tau", [](const std::vector<double>& y, const std::vector<double>& z) {
        return kendall_tau(y, z);
    }, py::arg("y"), py::arg("z"));
}
