#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kronspec/estimators.hpp"
#include "kronspec/experiments.hpp"
#include "kronspec/metrics.hpp"
#include "kronspec/random_graphs.hpp"
#include "kronspec/spectral.hpp"
#include "kronspec/theory.hpp"

namespace py = pybind11;
using namespace kronspec;

namespace {

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Ordering make_ordering(const std::string& kind, std::uint64_t seed, std::optional<std::size_t> swaps) {
    Ordering o;
    o.kind = parse_ordering_kind(kind);
    o.randomization_seed = seed;
    o.swap_count = swaps;
    return o;
}

py::dict spectrum_dict(const EstimatedSpectrum& s) {
    std::vector<double> values;
    std::vector<std::size_t> is, js;
    for (const auto& e : s.entries) {
        values.push_back(e.value);
        is.push_back(e.i);
        js.push_back(e.j);
    }
    py::dict d;
    d["values"] = values;
    d["i"] = is;
    d["j"] = js;
    d["sorted"] = s.sorted_values();
    d["method"] = to_string(s.method);
    d["ordering"] = to_string(s.ordering.kind);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kronecker-product Laplacian spectrum estimation";
    m.attr("__version__") = version_string();

    py::class_<Graph>(m, "Graph")
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("degrees", &Graph::degrees)
        .def_property_readonly("edges", &Graph::edges)
        .def("adjacent", &Graph::adjacent)
        .def("adjacency_matrix", &Graph::adjacency_matrix)
        .def("sorted_degrees", &Graph::sorted_degrees)
        .def("__eq__", &Graph::operator==)
        .def("__repr__", [](const Graph& g) {
            return "<Graph order=" + std::to_string(g.order()) + " edges=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("build_graph", [](std::size_t n, const std::vector<Edge>& edges) { return build_graph(n, edges); },
          py::arg("n"), py::arg("edges"));
    m.def("laplacian", [](const Graph& g) { return laplacian(g).matrix(); });
    m.def("normalized_laplacian", [](const Graph& g) { return normalized_laplacian(g).matrix(); });
    m.def("kronecker_graph", &kronecker_graph);
    m.def("kronecker_matrix", &kronecker_matrix);
    m.def("is_connected", &is_connected);
    m.def("is_bipartite", &is_bipartite);
    m.def("edge_density", &edge_density);
    m.def("load_edge_list", &load_edge_list);
    m.def("save_edge_list", &save_edge_list);

    m.def("erdos_renyi", &erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("watts_strogatz", &watts_strogatz, py::arg("n"), py::arg("k"), py::arg("beta"), py::arg("seed"));
    m.def("barabasi_albert", &barabasi_albert, py::arg("n"), py::arg("m_attach"), py::arg("seed"));
    m.def(
        "generate_connected",
        [](const std::string& model, std::size_t n, double density, std::uint64_t seed, double ws_beta,
           std::size_t max_retries) {
            return generate_connected({parse_graph_model(model), n, density, seed, ws_beta, max_retries});
        },
        py::arg("model"), py::arg("n"), py::arg("density"), py::arg("seed"), py::arg("ws_beta") = 0.25,
        py::arg("max_retries") = 100);

    m.def(
        "sym_eig",
        [](const Eigen::MatrixXd& a) {
            const auto e = sym_eig(SymMatrix(a));
            return py::make_tuple(e.eigenvalues, e.eigenvectors);
        },
        "Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix.");
    m.def("sym_eigvals", [](const Eigen::MatrixXd& a) { return sym_eigvals(SymMatrix(a)); });
    m.def("jacobi_eig", [](const Eigen::MatrixXd& a) {
        const auto e = jacobi_eig(SymMatrix(a));
        return py::make_tuple(e.eigenvalues, e.eigenvectors);
    });
    m.def("cosine", &cosine);
    m.def("kron_vec", &kron_vec);

    m.def(
        "sayama_spectrum",
        [](const std::vector<double>& mu1, const std::vector<double>& d1, const std::vector<double>& mu2,
           const std::vector<double>& d2, const std::string& ordering, std::uint64_t seed,
           std::optional<std::size_t> swaps) {
            return spectrum_dict(sayama_spectrum(mu1, d1, mu2, d2, make_ordering(ordering, seed, swaps)));
        },
        py::arg("mu1"), py::arg("d1"), py::arg("mu2"), py::arg("d2"), py::arg("ordering") = "correlated",
        py::arg("seed") = 0, py::arg("swap_count") = py::none());
    m.def(
        "normalized_estimate",
        [](const std::vector<double>& l1, const std::vector<double>& d1, const std::vector<double>& l2,
           const std::vector<double>& d2, const std::string& ordering, std::uint64_t seed,
           std::optional<std::size_t> swaps) {
            return spectrum_dict(normalized_estimate(l1, d1, l2, d2, make_ordering(ordering, seed, swaps)));
        },
        py::arg("lambda1"), py::arg("d1"), py::arg("lambda2"), py::arg("d2"), py::arg("ordering") = "correlated",
        py::arg("seed") = 0, py::arg("swap_count") = py::none());

    m.def(
        "percentage_errors",
        [](std::vector<double> est, const Eigen::VectorXd& actual, double zero_tol) {
            return percentage_errors(std::move(est), actual, zero_tol);
        },
        py::arg("estimated"), py::arg("actual"), py::arg("zero_tol") = 0.0);
    m.def(
        "correlation_profile",
        [](const Graph& g1, const Graph& g2, const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2, bool skip_first) {
            std::vector<std::tuple<std::size_t, std::size_t, double>> out;
            for (const auto& pc : correlation_profile_factored(g1, g2, b1, b2, skip_first)) out.emplace_back(pc.i, pc.j, pc.r);
            return out;
        },
        py::arg("g1"), py::arg("g2"), py::arg("basis1"), py::arg("basis2"), py::arg("skip_first") = true);
    m.def("percentile", &percentile);
    m.def(
        "kde",
        [](const std::vector<double>& s, std::size_t grid) {
            const auto c = kde(s, grid);
            return py::make_tuple(c.grid, c.density, c.bandwidth);
        },
        py::arg("samples"), py::arg("grid_size") = 512);
    m.def(
        "chi_squared_normality",
        [](const std::vector<double>& s, double alpha) {
            const auto r = chi_squared_normality(s, alpha);
            py::dict d;
            d["statistic"] = r.statistic;
            d["bins"] = r.bins;
            d["dof"] = r.dof;
            d["critical"] = r.critical;
            d["passed"] = r.passed;
            return d;
        },
        py::arg("samples"), py::arg("alpha") = 0.05);

    m.def("mean_rms_ratio", [](const std::vector<std::size_t>& d) { return mean_rms_ratio(d); });
    m.def("expected_r1j", &expected_r1j);
    m.def("rprime_lower_bound",
          [](const std::vector<std::size_t>& d, double r) { return rprime_lower_bound(d, r); });
    m.def("asymptotic_polynomial", &asymptotic_polynomial);
    m.def("expected_kron_normalized_spectrum", [](std::size_t n1, std::size_t n2) {
        std::vector<std::pair<double, std::size_t>> out;
        for (const auto& l : expected_kron_normalized_spectrum(n1, n2)) out.emplace_back(l.value, l.multiplicity);
        return out;
    });
    m.def("staircase_degrees", &staircase_degrees);

    m.def(
        "run_experiment",
        [](const py::object& config, bool write) {
            const ExperimentConfig c = config_from_json(from_python(config));
            ReportBundle b;
            {
                py::gil_scoped_release release;
                b = run_experiment(c);
                if (write) write_bundle(b);
            }
            py::dict out;
            out["config_hash"] = config_hash(c);
            py::dict profiles;
            for (const auto& [method, p] : b.profiles) {
                py::dict d;
                d["median"] = p.median;
                d["p5"] = p.p5;
                d["p95"] = p.p95;
                profiles[py::str(to_string(method))] = d;
            }
            out["profiles"] = profiles;
            py::dict normality;
            for (const auto& [basis, pc] : b.normality)
                normality[py::str(to_string(basis))] = py::make_tuple(pc.passed, pc.total);
            out["normality"] = normality;
            std::vector<double> d1, d2;
            for (const auto& r : b.runs) d1.push_back(r.density1), d2.push_back(r.density2);
            out["density1"] = d1;
            out["density2"] = d2;
            return out;
        },
        py::arg("config"), py::arg("write") = false,
        "Run an experiment from a config dict (same keys as the JSON config file).");
    m.def(
        "reproduce_figure",
        [](const std::string& id, const std::filesystem::path& dir, std::optional<std::size_t> runs,
           std::uint64_t seed) {
            FigureOptions o;
            o.runs = runs;
            o.master_seed = seed;
            nlohmann::json j;
            {
                py::gil_scoped_release release;
                j = reproduce_figure(id, dir, o);
            }
            return to_python(j);
        },
        py::arg("figure_id"), py::arg("output_dir"), py::arg("runs") = py::none(), py::arg("seed") = 1);
    m.def(
        "theory_suite",
        [](const std::filesystem::path& dir, std::uint64_t seed) {
            nlohmann::json j;
            {
                py::gil_scoped_release release;
                j = theory_suite(dir, seed);
            }
            return to_python(j);
        },
        py::arg("output_dir"), py::arg("seed") = 7);
}
