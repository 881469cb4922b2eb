// kronspec command-line front end.
#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "kronspec/estimators.hpp"
#include "kronspec/experiments.hpp"
#include "kronspec/graph.hpp"
#include "kronspec/random_graphs.hpp"
#include "kronspec/spectral.hpp"

using namespace kronspec;

namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

int cmd_generate(const std::string& model, std::size_t n, double density, std::uint64_t seed, double beta,
                 bool connected, const std::string& out) {
    GeneratorSpec spec{parse_graph_model(model), n, density, seed, beta};
    const Graph g = connected ? generate_connected(spec) : generate(spec);
    if (out.empty() || out == "-") {
        write_edge_list(std::cout, g);
    } else {
        save_edge_list(out, g);
    }
    std::cerr << describe(spec) << ": " << g.edge_count() << " edges, density " << edge_density(g) << '\n';
    return 0;
}

int cmd_estimate(const std::string& f1, const std::string& f2, const std::string& ordering_name,
                 std::uint64_t seed, const std::string& out) {
    const Graph g1 = load_edge_list(f1);
    const Graph g2 = load_edge_list(f2);
    Ordering ordering;
    ordering.kind = parse_ordering_kind(ordering_name);
    ordering.randomization_seed = seed;

    const auto d1 = g1.sorted_degrees();
    const auto d2 = g2.sorted_degrees();
    const auto say = sayama_spectrum(to_std(sym_eigvals(laplacian(g1))), d1, to_std(sym_eigvals(laplacian(g2))), d2,
                                     ordering).sorted_values();
    const auto nor = normalized_estimate(to_std(sym_eigvals(normalized_laplacian(g1))), d1,
                                         to_std(sym_eigvals(normalized_laplacian(g2))), d2, ordering)
                         .sorted_values();
    const Vector exact = sym_eigvals(laplacian(kronecker_graph(g1, g2)));

    std::ostringstream key;
    key << f1 << '|' << f2 << '|' << ordering_name << '|' << seed;
    std::ofstream file;
    if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) throw std::runtime_error("cannot write " + out);
    }
    std::ostream& os = file.is_open() ? file : std::cout;
    os << std::setprecision(17);
    os << "# kronspec " << version_string() << " config_hash=" << fnv1a_hex(key.str()) << '\n';
    os << "# meta ordering=" << ordering_name << " n1=" << g1.order() << " n2=" << g2.order() << '\n';
    os << "rank,sayama,normalized,exact\n";
    for (std::size_t k = 0; k < say.size(); ++k)
        os << k + 1 << ',' << say[k] << ',' << nor[k] << ',' << exact(static_cast<Eigen::Index>(k)) << '\n';
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& output_dir) {
    ExperimentConfig c = load_config(config_path);
    if (!output_dir.empty()) c.output_dir = output_dir;
    const ReportBundle b = run_experiment(c);
    for (const auto& f : write_bundle(b)) std::cout << (std::filesystem::path(c.output_dir) / f).string() << '\n';
    return 0;
}

int cmd_figure(const std::string& id, const std::string& output_dir, std::optional<std::size_t> runs,
               std::uint64_t seed, double beta) {
    FigureOptions opts;
    opts.runs = runs;
    opts.master_seed = seed;
    opts.ws_beta = beta;
    const auto manifest = reproduce_figure(id, output_dir, opts);
    std::cout << manifest.dump(2) << '\n';
    return 0;
}

int cmd_theory(const std::string& output_dir, std::uint64_t seed) {
    const auto report = theory_suite(output_dir, seed);
    for (const auto& [id, c] : report.at("checks").items())
        std::cout << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << id << '\n';
    return report.at("all_pass").get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker-product Laplacian spectrum estimation"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Emit a random graph as an edge list");
    std::string model = "ER", gen_out;
    std::size_t n = 30;
    double density = 0.1, beta = 0.25;
    std::uint64_t seed = 1;
    bool connected = false;
    gen->add_option("--model", model, "ER, WS or BA")->capture_default_str();
    gen->add_option("-n,--order", n, "Vertex count")->capture_default_str();
    gen->add_option("--density", density, "Target edge density")->capture_default_str();
    gen->add_option("--seed", seed)->capture_default_str();
    gen->add_option("--ws-beta", beta, "Watts-Strogatz rewiring probability")->capture_default_str();
    gen->add_flag("--connected", connected, "Redraw until connected");
    gen->add_option("-o,--output", gen_out, "Output path (default stdout)");

    auto* est = app.add_subcommand("estimate", "Estimated and exact product spectra for two edge lists");
    std::string f1, f2, ordering = "correlated", est_out;
    std::uint64_t est_seed = 0;
    est->add_option("first", f1)->required()->check(CLI::ExistingFile);
    est->add_option("second", f2)->required()->check(CLI::ExistingFile);
    est->add_option("--ordering", ordering)->capture_default_str();
    est->add_option("--seed", est_seed, "Seed for randomized orderings")->capture_default_str();
    est->add_option("-o,--output", est_out, "Output CSV (default stdout)");

    auto* exp = app.add_subcommand("experiment", "Run an experiment from a JSON config");
    std::string config_path, exp_dir;
    exp->add_option("config", config_path)->required()->check(CLI::ExistingFile);
    exp->add_option("-o,--output-dir", exp_dir, "Overrides output_dir from the config");

    auto* fig = app.add_subcommand("figure", "Reproduce the data behind a figure");
    std::string fig_id, fig_dir = "figures";
    std::optional<std::size_t> fig_runs;
    std::uint64_t fig_seed = 1;
    double fig_beta = 0.25;
    fig->add_option("id", fig_id)->required()->check(CLI::IsMember(figure_ids()));
    fig->add_option("-o,--output-dir", fig_dir)->capture_default_str();
    fig->add_option("--runs", fig_runs, "Override the run count");
    fig->add_option("--seed", fig_seed)->capture_default_str();
    fig->add_option("--ws-beta", fig_beta)->capture_default_str();

    auto* th = app.add_subcommand("theory", "Run the theory checks");
    std::string th_dir = "theory";
    std::uint64_t th_seed = 7;
    th->add_option("-o,--output-dir", th_dir)->capture_default_str();
    th->add_option("--seed", th_seed)->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*gen) return cmd_generate(model, n, density, seed, beta, connected, gen_out);
        if (*est) return cmd_estimate(f1, f2, ordering, est_seed, est_out);
        if (*exp) return cmd_experiment(config_path, exp_dir);
        if (*fig) return cmd_figure(fig_id, fig_dir, fig_runs, fig_seed, fig_beta);
        if (*th) return cmd_theory(th_dir, th_seed);
    } catch (const std::exception& e) {
        std::cerr << "kronspec: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
