#include "kronspec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kronspec/spectral.hpp"

#ifndef KRONSPEC_VERSION
#define KRONSPEC_VERSION "unknown"
#endif

namespace kronspec {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(FactorFamily f) {
    switch (f) {
        case FactorFamily::ER: return "ER";
        case FactorFamily::WS: return "WS";
        case FactorFamily::BA: return "BA";
        case FactorFamily::RingLattice: return "RING";
    }
    return "?";
}

FactorFamily parse_factor_family(const std::string& name) {
    if (name == "RING" || name == "ring") return FactorFamily::RingLattice;
    switch (parse_graph_model(name)) {
        case GraphModel::ER: return FactorFamily::ER;
        case GraphModel::WS: return FactorFamily::WS;
        case GraphModel::BA: return FactorFamily::BA;
    }
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::string to_string(Basis b) { return b == Basis::Laplacian ? "w" : "v"; }

std::string version_string() { return KRONSPEC_VERSION; }

namespace {

constexpr std::size_t kLargeProduct = 5000;

GraphModel generator_model(FactorFamily f) {
    switch (f) {
        case FactorFamily::ER: return GraphModel::ER;
        case FactorFamily::WS: return GraphModel::WS;
        case FactorFamily::BA: return GraphModel::BA;
        case FactorFamily::RingLattice: break;
    }
    throw std::logic_error("ring lattice has no random generator");
}

GeneratorSpec factor_spec(const ExperimentConfig& c, std::size_t n, std::uint64_t seed) {
    GeneratorSpec s;
    s.model = generator_model(c.model);
    s.n = n;
    s.target_density = c.density;
    s.seed = seed;
    s.ws_beta = c.ws_beta;
    s.max_retries = c.max_retries;
    return s;
}

}  // namespace

void validate(const ExperimentConfig& c) {
    if (c.runs < 1) throw std::invalid_argument("config: runs must be at least 1");
    if (c.n1 < 2 || c.n2 < 2) throw std::invalid_argument("config: orders must be at least 2");
    if (c.max_retries < 1) throw std::invalid_argument("config: max_retries must be at least 1");
    if (c.kde_grid_size < 2) throw std::invalid_argument("config: kde_grid_size must be at least 2");
    if (c.n1 * c.n2 > kLargeProduct && !c.allow_large) {
        throw std::invalid_argument("config: product order " + std::to_string(c.n1 * c.n2) +
                                    " needs allow_large (multi-hour dense eigensolves)");
    }
    if (!c.ordering.randomized() && c.ordering.swap_count.value_or(0) != 0) {
        throw std::invalid_argument("config: swap_count is only meaningful for randomized orderings");
    }
    if (c.model == FactorFamily::RingLattice) {
        if (c.n1 < 5 || c.n2 < 5) throw std::invalid_argument("config: ring lattice factors need order >= 5");
        return;
    }
    if (!(c.ws_beta >= 0.0 && c.ws_beta <= 1.0)) throw std::invalid_argument("config: ws_beta must lie in [0,1]");
    for (std::size_t n : {c.n1, c.n2}) density_to_params(factor_spec(c, n, 0));
}

json to_json(const ExperimentConfig& c) {
    json est = json::array();
    for (auto e : c.estimators) est.push_back(to_string(e));
    json ordering = {{"kind", to_string(c.ordering.kind)}, {"seed", c.ordering.randomization_seed}};
    ordering["swap_count"] = c.ordering.swap_count ? json(*c.ordering.swap_count) : json(nullptr);
    return {
        {"model", to_string(c.model)},
        {"orders", {c.n1, c.n2}},
        {"density", c.density},
        {"runs", c.runs},
        {"estimators", est},
        {"ordering", ordering},
        {"correlations", c.correlations},
        {"master_seed", c.master_seed},
        {"output_dir", c.output_dir},
        {"ws_beta", c.ws_beta},
        {"max_retries", c.max_retries},
        {"kde_grid_size", c.kde_grid_size},
        {"allow_large", c.allow_large},
    };
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    if (j.contains("model")) c.model = parse_factor_family(j.at("model").get<std::string>());
    if (j.contains("orders")) {
        const auto& o = j.at("orders");
        if (!o.is_array() || o.size() != 2) throw std::invalid_argument("config: orders must be a pair [n1, n2]");
        c.n1 = o[0].get<std::size_t>();
        c.n2 = o[1].get<std::size_t>();
    }
    if (j.contains("density")) c.density = j.at("density").get<double>();
    if (j.contains("runs")) c.runs = j.at("runs").get<std::size_t>();
    if (j.contains("estimators")) {
        c.estimators.clear();
        for (const auto& e : j.at("estimators")) c.estimators.push_back(parse_estimator_method(e.get<std::string>()));
    }
    if (j.contains("ordering")) {
        const auto& o = j.at("ordering");
        if (o.is_string()) {
            c.ordering.kind = parse_ordering_kind(o.get<std::string>());
        } else {
            if (o.contains("kind")) c.ordering.kind = parse_ordering_kind(o.at("kind").get<std::string>());
            if (o.contains("seed")) c.ordering.randomization_seed = o.at("seed").get<std::uint64_t>();
            if (o.contains("swap_count") && !o.at("swap_count").is_null())
                c.ordering.swap_count = o.at("swap_count").get<std::size_t>();
        }
    }
    if (j.contains("correlations")) c.correlations = j.at("correlations").get<bool>();
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("ws_beta")) c.ws_beta = j.at("ws_beta").get<double>();
    if (j.contains("max_retries")) c.max_retries = j.at("max_retries").get<std::size_t>();
    if (j.contains("kde_grid_size")) c.kde_grid_size = j.at("kde_grid_size").get<std::size_t>();
    if (j.contains("allow_large")) c.allow_large = j.at("allow_large").get<bool>();
    validate(c);
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    return config_from_json(json::parse(in));
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << h;
    return s.str();
}

std::string config_hash(const ExperimentConfig& c) {
    json j = to_json(c);
    j.erase("output_dir");
    return fnv1a_hex(j.dump());
}

std::size_t worker_count() {
    if (const char* env = std::getenv("KRONSPEC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

FactorPair generate_factor_pair(const ExperimentConfig& c, std::size_t run) {
    if (c.model == FactorFamily::RingLattice) {
        return {watts_strogatz(c.n1, 4, 0.0, 0), watts_strogatz(c.n2, 4, 0.0, 0), 0, 0};
    }
    for (std::size_t attempt = 0; attempt < c.max_retries; ++attempt) {
        const std::uint64_t s1 = derive_seed(c.master_seed, run, 2 * attempt + 1);
        const std::uint64_t s2 = derive_seed(c.master_seed, run, 2 * attempt + 2);
        Graph g1 = generate_connected(factor_spec(c, c.n1, s1));
        Graph g2 = generate_connected(factor_spec(c, c.n2, s2));
        // The product of connected graphs is connected iff a factor is non-bipartite.
        if (!is_bipartite(g1) || !is_bipartite(g2)) return {std::move(g1), std::move(g2), s1, s2};
    }
    throw std::runtime_error("run " + std::to_string(run) + ": no factor pair with a connected product after " +
                             std::to_string(c.max_retries) + " attempts");
}

namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

RunRecord execute_run(const ExperimentConfig& c, std::size_t run) {
    const auto start = std::chrono::steady_clock::now();
    FactorPair pair = generate_factor_pair(c, run);
    RunRecord rec;
    rec.run = run;
    rec.seed1 = pair.seed1;
    rec.seed2 = pair.seed2;
    rec.density1 = edge_density(pair.g1);
    rec.density2 = edge_density(pair.g2);

    const auto lap1 = sym_eig(laplacian(pair.g1));
    const auto lap2 = sym_eig(laplacian(pair.g2));
    const auto nor1 = sym_eig(normalized_laplacian(pair.g1));
    const auto nor2 = sym_eig(normalized_laplacian(pair.g2));

    if (!c.estimators.empty()) {
        const Vector actual = sym_eigvals(laplacian(kronecker_graph(pair.g1, pair.g2)));
        const auto d1 = pair.g1.sorted_degrees();
        const auto d2 = pair.g2.sorted_degrees();
        Ordering ordering = c.ordering;
        ordering.randomization_seed = derive_seed(c.ordering.randomization_seed, run);
        for (auto method : c.estimators) {
            const EstimatedSpectrum est =
                method == EstimatorMethod::SayamaLaplacian
                    ? sayama_spectrum(to_std(lap1.eigenvalues), d1, to_std(lap2.eigenvalues), d2, ordering)
                    : normalized_estimate(to_std(nor1.eigenvalues), d1, to_std(nor2.eigenvalues), d2, ordering);
            try {
                rec.errors[method] = percentage_errors(est, actual);
            } catch (const DisconnectedProductError& e) {
                throw std::runtime_error("run " + std::to_string(run) + ": " + e.what());
            }
        }
    }
    if (c.correlations) {
        rec.correlations[Basis::Laplacian] =
            correlation_profile_factored(pair.g1, pair.g2, lap1.eigenvectors, lap2.eigenvectors);
        rec.correlations[Basis::Normalized] =
            correlation_profile_factored(pair.g1, pair.g2, nor1.eigenvectors, nor2.eigenvectors);
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

ReportBundle run_experiment(const ExperimentConfig& c) {
    validate(c);
    ReportBundle bundle;
    bundle.config = c;
    bundle.runs.resize(c.runs);

    const std::size_t workers = std::min(worker_count(), c.runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t r = next++; r < c.runs; r = next++) {
            try {
                bundle.runs[r] = execute_run(c, r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = c.runs;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (auto method : c.estimators) {
        std::vector<std::vector<double>> errs;
        errs.reserve(c.runs);
        for (const auto& r : bundle.runs) errs.push_back(r.errors.at(method));
        ErrorProfile p = aggregate_profile(errs);
        p.meta = {{"estimator", to_string(method)},
                  {"ordering", to_string(c.ordering.kind)},
                  {"model", to_string(c.model)},
                  {"density", std::to_string(c.density)},
                  {"orders", std::to_string(c.n1) + "x" + std::to_string(c.n2)},
                  {"runs", std::to_string(c.runs)},
                  {"percentile", "linear"}};
        bundle.profiles.emplace(method, std::move(p));
    }
    if (c.correlations) {
        for (auto basis : {Basis::Laplacian, Basis::Normalized}) {
            std::vector<double> pooled;
            std::map<PairKey, std::vector<double>> per_pair;
            for (const auto& r : bundle.runs) {
                for (const auto& pc : r.correlations.at(basis)) {
                    pooled.push_back(pc.r);
                    per_pair[{pc.i, pc.j}].push_back(pc.r);
                }
            }
            bundle.curves.emplace(basis, kde(pooled, c.kde_grid_size));
            if (c.runs >= 30) bundle.normality.emplace(basis, normality_pass_count(per_pair, 0.05));
        }
    }
    return bundle;
}

namespace {

std::string csv_preamble(const ExperimentConfig& c, const std::map<std::string, std::string>& meta) {
    std::ostringstream s;
    s << "# kronspec " << version_string() << " config_hash=" << config_hash(c) << '\n';
    s << "# meta";
    for (const auto& [k, v] : meta) s << ' ' << k << '=' << v;
    s << '\n';
    return s.str();
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    return out;
}

double mean_abs(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<fs::path> write_bundle(const ReportBundle& b) {
    const ExperimentConfig& c = b.config;
    const fs::path dir(c.output_dir);
    fs::create_directories(dir);
    std::vector<fs::path> written;

    for (const auto& [method, profile] : b.profiles) {
        const fs::path file = dir / ("errors_" + to_string(method) + ".csv");
        auto out = open_output(file);
        out << csv_preamble(c, profile.meta);
        out << "rank,median,p5,p95\n";
        for (std::size_t k = 0; k < profile.ranks(); ++k)
            out << k + 2 << ',' << profile.median[k] << ',' << profile.p5[k] << ',' << profile.p95[k] << '\n';
        written.push_back(file.filename());
    }
    for (const auto& [basis, curve] : b.curves) {
        const fs::path file = dir / ("kde_" + to_string(basis) + ".csv");
        auto out = open_output(file);
        std::ostringstream bw;
        bw << std::setprecision(17) << curve.bandwidth;
        out << csv_preamble(c, {{"basis", to_string(basis)},
                                {"model", to_string(c.model)},
                                {"density", std::to_string(c.density)},
                                {"orders", std::to_string(c.n1) + "x" + std::to_string(c.n2)},
                                {"runs", std::to_string(c.runs)},
                                {"bandwidth", bw.str()},
                                {"pooling", "all-pairs-all-runs"}});
        out << "x,density\n";
        for (std::size_t g = 0; g < curve.grid.size(); ++g) out << curve.grid[g] << ',' << curve.density[g] << '\n';
        written.push_back(file.filename());
    }
    {
        const fs::path file = dir / "runs.csv";
        auto out = open_output(file);
        out << csv_preamble(c, {{"model", to_string(c.model)}, {"ws_beta", std::to_string(c.ws_beta)}});
        out << "run,seed1,seed2,density1,density2\n";
        for (const auto& r : b.runs)
            out << r.run << ',' << r.seed1 << ',' << r.seed2 << ',' << r.density1 << ',' << r.density2 << '\n';
        written.push_back(file.filename());
    }

    json report;
    report["version"] = version_string();
    report["config"] = to_json(c);
    report["config_hash"] = config_hash(c);
    double dsum = 0.0;
    for (const auto& r : b.runs) dsum += 0.5 * (r.density1 + r.density2);
    report["achieved_density_mean"] = dsum / static_cast<double>(b.runs.size());
    report["target_density"] = c.density;
    for (const auto& [method, p] : b.profiles) {
        report["errors"][to_string(method)] = {{"mean_abs_median", mean_abs(p.median)},
                                               {"max_abs_median", max_abs(p.median)},
                                               {"leading_median", p.median.empty() ? 0.0 : p.median.front()}};
    }
    for (const auto& [basis, pc] : b.normality) {
        report["normality"][to_string(basis)] = {{"passed", pc.passed}, {"total", pc.total}, {"alpha", 0.05}};
    }
    report["conventions"] = {
        {"percentile", "linear interpolation"},
        {"error_pairing", "sorted rank, rank 1 (matched zeros) dropped"},
        {"chi_squared", "Sturges bins over [min,max], open outer bins, merge expected<5, dof=bins-3 (min 1)"},
        {"kde", "Gaussian kernel, Silverman bandwidth, all pairs of all runs pooled"},
        {"factors", "both factors regenerated every run; product connected"},
        {"ws_beta", c.ws_beta},
        {"ba_core", "clique on m_attach+1 vertices"},
    };
    {
        const fs::path file = dir / "report.json";
        auto out = open_output(file);
        out << report.dump(2) << '\n';
        written.push_back(file.filename());
    }
    {
        json timing = json::array();
        for (const auto& r : b.runs) timing.push_back({{"run", r.run}, {"wall_seconds", r.wall_seconds}});
        auto out = open_output(dir / "timing.json");
        out << timing.dump(2) << '\n';
    }
    return written;
}

std::vector<std::string> figure_ids() { return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"}; }

json reproduce_figure(const std::string& id, const fs::path& output_dir, const FigureOptions& options) {
    struct FigureGrid {
        FactorFamily model;
        std::size_t n1, n2;
        std::vector<double> densities;
        bool errors;  // error-profile panels; otherwise KDE panels
    };
    static const std::map<std::string, FigureGrid> grids = {
        {"fig2", {FactorFamily::ER, 30, 50, {0.10, 0.30, 0.65}, false}},
        {"fig3", {FactorFamily::ER, 50, 100, {0.10}, false}},
        {"fig4", {FactorFamily::ER, 30, 50, {0.10, 0.30, 0.65}, true}},
        {"fig5", {FactorFamily::WS, 30, 50, {0.10, 0.30, 0.65}, false}},
        {"fig6", {FactorFamily::WS, 30, 50, {0.10, 0.30, 0.65}, true}},
        {"fig7", {FactorFamily::BA, 30, 50, {0.10, 0.30, 0.65}, false}},
        {"fig8", {FactorFamily::BA, 30, 50, {0.10, 0.30, 0.65}, true}},
    };
    const auto it = grids.find(id);
    if (it == grids.end()) throw std::invalid_argument("unknown figure id '" + id + "'");
    const FigureGrid& grid = it->second;

    json manifest;
    manifest["figure"] = id;
    manifest["model"] = to_string(grid.model);
    manifest["orders"] = {grid.n1, grid.n2};
    for (double density : grid.densities) {
        ExperimentConfig c;
        c.model = grid.model;
        c.n1 = grid.n1;
        c.n2 = grid.n2;
        c.density = density;
        c.runs = options.runs.value_or(grid.errors ? 100 : 5);
        c.master_seed = derive_seed(options.master_seed, static_cast<std::uint64_t>(std::lround(density * 100)));
        c.ws_beta = options.ws_beta;
        c.correlations = !grid.errors;
        if (!grid.errors) c.estimators.clear();
        const std::string tag = "density" + std::to_string(std::lround(density * 100));
        c.output_dir = (output_dir / tag).string();
        const ReportBundle bundle = run_experiment(c);
        write_bundle(bundle);
        if (grid.errors) {
            for (auto method : c.estimators)
                manifest["panels"][tag + "_" + to_string(method)] = tag + "/errors_" + to_string(method) + ".csv";
        } else {
            for (auto basis : {Basis::Laplacian, Basis::Normalized})
                manifest["panels"][tag + "_" + to_string(basis)] = tag + "/kde_" + to_string(basis) + ".csv";
        }
        manifest["runs"] = c.runs;
    }
    fs::create_directories(output_dir);
    std::ofstream out(output_dir / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest in " + output_dir.string());
    out << manifest.dump(2) << '\n';
    return manifest;
}

}  // namespace kronspec
