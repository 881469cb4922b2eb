#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kronspec/experiments.hpp"
#include "kronspec/spectral.hpp"
#include "kronspec/theory.hpp"

namespace kronspec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json check(json inputs, json predicted, json observed, bool pass) {
    return {{"inputs", std::move(inputs)},
            {"predicted", std::move(predicted)},
            {"observed", std::move(observed)},
            {"pass", pass}};
}

Graph star(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t v = 1; v < n; ++v) e.emplace_back(0, v);
    return build_graph(n, e);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<Edge> e;
    for (std::size_t u = 0; u < a; ++u)
        for (std::size_t v = 0; v < b; ++v) e.emplace_back(u, a + v);
    return build_graph(a + b, e);
}

std::vector<double> as_double(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Connected ER factor pair with a connected product; orders in [lo, hi].
std::pair<Graph, Graph> random_pair(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> order(lo, hi);
    std::uniform_real_distribution<double> prob(0.25, 0.6);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        GeneratorSpec a{GraphModel::ER, order(rng), prob(rng), rng()};
        GeneratorSpec b{GraphModel::ER, order(rng), prob(rng), rng()};
        a.max_retries = b.max_retries = 1000;
        Graph g1 = generate_connected(a);
        Graph g2 = generate_connected(b);
        if (!is_bipartite(g1) || !is_bipartite(g2)) return {std::move(g1), std::move(g2)};
    }
    throw std::runtime_error("theory_suite: could not draw a product-connected pair");
}

json closed_forms() {
    json out;
    const auto s5 = star(5).degrees();
    const double star_obs = mean_rms_ratio(s5);
    out["mean_rms_star5"] = check({{"graph", "K1,4"}}, 0.8, star_obs, std::abs(star_obs - 0.8) < 1e-12);
    const auto k24 = complete_bipartite(2, 4).degrees();
    const double k24_pred = 2.0 * std::sqrt(8.0) / 6.0;
    const double k24_obs = mean_rms_ratio(k24);
    out["mean_rms_k2_4"] = check({{"graph", "K2,4"}}, k24_pred, k24_obs, std::abs(k24_obs - k24_pred) < 1e-12);
    const std::vector<std::size_t> regular(12, 4);
    out["mean_rms_regular"] = check({{"degrees", "4 x 12"}}, 1.0, mean_rms_ratio(regular), mean_rms_ratio(regular) == 1.0);

    const double r30 = expected_r1j(30, 0.1);
    const double r30_pred = std::sqrt(2.9 / 3.8);
    out["expected_r1j_30_0.1"] = check({{"n", 30}, {"p", 0.1}}, r30_pred, r30, std::abs(r30 - r30_pred) < 1e-12);

    const auto s4 = star(4).degrees();
    const double lb = rprime_lower_bound(s4, 1.0);
    out["rprime_bound_star4"] =
        check({{"graph", "K1,3"}, {"r", 1.0}}, 12.0 / std::sqrt(180.0), lb, std::abs(lb - 12.0 / std::sqrt(180.0)) < 1e-12);

    const auto stair = staircase_degrees(500);
    const double stair_obs = mean_rms_ratio(stair);
    const double stair_pred = std::sqrt(3.0) / 2.0;
    out["staircase_limit"] =
        check({{"k", 500}}, stair_pred, stair_obs, std::abs(stair_obs - stair_pred) <= 1e-3);
    return out;
}

json polynomial_grid() {
    double min_value = std::numeric_limits<double>::infinity();
    std::size_t violations = 0;
    std::size_t points = 0;
    for (std::size_t n = 1; n <= 500; ++n) {
        for (int step = 1; step <= 99; ++step) {
            const double p = step / 100.0;
            min_value = std::min(min_value, asymptotic_polynomial(static_cast<double>(n), p));
            if (!asymptotic_inequality_holds(n, p)) ++violations;
            ++points;
        }
    }
    return check({{"n", "1..500"}, {"p", "0.01..0.99 step 0.01"}, {"points", points}}, ">= 0",
                 {{"min_value", min_value}, {"violations", violations}}, violations == 0);
}

json expected_spectrum(std::size_t n1, std::size_t n2, double p) {
    const auto levels = expected_kron_normalized_spectrum(n1, n2);
    std::vector<double> predicted;
    for (const auto& l : levels) predicted.insert(predicted.end(), l.multiplicity, l.value);
    std::sort(predicted.begin(), predicted.end());

    const auto j_minus_i = [p](std::size_t n) {
        return Matrix(p * (Matrix::Ones(n, n) - Matrix::Identity(n, n)));
    };
    const SymMatrix w(kronecker_matrix(j_minus_i(n1), j_minus_i(n2)));
    const Vector observed = sym_eigvals(normalized_laplacian(w));
    double err = 0.0;
    for (std::size_t k = 0; k < predicted.size(); ++k)
        err = std::max(err, std::abs(predicted[k] - observed(static_cast<Eigen::Index>(k))));
    json lv = json::array();
    for (const auto& l : levels) lv.push_back({{"value", l.value}, {"multiplicity", l.multiplicity}});
    return check({{"n1", n1}, {"n2", n2}, {"p", p}}, lv, {{"max_abs_error", err}}, err <= 1e-8);
}

// Observed E[r(1,j)]: cosine for 1 (x) w_j in a product with a small partner.
double observed_r1j(std::size_t n, double p, std::uint64_t seed) {
    GeneratorSpec spec{GraphModel::ER, n, p, seed};
    spec.max_retries = 1000;
    const Graph g1 = generate_connected(spec);
    const Graph g2 = watts_strogatz(6, 4, 0.0, 0);
    const auto e1 = sym_eig(laplacian(g1));
    const auto e2 = sym_eig(laplacian(g2));
    Matrix b1 = e1.eigenvectors.leftCols(1);
    Matrix b2 = e2.eigenvectors.middleCols(1, 1);
    return correlation_profile_factored(g1, g2, b1, b2, false).front().r;
}

json r1j_grid(std::uint64_t seed) {
    json grid = json::array();
    bool ok = true;
    for (double p : {0.1, 0.3, 0.65}) {
        double prev = 0.0;
        for (std::size_t n : {30, 50, 100, 200}) {
            const double pred = expected_r1j(n, p);
            double mean = 0.0;
            const int draws = 20;
            for (int d = 0; d < draws; ++d) mean += observed_r1j(n, p, derive_seed(seed, n * 1000 + std::lround(p * 100), d));
            mean /= draws;
            ok = ok && pred > 0.0 && pred < 1.0 && pred > prev;
            prev = pred;
            grid.push_back({{"n", n}, {"p", p}, {"predicted", pred}, {"observed_mean", mean}, {"draws", draws}});
        }
    }
    // The limit formula ignores finite-n bias; observed values are informational.
    return check({{"n", {30, 50, 100, 200}}, {"p", {0.1, 0.3, 0.65}}}, "in (0,1), increasing in n", grid, ok);
}

json monte_carlo_r1j(std::uint64_t seed) {
    const std::size_t n = 200;
    const double p = 0.3;
    const int draws = 100;
    double mean = 0.0;
    for (int d = 0; d < draws; ++d) mean += observed_r1j(n, p, derive_seed(seed, 200, d));
    mean /= draws;
    const double pred = expected_r1j(n, p);
    return check({{"n", n}, {"p", p}, {"draws", draws}}, pred, mean, std::abs(mean - pred) <= 0.02);
}

json rprime_bound(std::mt19937_64& rng) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t pairs = 50, checked = 0;
    for (std::size_t t = 0; t < pairs; ++t) {
        auto [g1, g2] = random_pair(rng, 5, 20);
        const auto v1 = sym_eig(normalized_laplacian(g1));
        const auto v2 = sym_eig(normalized_laplacian(g2));
        const SymMatrix l2 = laplacian(g2);
        const auto deg1 = g1.degrees();
        const Matrix b1 = v1.eigenvectors.leftCols(1);
        const auto prof = correlation_profile_factored(g1, g2, b1, v2.eigenvectors, false);
        for (const auto& pc : prof) {
            const Vector vj = v2.eigenvectors.col(static_cast<Eigen::Index>(pc.j));
            const double rj = cosine(vj, l2.matrix() * vj);
            worst = std::min(worst, pc.r - rprime_lower_bound(deg1, std::max(rj, 0.0)));
            ++checked;
        }
    }
    return check({{"pairs", pairs}, {"orders", "5..20"}}, "slack >= -1e-9", {{"min_slack", worst}, {"checked", checked}},
                 worst >= -1e-9);
}

json sayama_sweep(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> order(3, 40);
    std::uniform_real_distribution<double> prob(0.15, 0.9);
    const std::size_t graphs = 10000;
    std::size_t bound_failures = 0;
    double min_estimate = std::numeric_limits<double>::infinity();
    Graph prev = build_graph(1, {});
    for (std::size_t t = 0; t < graphs; ++t) {
        GeneratorSpec spec{GraphModel::ER, order(rng), prob(rng), rng()};
        spec.max_retries = 10000;
        Graph g = generate_connected(spec);
        const auto mu = as_double(sym_eigvals(laplacian(g)));
        const auto d = g.sorted_degrees();
        if (!sayama_bound_holds(mu, d)) ++bound_failures;
        if (prev.order() > 1) {
            const auto mu0 = as_double(sym_eigvals(laplacian(prev)));
            const auto est = sayama_spectrum(mu0, prev.sorted_degrees(), mu, d, {}).sorted_values();
            min_estimate = std::min(min_estimate, est.front());
        }
        prev = std::move(g);
    }
    return check({{"graphs", graphs}, {"orders", "3..40"}}, "mu_i <= 2 d_i, estimates >= -1e-12",
                 {{"bound_failures", bound_failures}, {"min_estimate", min_estimate}},
                 bound_failures == 0 && min_estimate >= -1e-12);
}

json colinearity(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        auto [g1, g2] = random_pair(rng, 5, 20);
        const SymMatrix lk = laplacian(kronecker_graph(g1, g2));
        const auto w2 = sym_eig(laplacian(g2));
        const Vector ones = Vector::Ones(static_cast<Eigen::Index>(g1.order()));
        Vector d1(ones.size());
        for (Eigen::Index i = 0; i < d1.size(); ++i) d1(i) = static_cast<double>(g1.degree(static_cast<std::size_t>(i)));
        for (Eigen::Index j = 0; j < w2.eigenvalues.size(); ++j) {
            const Vector wj = w2.eigenvectors.col(j);
            const Vector lhs = lk.matrix() * kron_vec(ones, wj);
            const Vector rhs = w2.eigenvalues(j) * kron_vec(d1, wj);
            worst = std::max(worst, (lhs - rhs).norm());
        }
    }
    return check({{"pairs", 20}}, "residual <= 1e-8", {{"max_residual", worst}}, worst <= 1e-8);
}

json normalized_decomposition(std::mt19937_64& rng) {
    double eig_err = 0.0, vec_err = 0.0;
    for (int t = 0; t < 20; ++t) {
        auto [g1, g2] = random_pair(rng, 5, 20);
        const auto v1 = sym_eig(normalized_laplacian(g1));
        const auto v2 = sym_eig(normalized_laplacian(g2));
        const SymMatrix nk = normalized_laplacian(kronecker_graph(g1, g2));
        std::vector<double> pred;
        for (Eigen::Index i = 0; i < v1.eigenvalues.size(); ++i) {
            for (Eigen::Index j = 0; j < v2.eigenvalues.size(); ++j) {
                const double lam = 1.0 - (1.0 - v1.eigenvalues(i)) * (1.0 - v2.eigenvalues(j));
                pred.push_back(lam);
                const Vector x = kron_vec(v1.eigenvectors.col(i), v2.eigenvectors.col(j));
                vec_err = std::max(vec_err, (nk.matrix() * x - lam * x).norm());
            }
        }
        std::sort(pred.begin(), pred.end());
        const Vector obs = sym_eigvals(nk);
        for (std::size_t k = 0; k < pred.size(); ++k)
            eig_err = std::max(eig_err, std::abs(pred[k] - obs(static_cast<Eigen::Index>(k))));
    }
    return check({{"pairs", 20}}, "errors <= 1e-8", {{"max_eigenvalue_error", eig_err}, {"max_vector_residual", vec_err}},
                 eig_err <= 1e-8 && vec_err <= 1e-8);
}

}  // namespace

json theory_suite(const fs::path& output_dir, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    json report;
    report["version"] = version_string();
    report["seed"] = seed;
    json checks = closed_forms();
    checks["asymptotic_polynomial_grid"] = polynomial_grid();
    checks["expected_spectrum_3_3"] = expected_spectrum(3, 3, 0.5);
    checks["expected_spectrum_5_7"] = expected_spectrum(5, 7, 0.37);
    checks["expected_spectrum_30_50"] = expected_spectrum(30, 50, 0.1);
    checks["expected_r1j_grid"] = r1j_grid(seed);
    checks["monte_carlo_r1j_200_0.3"] = monte_carlo_r1j(seed);
    checks["rprime_lower_bound"] = rprime_bound(rng);
    checks["sayama_bound_sweep"] = sayama_sweep(rng);
    checks["colinearity"] = colinearity(rng);
    checks["normalized_decomposition"] = normalized_decomposition(rng);
    bool all = true;
    for (const auto& [id, c] : checks.items()) all = all && c.at("pass").get<bool>();
    report["checks"] = checks;
    report["all_pass"] = all;

    fs::create_directories(output_dir);
    std::ofstream out(output_dir / "theory_report.json");
    if (!out) throw std::runtime_error("cannot write theory_report.json in " + output_dir.string());
    out << report.dump(2) << '\n';
    return report;
}

}  // namespace kronspec
