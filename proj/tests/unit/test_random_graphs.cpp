#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kronspec/random_graphs.hpp"

using namespace kronspec;

namespace {

std::string edge_text(const Graph& g) {
    std::ostringstream s;
    write_edge_list(s, g);
    return s.str();
}

}  // namespace

TEST_CASE("erdos_renyi is reproducible per seed") {
    CHECK(edge_text(erdos_renyi(40, 0.2, 99)) == edge_text(erdos_renyi(40, 0.2, 99)));
    CHECK_FALSE(erdos_renyi(40, 0.2, 99) == erdos_renyi(40, 0.2, 100));
}

TEST_CASE("erdos_renyi on two vertices with p near one") {
    int hits = 0;
    for (std::uint64_t s = 0; s < 100; ++s) hits += erdos_renyi(2, 0.999999, s).edge_count() == 1;
    CHECK(hits >= 99);
}

TEST_CASE("erdos_renyi degree moments, n=200 p=0.3") {
    const std::size_t n = 200;
    const double p = 0.3;
    const double mean_expected = (n - 1) * p;
    const double var_expected = (n - 1) * p * (1 - p);
    // Per-graph mean degree within 3 sigma of (n-1)p over 50 seeds.
    const double sigma = std::sqrt(var_expected) / std::sqrt(static_cast<double>(n));
    double sum = 0.0, sum2 = 0.0;
    std::size_t count = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const Graph g = erdos_renyi(n, p, s);
        double m = 0.0;
        for (auto d : g.degrees()) {
            m += static_cast<double>(d);
            sum += static_cast<double>(d);
            sum2 += static_cast<double>(d) * static_cast<double>(d);
            ++count;
        }
        m /= static_cast<double>(n);
        // Mean degree is 2|E|/n; its sd is sqrt(2) times the naive one since
        // each edge touches two vertices.
        if (s < 50) CHECK(std::abs(m - mean_expected) <= 3.0 * std::sqrt(2.0) * sigma);
    }
    const double mean = sum / static_cast<double>(count);
    const double var = sum2 / static_cast<double>(count) - mean * mean;
    CHECK(std::abs(mean - mean_expected) <= 0.1 * mean_expected);
    CHECK(std::abs(var - var_expected) <= 0.1 * var_expected);
}

TEST_CASE("watts_strogatz") {
    const Graph ring = watts_strogatz(12, 4, 0.0, 1);
    for (auto d : ring.degrees()) CHECK(d == 4);
    const Graph c6 = watts_strogatz(6, 2, 0.0, 1);
    CHECK(c6.edges() == std::vector<Edge>{{0, 1}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    for (std::uint64_t s = 0; s < 20; ++s) {
        CHECK(watts_strogatz(30, 6, 0.5, s).edge_count() == 90);
        CHECK(watts_strogatz(30, 8, 1.0, s).edge_count() == 120);
    }
    CHECK(edge_text(watts_strogatz(30, 6, 0.25, 5)) == edge_text(watts_strogatz(30, 6, 0.25, 5)));
    CHECK_THROWS_AS(watts_strogatz(10, 3, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(watts_strogatz(10, 10, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(watts_strogatz(10, 0, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(watts_strogatz(10, 4, 1.5, 0), std::invalid_argument);
}

TEST_CASE("barabasi_albert") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Graph tree = barabasi_albert(25, 1, s);
        CHECK(tree.edge_count() == 24);
        CHECK(is_connected(tree));
        const Graph g = barabasi_albert(50, 4, s);
        CHECK(g.edge_count() == barabasi_albert_edge_count(50, 4));
        CHECK(g.edge_count() == 10 + 45 * 4);
        CHECK(is_connected(g));
    }
    CHECK(barabasi_albert(40, 3, 8) == barabasi_albert(40, 3, 8));
    CHECK_THROWS_AS(barabasi_albert(5, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(barabasi_albert(5, 0, 0), std::invalid_argument);
}

TEST_CASE("density_to_params") {
    GeneratorSpec er{GraphModel::ER, 50, 0.10, 0};
    CHECK(std::get<ErParams>(density_to_params(er)).p == 0.10);

    GeneratorSpec ws{GraphModel::WS, 30, 0.30, 0};
    CHECK(std::get<WsParams>(density_to_params(ws)).k == 8);

    GeneratorSpec ba{GraphModel::BA, 50, 0.10, 0};
    std::size_t best = 0;
    double gap = 1e9;
    for (std::size_t m = 1; m <= 10; ++m) {
        const double e = m * (m + 1) / 2.0 + static_cast<double>((50 - m - 1) * m);
        const double g = std::abs(2.0 * e / 2450.0 - 0.10);
        if (g < gap) gap = g, best = m;
    }
    CHECK(std::get<BaParams>(density_to_params(ba)).m_attach == best);

    GeneratorSpec tiny{GraphModel::WS, 10, 0.05, 0};
    CHECK_THROWS_AS(density_to_params(tiny), std::invalid_argument);
    GeneratorSpec bad{GraphModel::ER, 10, 1.5, 0};
    CHECK_THROWS_AS(density_to_params(bad), std::invalid_argument);
}

TEST_CASE("generate_connected") {
    GeneratorSpec er{GraphModel::ER, 50, 0.3, 4};
    CHECK(is_connected(generate_connected(er)));

    GeneratorSpec ba{GraphModel::BA, 40, 0.2, 4};
    CHECK(generate_connected(ba) == generate(ba));

    GeneratorSpec sparse{GraphModel::ER, 30, 0.02, 4};
    sparse.max_retries = 3;
    CHECK_THROWS_AS(generate_connected(sparse), std::runtime_error);

    for (auto model : {GraphModel::ER, GraphModel::WS, GraphModel::BA}) {
        GeneratorSpec s{model, 30, 0.3, 12};
        CHECK(edge_text(generate_connected(s)) == edge_text(generate_connected(s)));
    }
}

TEST_CASE("derive_seed separates roles") {
    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
    CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));
}
