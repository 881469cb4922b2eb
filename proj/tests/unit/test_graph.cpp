#include <doctest.h>

#include <random>
#include <sstream>

#include "kronspec/graph.hpp"
#include "kronspec/spectral.hpp"

using namespace kronspec;

namespace {

Graph k2() { return build_graph(2, std::vector<Edge>{{0, 1}}); }
Graph triangle() { return build_graph(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}); }
Graph star4() { return build_graph(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }

Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) e.emplace_back(u, v);
    return build_graph(n, e);
}

}  // namespace

TEST_CASE("build_graph small graphs") {
    CHECK(k2().degrees() == std::vector<std::size_t>{1, 1});
    CHECK(triangle().degrees() == std::vector<std::size_t>{2, 2, 2});
    CHECK(star4().degrees() == std::vector<std::size_t>{3, 1, 1, 1});
    CHECK(star4().edge_count() == 3);
}

TEST_CASE("build_graph ignores duplicates and rejects bad edges") {
    const Graph g = build_graph(3, std::vector<Edge>{{0, 1}, {1, 0}, {0, 1}});
    CHECK(g.edge_count() == 1);
    CHECK_THROWS_AS(build_graph(3, std::vector<Edge>{{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(3, std::vector<Edge>{{1, 1}}), std::invalid_argument);
}

TEST_CASE("laplacian") {
    const Matrix l = laplacian(k2()).matrix();
    CHECK(l(0, 0) == 1.0);
    CHECK(l(0, 1) == -1.0);
    const Matrix t = laplacian(triangle()).matrix();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(t(i, j) == (i == j ? 2.0 : -1.0));
    const Vector mu = sym_eigvals(laplacian(star4()));
    const double expected[] = {0.0, 1.0, 1.0, 4.0};
    for (int i = 0; i < 4; ++i) CHECK(mu(i) == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("laplacian row sums vanish") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const Matrix l = laplacian(random_graph(rng, 25, 0.3)).matrix();
        CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("normalized_laplacian") {
    const Matrix l = normalized_laplacian(k2()).matrix();
    CHECK(l(0, 1) == doctest::Approx(-1.0));
    CHECK(l(1, 1) == 1.0);
    const Vector lam = sym_eigvals(normalized_laplacian(triangle()));
    CHECK(lam(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lam(1) == doctest::Approx(1.5));
    CHECK(lam(2) == doctest::Approx(1.5));
    // Regular graph: normalized Laplacian is L / d.
    const Graph c = build_graph(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK((normalized_laplacian(c).matrix() - laplacian(c).matrix() / 2.0).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(normalized_laplacian(build_graph(3, std::vector<Edge>{{0, 1}})), std::domain_error);
}

TEST_CASE("normalized_laplacian spectrum lies in [0,2] with D^1/2 1 in the kernel") {
    std::mt19937_64 rng(9);
    const Graph g = random_graph(rng, 30, 0.4);
    REQUIRE(is_connected(g));
    const SymMatrix n = normalized_laplacian(g);
    const Vector lam = sym_eigvals(n);
    CHECK(lam.minCoeff() > -1e-12);
    CHECK(lam.maxCoeff() < 2.0 + 1e-12);
    Vector x(30);
    for (int i = 0; i < 30; ++i) x(i) = std::sqrt(static_cast<double>(g.degree(i)));
    CHECK((n.matrix() * x).norm() < 1e-12);
}

TEST_CASE("weighted normalized_laplacian matches the unweighted one for 0/1 weights") {
    std::mt19937_64 rng(11);
    const Graph g = random_graph(rng, 15, 0.5);
    REQUIRE(is_connected(g));
    const Matrix w = normalized_laplacian(SymMatrix(g.adjacency_matrix())).matrix();
    CHECK((w - normalized_laplacian(g).matrix()).cwiseAbs().maxCoeff() < 1e-15);
    // Scaling every weight leaves the normalized Laplacian unchanged.
    const Matrix s = normalized_laplacian(SymMatrix(0.37 * g.adjacency_matrix())).matrix();
    CHECK((s - w).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("SymMatrix rejects asymmetric input") {
    Matrix m(2, 2);
    m << 1, 2, 3, 1;
    CHECK_THROWS_AS(SymMatrix{m}, std::invalid_argument);
    CHECK_THROWS_AS(SymMatrix{Matrix(2, 3)}, std::invalid_argument);
}

TEST_CASE("kronecker_graph examples") {
    const Graph kk = kronecker_graph(k2(), k2());
    CHECK(kk.order() == 4);
    CHECK(kk.edges() == std::vector<Edge>{{0, 3}, {1, 2}});
    CHECK_FALSE(is_connected(kk));

    const Graph kt = kronecker_graph(k2(), triangle());
    CHECK(kt.order() == 6);
    CHECK(kt.edge_count() == 6);
    CHECK(is_connected(kt));
    for (auto d : kt.degrees()) CHECK(d == 2);

    const Graph k1 = build_graph(1, std::vector<Edge>{});
    const Graph e = kronecker_graph(triangle(), k1);
    CHECK(e.order() == 3);
    CHECK(e.edge_count() == 0);
}

TEST_CASE("kronecker_graph agrees with the matrix product and factor degrees") {
    std::mt19937_64 rng(3);
    const Graph g = random_graph(rng, 7, 0.5);
    const Graph h = random_graph(rng, 9, 0.4);
    const Graph p = kronecker_graph(g, h);
    CHECK(p.adjacency_matrix() == kronecker_matrix(g.adjacency_matrix(), h.adjacency_matrix()));
    const Matrix lk = kronecker_matrix(g.degree_matrix(), h.degree_matrix()) -
                      kronecker_matrix(g.adjacency_matrix(), h.adjacency_matrix());
    CHECK(laplacian(p).matrix() == lk);
    std::uniform_int_distribution<std::size_t> vi(0, 6), vk(0, 8);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t i = vi(rng), k = vk(rng);
        CHECK(p.degree(i * 9 + k) == g.degree(i) * h.degree(k));
    }
}

TEST_CASE("kronecker_matrix") {
    CHECK(kronecker_matrix(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) == Matrix::Identity(6, 6));
    Matrix a(2, 2), b(1, 1), expected(2, 2);
    a << 0, 1, 1, 0;
    b << 2;
    expected << 0, 2, 2, 0;
    CHECK(kronecker_matrix(a, b) == expected);

    std::mt19937_64 rng(17);
    std::normal_distribution<double> z;
    auto rnd = [&](int r, int c) {
        Matrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = z(rng);
        return m;
    };
    for (int t = 0; t < 10; ++t) {
        const Matrix A = rnd(2, 2), B = rnd(2, 2), C = rnd(2, 2), D = rnd(2, 2);
        const Matrix lhs = kronecker_matrix(A, B) * kronecker_matrix(C, D);
        CHECK((lhs - kronecker_matrix(A * C, B * D)).cwiseAbs().maxCoeff() <= 1e-10);
    }
    const Matrix R = rnd(2, 3), S = rnd(3, 1);
    CHECK(kronecker_matrix(R, S).rows() == 6);
    CHECK(kronecker_matrix(R, S).cols() == 3);
}

TEST_CASE("connectivity, bipartiteness and density") {
    CHECK(is_connected(triangle()));
    CHECK_FALSE(is_connected(build_graph(2, std::vector<Edge>{})));
    CHECK(is_bipartite(k2()));
    CHECK_FALSE(is_bipartite(triangle()));
    CHECK(is_bipartite(star4()));
    CHECK(edge_density(k2()) == 1.0);
    CHECK(edge_density(triangle()) == 1.0);
    CHECK(edge_density(star4()) == 0.5);
}

TEST_CASE("edge list round trip") {
    std::mt19937_64 rng(21);
    const Graph g = random_graph(rng, 12, 0.3);
    std::stringstream s;
    write_edge_list(s, g);
    const Graph back = read_edge_list(s);
    CHECK(back == g);
    std::istringstream bad("3 1\n0 5\n");
    CHECK_THROWS(read_edge_list(bad));
}
