#include <doctest.h>

#include <algorithm>

#include "kronspec/estimators.hpp"
#include "kronspec/random_graphs.hpp"
#include "kronspec/spectral.hpp"

using namespace kronspec;

namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Graph cycle(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return build_graph(n, e);
}

Graph complete(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return build_graph(n, e);
}

std::vector<double> permuted(const std::vector<double>& v, const std::vector<std::size_t>& perm) {
    std::vector<double> out;
    for (auto p : perm) out.push_back(v[p]);
    return out;
}

void check_exact(const Graph& g1, const Graph& g2) {
    const auto exact = to_std(sym_eigvals(laplacian(kronecker_graph(g1, g2))));
    const auto say = sayama_spectrum(to_std(sym_eigvals(laplacian(g1))), g1.sorted_degrees(),
                                     to_std(sym_eigvals(laplacian(g2))), g2.sorted_degrees())
                         .sorted_values();
    const auto nor = normalized_estimate(to_std(sym_eigvals(normalized_laplacian(g1))), g1.sorted_degrees(),
                                         to_std(sym_eigvals(normalized_laplacian(g2))), g2.sorted_degrees())
                         .sorted_values();
    REQUIRE(say.size() == exact.size());
    for (std::size_t k = 0; k < exact.size(); ++k) {
        CHECK(std::abs(say[k] - exact[k]) <= 1e-9);
        CHECK(std::abs(nor[k] - exact[k]) <= 1e-9);
    }
}

}  // namespace

TEST_CASE("apply_ordering") {
    const std::vector<double> v{3, 1, 2};
    CHECK(permuted(v, apply_ordering(v, {OrderingKind::Correlated})) == std::vector<double>{1, 2, 3});
    CHECK(permuted(v, apply_ordering(v, {OrderingKind::AntiCorrelated})) == std::vector<double>{3, 2, 1});
    CHECK(apply_ordering(v, {OrderingKind::CorrelatedRandomized, 5, 0}) == apply_ordering(v, {OrderingKind::Correlated}));
    CHECK(apply_ordering(v, {OrderingKind::AntiCorrelatedRandomized, 5, 0}) ==
          apply_ordering(v, {OrderingKind::AntiCorrelated}));

    std::vector<double> big(40);
    for (int i = 0; i < 40; ++i) big[i] = (i * 17) % 40;
    const Ordering shuffle{OrderingKind::Uncorrelated, 11};
    auto p = apply_ordering(big, shuffle);
    CHECK(p == apply_ordering(big, shuffle));
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == i);

    const Ordering rnd{OrderingKind::CorrelatedRandomized, 3};
    const auto r = permuted(big, apply_ordering(big, rnd));
    CHECK_FALSE(std::is_sorted(r.begin(), r.end()));
    CHECK_THROWS_AS(apply_ordering(v, {OrderingKind::Correlated, 0, 2}), std::invalid_argument);
}

TEST_CASE("ordering names round trip") {
    for (auto k : {OrderingKind::Uncorrelated, OrderingKind::Correlated, OrderingKind::CorrelatedRandomized,
                   OrderingKind::AntiCorrelated, OrderingKind::AntiCorrelatedRandomized})
        CHECK(parse_ordering_kind(to_string(k)) == k);
    CHECK(parse_estimator_method("sayama") == EstimatorMethod::SayamaLaplacian);
    CHECK_THROWS(parse_ordering_kind("bogus"));
}

TEST_CASE("K2 factors") {
    const std::vector<double> d{1, 1};
    auto say = sayama_spectrum({0, 2}, d, {0, 2}, d).sorted_values();
    CHECK(say == std::vector<double>{0, 0, 2, 2});
    auto nor = normalized_estimate({0, 2}, d, {0, 2}, d).sorted_values();
    CHECK(nor == std::vector<double>{0, 0, 2, 2});
    const Graph k2 = build_graph(2, std::vector<Edge>{{0, 1}});
    const Vector exact = sym_eigvals(laplacian(kronecker_graph(k2, k2)));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(exact(k) - say[k]) < 1e-12);
}

TEST_CASE("regular factors are estimated exactly") {
    check_exact(cycle(4), complete(3));
    check_exact(cycle(6), cycle(4));
    check_exact(cycle(5), complete(4));
}

TEST_CASE("estimates contain the zero entry and are nonnegative") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Graph g1 = generate_connected({GraphModel::ER, 12 + s % 7, 0.3, s});
        const Graph g2 = generate_connected({GraphModel::ER, 9 + s % 5, 0.4, s + 100});
        for (auto kind : {OrderingKind::Correlated, OrderingKind::Uncorrelated, OrderingKind::CorrelatedRandomized}) {
            const Ordering o{kind, s};
            const auto say = sayama_spectrum(to_std(sym_eigvals(laplacian(g1))), g1.sorted_degrees(),
                                             to_std(sym_eigvals(laplacian(g2))), g2.sorted_degrees(), o);
            const auto nor = normalized_estimate(to_std(sym_eigvals(normalized_laplacian(g1))), g1.sorted_degrees(),
                                                 to_std(sym_eigvals(normalized_laplacian(g2))), g2.sorted_degrees(), o);
            CHECK(say.entries.size() == g1.order() * g2.order());
            CHECK(nor.entries.size() == g1.order() * g2.order());
            const bool say_zero = std::any_of(say.entries.begin(), say.entries.end(),
                                              [](const EstimatedEntry& e) { return e.i == 0 && e.j == 0 && e.value == 0.0; });
            const bool nor_zero = std::any_of(nor.entries.begin(), nor.entries.end(),
                                              [](const EstimatedEntry& e) { return e.i == 0 && e.j == 0 && e.value == 0.0; });
            CHECK(say_zero);
            CHECK(nor_zero);
            if (kind == OrderingKind::Correlated) {
                CHECK(say.sorted_values().front() >= -1e-12);
                CHECK(nor.sorted_values().front() >= -1e-12);
            }
        }
    }
}

TEST_CASE("orderings differ on irregular factors") {
    const Graph g1 = generate_connected({GraphModel::ER, 20, 0.3, 1});
    const Graph g2 = generate_connected({GraphModel::ER, 15, 0.3, 2});
    const auto mu1 = to_std(sym_eigvals(laplacian(g1)));
    const auto mu2 = to_std(sym_eigvals(laplacian(g2)));
    const auto a = sayama_spectrum(mu1, g1.sorted_degrees(), mu2, g2.sorted_degrees(), {OrderingKind::Correlated});
    const auto b = sayama_spectrum(mu1, g1.sorted_degrees(), mu2, g2.sorted_degrees(), {OrderingKind::AntiCorrelated});
    CHECK(a.sorted_values() != b.sorted_values());
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(sayama_spectrum({0, 1}, {1}, {0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(sayama_spectrum({0, 1}, {2, 1}, {0, 1}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(normalized_estimate({}, {}, {0}, {1}), std::invalid_argument);
}

TEST_CASE("estimated_eigenvector") {
    const Graph g1 = generate_connected({GraphModel::ER, 10, 0.4, 3});
    const Graph g2 = generate_connected({GraphModel::ER, 8, 0.5, 4});
    const SymMatrix lk = laplacian(kronecker_graph(g1, g2));
    const auto w1 = sym_eig(laplacian(g1));
    const auto w2 = sym_eig(laplacian(g2));
    const Vector x = estimated_eigenvector(0, 0, w1.eigenvectors, w2.eigenvectors);
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((lk.matrix() * x).norm() < 1e-12);
    CHECK(estimated_eigenvector(3, 5, w1.eigenvectors, w2.eigenvectors).norm() == doctest::Approx(1.0).epsilon(1e-12));

    // The normalized-basis (0,0) vector is not an eigenvector of L for irregular factors.
    const auto v1 = sym_eig(normalized_laplacian(g1));
    const auto v2 = sym_eig(normalized_laplacian(g2));
    const Vector y = estimated_eigenvector(0, 0, v1.eigenvectors, v2.eigenvectors);
    const Vector ly = lk.matrix() * y;
    CHECK(std::abs(cosine(y, ly)) < 1.0 - 1e-6);
}
