#include "kronspec/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "kronspec/random_graphs.hpp"
#include "kronspec/spectral.hpp"

namespace kronspec {

std::string to_string(OrderingKind k) {
    switch (k) {
        case OrderingKind::Uncorrelated: return "uncorrelated";
        case OrderingKind::Correlated: return "correlated";
        case OrderingKind::CorrelatedRandomized: return "correlated-randomized";
        case OrderingKind::AntiCorrelated: return "anti-correlated";
        case OrderingKind::AntiCorrelatedRandomized: return "anti-correlated-randomized";
    }
    return "?";
}

OrderingKind parse_ordering_kind(const std::string& name) {
    for (auto k : {OrderingKind::Uncorrelated, OrderingKind::Correlated, OrderingKind::CorrelatedRandomized,
                   OrderingKind::AntiCorrelated, OrderingKind::AntiCorrelatedRandomized}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown ordering '" + name + "'");
}

std::string to_string(EstimatorMethod m) {
    return m == EstimatorMethod::SayamaLaplacian ? "sayama" : "normalized";
}

EstimatorMethod parse_estimator_method(const std::string& name) {
    if (name == "sayama" || name == "SayamaLaplacian") return EstimatorMethod::SayamaLaplacian;
    if (name == "normalized" || name == "NormalizedLaplacian") return EstimatorMethod::NormalizedLaplacian;
    throw std::invalid_argument("unknown estimator '" + name + "' (expected sayama or normalized)");
}

std::vector<double> EstimatedSpectrum::sorted_values() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(e.value);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::size_t> apply_ordering(const std::vector<double>& values, const Ordering& ordering) {
    if (!ordering.randomized() && ordering.swap_count.value_or(0) != 0) {
        throw std::invalid_argument("swap_count must be 0 for ordering " + to_string(ordering.kind));
    }
    const std::size_t n = values.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(ordering.randomization_seed);

    switch (ordering.kind) {
        case OrderingKind::Uncorrelated:
            std::shuffle(perm.begin(), perm.end(), rng);
            return perm;
        case OrderingKind::Correlated:
        case OrderingKind::CorrelatedRandomized:
            std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return values[a] < values[b]; });
            break;
        case OrderingKind::AntiCorrelated:
        case OrderingKind::AntiCorrelatedRandomized:
            std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return values[a] > values[b]; });
            break;
    }
    if (ordering.randomized() && n >= 2) {
        const std::size_t swaps = ordering.swap_count.value_or(n / 4);
        std::uniform_int_distribution<std::size_t> pos(0, n - 2);
        for (std::size_t s = 0; s < swaps; ++s) {
            const std::size_t t = pos(rng);
            std::swap(perm[t], perm[t + 1]);
        }
    }
    return perm;
}

namespace {

void check_lengths(const std::vector<double>& ev1, const std::vector<double>& d1, const std::vector<double>& ev2,
                   const std::vector<double>& d2) {
    if (ev1.size() != d1.size() || ev2.size() != d2.size()) {
        throw std::invalid_argument("estimator: eigenvalue and degree sequences differ in length");
    }
    if (ev1.empty() || ev2.empty()) throw std::invalid_argument("estimator: empty factor spectrum");
    if (!std::is_sorted(d1.begin(), d1.end()) || !std::is_sorted(d2.begin(), d2.end())) {
        throw std::invalid_argument("estimator: degree sequences must be sorted ascending");
    }
}

// Factor spectra are of PSD matrices whose smallest eigenvalue is exactly 0;
// solver round-off around it is snapped so the (0,0) pairing yields exact 0.
std::vector<double> snap_zero(std::vector<double> ev) {
    double scale = 1.0;
    for (double x : ev) scale = std::max(scale, std::abs(x));
    for (double& x : ev)
        if (std::abs(x) <= 1e-12 * scale) x = 0.0;
    return ev;
}

template <class Formula>
EstimatedSpectrum combine(const std::vector<double>& ev1, const std::vector<double>& d1,
                          const std::vector<double>& ev2, const std::vector<double>& d2, const Ordering& ordering,
                          EstimatorMethod method, Formula formula) {
    Ordering first = ordering, second = ordering;
    first.randomization_seed = derive_seed(ordering.randomization_seed, 1);
    second.randomization_seed = derive_seed(ordering.randomization_seed, 2);
    const auto p1 = apply_ordering(ev1, first);
    const auto p2 = apply_ordering(ev2, second);

    EstimatedSpectrum out{{}, method, ordering};
    out.entries.reserve(ev1.size() * ev2.size());
    for (std::size_t a = 0; a < ev1.size(); ++a) {
        for (std::size_t b = 0; b < ev2.size(); ++b) {
            const std::size_t i = p1[a], j = p2[b];
            out.entries.push_back({formula(ev1[i], d1[a], ev2[j], d2[b]), i, j});
        }
    }
    return out;
}

}  // namespace

EstimatedSpectrum sayama_spectrum(const std::vector<double>& mu1, const std::vector<double>& d1,
                                  const std::vector<double>& mu2, const std::vector<double>& d2,
                                  const Ordering& ordering) {
    check_lengths(mu1, d1, mu2, d2);
    return combine(snap_zero(mu1), d1, snap_zero(mu2), d2, ordering, EstimatorMethod::SayamaLaplacian,
                   [](double m1, double deg1, double m2, double deg2) { return m1 * deg2 + deg1 * m2 - m1 * m2; });
}

EstimatedSpectrum normalized_estimate(const std::vector<double>& lambda1, const std::vector<double>& d1,
                                      const std::vector<double>& lambda2, const std::vector<double>& d2,
                                      const Ordering& ordering) {
    check_lengths(lambda1, d1, lambda2, d2);
    // Normalized-Laplacian spectra lie in [0,2]; clamp round-off at both ends.
    auto clamp02 = [](std::vector<double> ev) {
        ev = snap_zero(std::move(ev));
        for (double& x : ev) x = std::clamp(x, 0.0, 2.0);
        return ev;
    };
    return combine(clamp02(lambda1), d1, clamp02(lambda2), d2, ordering, EstimatorMethod::NormalizedLaplacian,
                   [](double l1, double deg1, double l2, double deg2) {
                       return (1.0 - (1.0 - l1) * (1.0 - l2)) * deg1 * deg2;
                   });
}

Vector estimated_eigenvector(std::size_t i, std::size_t j, const Matrix& basis1, const Matrix& basis2) {
    if (i >= static_cast<std::size_t>(basis1.cols()) || j >= static_cast<std::size_t>(basis2.cols())) {
        throw std::out_of_range("estimated_eigenvector: column index out of range");
    }
    return kron_vec(basis1.col(static_cast<Eigen::Index>(i)), basis2.col(static_cast<Eigen::Index>(j)));
}

}  // namespace kronspec
