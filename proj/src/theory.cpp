#include "kronspec/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kronspec {

DegreeIndices degree_indices(std::span<const std::size_t> degrees) {
    DegreeIndices idx;
    for (std::size_t d : degrees) {
        const std::uint64_t x = d;
        idx.sum_d += x;
        idx.sum_d2 += x * x;
        idx.sum_d3 += x * x * x;
    }
    return idx;
}

namespace {

void require_positive_degrees(std::span<const std::size_t> degrees, const char* who) {
    if (degrees.empty()) throw std::invalid_argument(std::string(who) + ": empty degree sequence");
    for (std::size_t d : degrees)
        if (d == 0) throw std::invalid_argument(std::string(who) + ": degrees must be at least 1");
}

}  // namespace

double mean_rms_ratio(std::span<const std::size_t> degrees) {
    require_positive_degrees(degrees, "mean_rms_ratio");
    const auto idx = degree_indices(degrees);
    const double n = static_cast<double>(degrees.size());
    return (static_cast<double>(idx.sum_d) / n) / std::sqrt(static_cast<double>(idx.sum_d2) / n);
}

double expected_r1j(std::size_t n, double p) {
    if (n < 2) throw std::invalid_argument("expected_r1j: n must be at least 2");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("expected_r1j: p must lie in (0,1)");
    const double np = static_cast<double>(n - 1) * p;
    return std::sqrt(np / (1.0 - p + np));
}

double rprime_lower_bound(std::span<const std::size_t> degrees, double r_j_second_factor) {
    require_positive_degrees(degrees, "rprime_lower_bound");
    const auto idx = degree_indices(degrees);
    return static_cast<double>(idx.sum_d2) /
           std::sqrt(static_cast<double>(idx.sum_d3) * static_cast<double>(idx.sum_d)) * r_j_second_factor;
}

double asymptotic_polynomial(double n, double p) {
    return (n - 2.0) * p * p * p - 3.0 * (n - 2.0) * p * p + (2.0 * n - 5.0) * p + 1.0;
}

bool asymptotic_inequality_holds(std::size_t n, double p) {
    if (n < 1) throw std::invalid_argument("asymptotic_inequality_holds: n must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("asymptotic_inequality_holds: p must lie in (0,1)");
    return asymptotic_polynomial(static_cast<double>(n), p) >= 0.0;
}

std::vector<EigenvalueMultiplicity> expected_kron_normalized_spectrum(std::size_t n1, std::size_t n2) {
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("expected_kron_normalized_spectrum: orders must be at least 2");
    const double a = static_cast<double>(n1), b = static_cast<double>(n2);
    return {
        {0.0, 1},
        {b / (b - 1.0), n2 - 1},
        {a / (a - 1.0), n1 - 1},
        {1.0 - 1.0 / ((a - 1.0) * (b - 1.0)), (n1 - 1) * (n2 - 1)},
    };
}

bool sayama_bound_holds(std::span<const double> mu, std::span<const double> degrees) {
    if (mu.size() != degrees.size()) throw std::invalid_argument("sayama_bound_holds: length mismatch");
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] > 2.0 * degrees[i] + 1e-9) return false;
    return true;
}

std::vector<std::size_t> staircase_degrees(std::size_t k) {
    std::vector<std::size_t> d;
    d.reserve(2 * k + 2);
    for (std::size_t x = 1; x <= k + 1; ++x) d.push_back(x);
    for (std::size_t x = k + 1; x <= 2 * k + 1; ++x) d.push_back(x);
    return d;
}

}  // namespace kronspec
