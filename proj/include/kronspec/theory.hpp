#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kronspec {

/// Degree power sums: sum d (= 2m), sum d^2 (first Zagreb index M1) and
/// sum d^3 (forgotten index F), accumulated in exact integers.
struct DegreeIndices {
    std::uint64_t sum_d = 0;
    std::uint64_t sum_d2 = 0;
    std::uint64_t sum_d3 = 0;
};

DegreeIndices degree_indices(std::span<const std::size_t> degrees);

/// Arithmetic mean over root mean square of the degrees. This is the exact
/// cosine between x and L x for x = 1 (x) w_j, any Laplacian eigenvector w_j
/// of the second factor with nonzero eigenvalue. Throws on empty input or a
/// zero degree.
double mean_rms_ratio(std::span<const std::size_t> degrees);

/// Large-n limit of E[mean/rms] for G(n, p): sqrt((n-1)p / (1 - p + (n-1)p)).
double expected_r1j(std::size_t n, double p);

/// M1 / sqrt(F * 2m) * r_j, a lower bound on cos(x, L x) for
/// x = D^{1/2} 1 (x) v_j with v_j a normalized-Laplacian eigenvector.
double rprime_lower_bound(std::span<const std::size_t> degrees, double r_j_second_factor);

/// (n-2)p^3 - 3(n-2)p^2 + (2n-5)p + 1.
double asymptotic_polynomial(double n, double p);
bool asymptotic_inequality_holds(std::size_t n, double p);

struct EigenvalueMultiplicity {
    double value;
    std::size_t multiplicity;
};

/// Normalized-Laplacian spectrum of p(J-I) (x) p(J-I) with J of orders n1, n2.
/// Four levels, listed as 0, n2/(n2-1), n1/(n1-1), 1 - 1/((n1-1)(n2-1)).
std::vector<EigenvalueMultiplicity> expected_kron_normalized_spectrum(std::size_t n1, std::size_t n2);

/// True iff mu_i <= 2 d_i + 1e-9 for every i, both sequences ascending.
bool sayama_bound_holds(std::span<const double> mu, std::span<const double> degrees);

/// Degree sequence 1, 2, ..., k, k+1, k+1, k+2, ..., 2k+1 (order 2k+2),
/// whose mean/RMS ratio tends to sqrt(3)/2.
std::vector<std::size_t> staircase_degrees(std::size_t k);

}  // namespace kronspec
