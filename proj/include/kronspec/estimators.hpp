#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kronspec/graph.hpp"

namespace kronspec {

enum class OrderingKind {
    Uncorrelated,
    Correlated,
    CorrelatedRandomized,
    AntiCorrelated,
    AntiCorrelatedRandomized,
};

std::string to_string(OrderingKind k);
OrderingKind parse_ordering_kind(const std::string& name);

/// How factor eigenvalues are paired with the (ascending) factor degrees.
struct Ordering {
    OrderingKind kind = OrderingKind::Correlated;
    std::uint64_t randomization_seed = 0;
    /// Adjacent transpositions for the randomized kinds. When unset, n/4 is
    /// used for a length-n spectrum. Must be unset or 0 for other kinds.
    std::optional<std::size_t> swap_count;

    bool randomized() const {
        return kind == OrderingKind::CorrelatedRandomized || kind == OrderingKind::AntiCorrelatedRandomized;
    }
};

enum class EstimatorMethod { SayamaLaplacian, NormalizedLaplacian };

std::string to_string(EstimatorMethod m);
EstimatorMethod parse_estimator_method(const std::string& name);

struct EstimatedEntry {
    double value;
    std::size_t i;  // index into the S1 spectrum (ascending eigen-order)
    std::size_t j;  // index into the S2 spectrum
};

struct EstimatedSpectrum {
    std::vector<EstimatedEntry> entries;
    EstimatorMethod method;
    Ordering ordering;

    std::vector<double> sorted_values() const;
};

/// Permutation `perm` such that values[perm[k]] is placed at degree position
/// k. Correlated sorts ascending, AntiCorrelated descending, Uncorrelated is a
/// seeded uniform shuffle; randomized kinds start from their sorted base and
/// apply `swap_count` seeded random adjacent transpositions.
std::vector<std::size_t> apply_ordering(const std::vector<double>& values, const Ordering& ordering);

/// mu_i d'_j + d_i mu'_j - mu_i mu'_j for every pairing, where factor
/// eigenvalues are matched to ascending degree positions by `ordering`.
EstimatedSpectrum sayama_spectrum(const std::vector<double>& mu1, const std::vector<double>& d1,
                                  const std::vector<double>& mu2, const std::vector<double>& d2,
                                  const Ordering& ordering = {});

/// (lambda_i + lambda'_j - lambda_i lambda'_j) d_i d'_j with the same pairing
/// rule, from normalized-Laplacian factor eigenvalues.
EstimatedSpectrum normalized_estimate(const std::vector<double>& lambda1, const std::vector<double>& d1,
                                      const std::vector<double>& lambda2, const std::vector<double>& d2,
                                      const Ordering& ordering = {});

/// Column i of basis1 (x) column j of basis2.
Vector estimated_eigenvector(std::size_t i, std::size_t j, const Matrix& basis1, const Matrix& basis2);

}  // namespace kronspec
