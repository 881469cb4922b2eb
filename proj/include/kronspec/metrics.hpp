#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kronspec/estimators.hpp"
#include "kronspec/graph.hpp"

namespace kronspec {

struct PairCorrelation {
    std::size_t i;
    std::size_t j;
    double r;
};

/// cos(x, L x) for x = basis1[:, i] (x) basis2[:, j], over every pair in
/// row-major (i, j) order. skip_first omits (0, 0).
std::vector<PairCorrelation> correlation_profile(const SymMatrix& L_kron, const Matrix& basis1,
                                                 const Matrix& basis2, bool skip_first = true);

/// Same quantity computed from the factors without forming the product:
/// L(u (x) v) = (D1 u) (x) (D2 v) - (A1 u) (x) (A2 v), so every inner product
/// and norm splits into factor-sized pieces.
std::vector<PairCorrelation> correlation_profile_factored(const Graph& g1, const Graph& g2, const Matrix& basis1,
                                                          const Matrix& basis2, bool skip_first = true);

/// Thrown when the exact product spectrum has more than one zero eigenvalue.
class DisconnectedProductError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 100 (est_k - act_k) / act_k for ranks k = 2..N after sorting both spectra
/// ascending; rank 1 (the matched zeros) is dropped. zero_tol <= 0 selects
/// the default 1e-8 * max(actual).
std::vector<double> percentage_errors(const EstimatedSpectrum& estimated, const Vector& actual,
                                      double zero_tol = 0.0);
std::vector<double> percentage_errors(std::vector<double> estimated, const Vector& actual, double zero_tol = 0.0);

/// Linear-interpolation percentile (q in [0,100]) of an unsorted sample.
double percentile(std::vector<double> samples, double q);

struct ErrorProfile {
    std::map<std::string, std::string> meta;
    std::vector<std::vector<double>> samples;  // samples[rank][run]
    std::vector<double> median;
    std::vector<double> p5;
    std::vector<double> p95;

    std::size_t ranks() const { return median.size(); }
    std::size_t runs() const { return samples.empty() ? 0 : samples.front().size(); }
};

/// Per-rank median and 5th/95th percentiles over runs (each run one error
/// vector of equal length). Throws std::invalid_argument on empty input.
ErrorProfile aggregate_profile(const std::vector<std::vector<double>>& runs);

struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

/// Gaussian KDE with Silverman's bandwidth 1.06 * sd * m^{-1/5} on an evenly
/// spaced grid over [min - 3h, max + 3h].
DensityCurve kde(const std::vector<double>& samples, std::size_t grid_size = 512);

double trapezoid_integral(const std::vector<double>& x, const std::vector<double>& y);

struct ChiSquaredResult {
    double statistic = 0.0;
    std::size_t bins = 0;
    std::size_t dof = 0;
    double critical = 0.0;
    bool passed = false;
};

/// Pearson goodness-of-fit against a normal with the sample mean/variance.
/// Sturges bin count over [min, max] (outer bins open-ended), adjacent bins
/// merged until every expected count is >= 5, dof = bins - 3 (at least 1).
ChiSquaredResult chi_squared_normality(const std::vector<double>& samples, double alpha = 0.05);

struct PassCount {
    std::size_t passed = 0;
    std::size_t total = 0;
    double fraction() const { return total == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(total); }
};

using PairKey = std::pair<std::size_t, std::size_t>;

/// Number of pairs whose samples pass chi_squared_normality. Every pair needs
/// at least 30 samples.
PassCount normality_pass_count(const std::map<PairKey, std::vector<double>>& per_pair, double alpha = 0.05);

}  // namespace kronspec
