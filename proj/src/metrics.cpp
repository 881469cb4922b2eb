#include "kronspec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "kronspec/spectral.hpp"

namespace kronspec {

std::vector<PairCorrelation> correlation_profile(const SymMatrix& L_kron, const Matrix& basis1,
                                                 const Matrix& basis2, bool skip_first) {
    const Eigen::Index n1 = basis1.cols(), n2 = basis2.cols();
    if (static_cast<Eigen::Index>(L_kron.dimension()) != basis1.rows() * basis2.rows()) {
        throw std::invalid_argument("correlation_profile: product dimension does not match the factor bases");
    }
    // All candidate vectors at once: column i*n2 + j of kron(V1, V2) is v_i (x) v_j.
    const Matrix x = kronecker_matrix(basis1, basis2);
    const Matrix lx = L_kron.matrix() * x;
    std::vector<PairCorrelation> out;
    out.reserve(static_cast<std::size_t>(n1 * n2));
    for (Eigen::Index i = 0; i < n1; ++i) {
        for (Eigen::Index j = 0; j < n2; ++j) {
            if (skip_first && i == 0 && j == 0) continue;
            const Eigen::Index c = i * n2 + j;
            out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), cosine(x.col(c), lx.col(c))});
        }
    }
    return out;
}

std::vector<PairCorrelation> correlation_profile_factored(const Graph& g1, const Graph& g2, const Matrix& basis1,
                                                          const Matrix& basis2, bool skip_first) {
    if (static_cast<std::size_t>(basis1.rows()) != g1.order() || static_cast<std::size_t>(basis2.rows()) != g2.order()) {
        throw std::invalid_argument("correlation_profile_factored: basis rows do not match graph orders");
    }
    struct FactorTerms {
        Vector uDu, uAu, DuDu, DuAu, AuAu, uu;
    };
    auto terms = [](const Graph& g, const Matrix& basis) {
        const Matrix du = g.degree_matrix() * basis;
        const Matrix au = g.adjacency_matrix() * basis;
        FactorTerms t;
        t.uDu = basis.cwiseProduct(du).colwise().sum().transpose();
        t.uAu = basis.cwiseProduct(au).colwise().sum().transpose();
        t.DuDu = du.colwise().squaredNorm().transpose();
        t.DuAu = du.cwiseProduct(au).colwise().sum().transpose();
        t.AuAu = au.colwise().squaredNorm().transpose();
        t.uu = basis.colwise().squaredNorm().transpose();
        return t;
    };
    const FactorTerms a = terms(g1, basis1);
    const FactorTerms b = terms(g2, basis2);

    std::vector<PairCorrelation> out;
    out.reserve(static_cast<std::size_t>(basis1.cols() * basis2.cols()));
    for (Eigen::Index i = 0; i < basis1.cols(); ++i) {
        for (Eigen::Index j = 0; j < basis2.cols(); ++j) {
            if (skip_first && i == 0 && j == 0) continue;
            const double inner = a.uDu(i) * b.uDu(j) - a.uAu(i) * b.uAu(j);
            const double lx2 = a.DuDu(i) * b.DuDu(j) - 2.0 * a.DuAu(i) * b.DuAu(j) + a.AuAu(i) * b.AuAu(j);
            const double x2 = a.uu(i) * b.uu(j);
            const double scale = a.DuDu(i) * b.DuDu(j) + a.AuAu(i) * b.AuAu(j);
            if (lx2 <= 1e-24 * scale || x2 == 0.0) throw std::domain_error("correlation_profile_factored: zero vector");
            const double r = std::clamp(inner / std::sqrt(lx2 * x2), -1.0, 1.0);
            out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), r});
        }
    }
    return out;
}

std::vector<double> percentage_errors(const EstimatedSpectrum& estimated, const Vector& actual, double zero_tol) {
    std::vector<double> values;
    values.reserve(estimated.entries.size());
    for (const auto& e : estimated.entries) values.push_back(e.value);
    return percentage_errors(std::move(values), actual, zero_tol);
}

std::vector<double> percentage_errors(std::vector<double> estimated, const Vector& actual, double zero_tol) {
    if (static_cast<Eigen::Index>(estimated.size()) != actual.size()) {
        throw std::invalid_argument("percentage_errors: estimated and actual spectra differ in size");
    }
    if (actual.size() < 2) throw std::invalid_argument("percentage_errors: need at least two eigenvalues");
    std::vector<double> act(actual.data(), actual.data() + actual.size());
    std::sort(act.begin(), act.end());
    std::sort(estimated.begin(), estimated.end());
    if (zero_tol <= 0.0) zero_tol = 1e-8 * std::max(std::abs(act.back()), 1.0);
    const auto zeros = std::count_if(act.begin(), act.end(), [&](double x) { return x < zero_tol; });
    if (zeros > 1) {
        throw DisconnectedProductError("percentage_errors: product has " + std::to_string(zeros) +
                                       " zero eigenvalues (disconnected)");
    }
    std::vector<double> err(act.size() - 1);
    for (std::size_t k = 1; k < act.size(); ++k) err[k - 1] = 100.0 * (estimated[k] - act[k]) / act[k];
    return err;
}

double percentile(std::vector<double> samples, double q) {
    if (samples.empty()) throw std::invalid_argument("percentile: empty sample");
    if (q < 0.0 || q > 100.0) throw std::invalid_argument("percentile: q must lie in [0,100]");
    std::sort(samples.begin(), samples.end());
    const double h = (static_cast<double>(samples.size()) - 1.0) * q / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (h - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

ErrorProfile aggregate_profile(const std::vector<std::vector<double>>& runs) {
    if (runs.empty()) throw std::invalid_argument("aggregate_profile: no runs");
    const std::size_t ranks = runs.front().size();
    for (const auto& r : runs) {
        if (r.size() != ranks) throw std::invalid_argument("aggregate_profile: runs differ in length");
    }
    ErrorProfile p;
    p.samples.assign(ranks, std::vector<double>(runs.size()));
    for (std::size_t k = 0; k < ranks; ++k)
        for (std::size_t r = 0; r < runs.size(); ++r) p.samples[k][r] = runs[r][k];
    p.median.resize(ranks);
    p.p5.resize(ranks);
    p.p95.resize(ranks);
    for (std::size_t k = 0; k < ranks; ++k) {
        p.median[k] = percentile(p.samples[k], 50.0);
        p.p5[k] = percentile(p.samples[k], 5.0);
        p.p95[k] = percentile(p.samples[k], 95.0);
    }
    return p;
}

namespace {

struct Moments {
    double mean;
    double sd;
};

Moments sample_moments(const std::vector<double>& x) {
    const double m = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / m;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (m - 1.0))};
}

double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

}  // namespace

DensityCurve kde(const std::vector<double>& samples, std::size_t grid_size) {
    if (samples.size() < 2) throw std::invalid_argument("kde: need at least two samples");
    if (grid_size < 2) throw std::invalid_argument("kde: grid_size must be at least 2");
    const auto [mean, sd] = sample_moments(samples);
    if (!(sd > 0.0)) throw std::invalid_argument("kde: samples have zero variance");
    const double m = static_cast<double>(samples.size());
    const double h = 1.06 * sd * std::pow(m, -0.2);
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it - 3.0 * h, hi = *hi_it + 3.0 * h;

    DensityCurve c;
    c.bandwidth = h;
    c.grid.resize(grid_size);
    c.density.assign(grid_size, 0.0);
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);
    const double norm = 1.0 / (m * h * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t g = 0; g < grid_size; ++g) {
        const double x = lo + step * static_cast<double>(g);
        double s = 0.0;
        for (double v : samples) {
            const double z = (x - v) / h;
            s += std::exp(-0.5 * z * z);
        }
        c.grid[g] = x;
        c.density[g] = s * norm;
    }
    return c;
}

double trapezoid_integral(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("trapezoid_integral: size mismatch");
    double s = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) s += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);
    return s;
}

ChiSquaredResult chi_squared_normality(const std::vector<double>& samples, double alpha) {
    if (samples.size() < 2) throw std::invalid_argument("chi_squared_normality: need at least two samples");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("chi_squared_normality: alpha must lie in (0,1)");
    const double m = static_cast<double>(samples.size());
    const auto [mean, sd] = sample_moments(samples);
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it, hi = *hi_it;

    ChiSquaredResult res;
    if (!(sd > 0.0) || hi <= lo) {
        // A point mass is as far from normal as it gets.
        res.statistic = std::numeric_limits<double>::infinity();
        res.bins = 1;
        res.dof = 1;
        res.critical = boost::math::quantile(boost::math::chi_squared(1.0), 1.0 - alpha);
        return res;
    }

    const auto k = static_cast<std::size_t>(std::ceil(std::log2(m))) + 1;
    const double width = (hi - lo) / static_cast<double>(k);
    std::vector<double> observed(k, 0.0), expected(k, 0.0);
    for (double v : samples) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        observed[std::min(b, k - 1)] += 1.0;
    }
    double prev = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
        const double upper = b + 1 == k ? 1.0 : normal_cdf(lo + width * static_cast<double>(b + 1), mean, sd);
        expected[b] = m * (upper - prev);
        prev = upper;
    }

    std::vector<double> obs, exp;
    double o = 0.0, e = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
        o += observed[b];
        e += expected[b];
        if (e >= 5.0) {
            obs.push_back(o);
            exp.push_back(e);
            o = e = 0.0;
        }
    }
    if (e > 0.0 || o > 0.0) {
        if (exp.empty()) {
            obs.push_back(o);
            exp.push_back(e);
        } else {
            obs.back() += o;
            exp.back() += e;
        }
    }

    for (std::size_t b = 0; b < exp.size(); ++b) res.statistic += (obs[b] - exp[b]) * (obs[b] - exp[b]) / exp[b];
    res.bins = exp.size();
    res.dof = res.bins > 4 ? res.bins - 3 : 1;
    res.critical = boost::math::quantile(boost::math::chi_squared(static_cast<double>(res.dof)), 1.0 - alpha);
    res.passed = res.statistic <= res.critical;
    return res;
}

PassCount normality_pass_count(const std::map<PairKey, std::vector<double>>& per_pair, double alpha) {
    PassCount pc;
    for (const auto& [key, samples] : per_pair) {
        if (samples.size() < 30) {
            throw std::invalid_argument("normality_pass_count: pair (" + std::to_string(key.first) + ", " +
                                        std::to_string(key.second) + ") has only " +
                                        std::to_string(samples.size()) + " samples (need 30)");
        }
        ++pc.total;
        if (chi_squared_normality(samples, alpha).passed) ++pc.passed;
    }
    return pc;
}

}  // namespace kronspec
