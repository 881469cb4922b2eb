#include "kronspec/random_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kronspec {

std::string to_string(GraphModel m) {
    switch (m) {
        case GraphModel::ER: return "ER";
        case GraphModel::WS: return "WS";
        case GraphModel::BA: return "BA";
    }
    return "?";
}

GraphModel parse_graph_model(const std::string& name) {
    if (name == "ER" || name == "er") return GraphModel::ER;
    if (name == "WS" || name == "ws") return GraphModel::WS;
    if (name == "BA" || name == "ba") return GraphModel::BA;
    throw std::invalid_argument("unknown graph model '" + name + "' (expected ER, WS or BA)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("erdos_renyi: p must lie in (0,1)");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return build_graph(n, edges);
}

Graph watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
    if (k % 2 != 0 || k < 2 || k >= n) {
        throw std::invalid_argument("watts_strogatz: k must be even with 2 <= k < n (k = " +
                                    std::to_string(k) + ", n = " + std::to_string(n) + ")");
    }
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("watts_strogatz: beta must lie in [0,1]");

    std::vector<std::vector<std::uint8_t>> adj(n, std::vector<std::uint8_t>(n, 0));
    std::vector<std::size_t> deg(n, 0);
    auto link = [&](std::size_t a, std::size_t b, std::uint8_t on) {
        adj[a][b] = adj[b][a] = on;
        if (on) {
            ++deg[a];
            ++deg[b];
        } else {
            --deg[a];
            --deg[b];
        }
    };
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t s = 1; s <= k / 2; ++s) link(u, (u + s) % n, 1);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 1; s <= k / 2; ++s) {
        for (std::size_t u = 0; u < n; ++u) {
            const std::size_t v = (u + s) % n;
            if (unit(rng) >= beta) continue;
            if (!adj[u][v] || deg[u] >= n - 1) continue;
            std::size_t w = pick(rng);
            while (w == u || adj[u][w]) w = pick(rng);
            link(u, v, 0);
            link(u, w, 1);
        }
    }

    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (adj[u][v]) edges.emplace_back(u, v);
    return build_graph(n, edges);
}

std::size_t barabasi_albert_edge_count(std::size_t n, std::size_t m) {
    return (m + 1) * m / 2 + (n - m - 1) * m;
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m >= n) {
        throw std::invalid_argument("barabasi_albert: need 1 <= m_attach < n (m_attach = " +
                                    std::to_string(m) + ", n = " + std::to_string(n) + ")");
    }
    std::vector<Edge> edges;
    // Every endpoint occurrence; uniform picks from it are degree-proportional.
    std::vector<std::size_t> endpoints;
    for (std::size_t u = 0; u <= m; ++u) {
        for (std::size_t v = u + 1; v <= m; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> targets;
    for (std::size_t v = m + 1; v < n; ++v) {
        targets.clear();
        std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
        while (targets.size() < m) {
            const std::size_t t = endpoints[pick(rng)];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (std::size_t t : targets) {
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return build_graph(n, edges);
}

ModelParams density_to_params(const GeneratorSpec& spec) {
    const double rho = spec.target_density;
    if (!(rho > 0.0 && rho < 1.0)) {
        throw std::invalid_argument("target density must lie in (0,1), got " + std::to_string(rho));
    }
    if (spec.n < 2) throw std::invalid_argument("graph order must be at least 2");
    const std::size_t n = spec.n;
    switch (spec.model) {
        case GraphModel::ER:
            return ErParams{rho};
        case GraphModel::WS: {
            const double raw = rho * static_cast<double>(n - 1);
            const auto k = static_cast<std::size_t>(2.0 * std::round(raw / 2.0));
            if (k < 2 || k >= n) {
                throw std::invalid_argument("density " + std::to_string(rho) + " infeasible for WS at n = " +
                                            std::to_string(n) + " (ring degree " + std::to_string(k) + ")");
            }
            return WsParams{k, spec.ws_beta};
        }
        case GraphModel::BA: {
            const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
            std::size_t best = 1;
            double best_gap = std::numeric_limits<double>::infinity();
            for (std::size_t m = 1; m < n; ++m) {
                const double gap = std::abs(static_cast<double>(barabasi_albert_edge_count(n, m)) / pairs - rho);
                if (gap < best_gap) {
                    best_gap = gap;
                    best = m;
                }
            }
            return BaParams{best};
        }
    }
    throw std::logic_error("unreachable graph model");
}

Graph generate(const GeneratorSpec& spec) {
    const ModelParams params = density_to_params(spec);
    if (const auto* er = std::get_if<ErParams>(&params)) return erdos_renyi(spec.n, er->p, spec.seed);
    if (const auto* ws = std::get_if<WsParams>(&params)) return watts_strogatz(spec.n, ws->k, ws->beta, spec.seed);
    return barabasi_albert(spec.n, std::get<BaParams>(params).m_attach, spec.seed);
}

Graph generate_connected(const GeneratorSpec& spec) {
    if (spec.max_retries == 0) throw std::invalid_argument("max_retries must be positive");
    for (std::size_t attempt = 0; attempt < spec.max_retries; ++attempt) {
        GeneratorSpec draw = spec;
        draw.seed = attempt == 0 ? spec.seed : derive_seed(spec.seed, attempt);
        Graph g = generate(draw);
        if (is_connected(g)) return g;
    }
    throw std::runtime_error("could not generate a connected graph for " + describe(spec) + " after " +
                             std::to_string(spec.max_retries) + " attempts");
}

std::string describe(const GeneratorSpec& spec) {
    std::ostringstream s;
    s << to_string(spec.model) << "(n=" << spec.n << ", density=" << spec.target_density
      << ", seed=" << spec.seed;
    if (spec.model == GraphModel::WS) s << ", beta=" << spec.ws_beta;
    s << ")";
    return s.str();
}

}  // namespace kronspec
