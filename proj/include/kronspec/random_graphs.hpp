#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "kronspec/graph.hpp"

namespace kronspec {

enum class GraphModel { ER, WS, BA };

std::string to_string(GraphModel m);
GraphModel parse_graph_model(const std::string& name);

/// Mixes a sequence of 64-bit words into one seed (splitmix64 finalizer
/// chained over the inputs). Used to derive per-run, per-role, per-attempt
/// seeds from a single master seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

struct GeneratorSpec {
    GraphModel model = GraphModel::ER;
    std::size_t n = 0;
    double target_density = 0.1;
    std::uint64_t seed = 0;
    double ws_beta = 0.25;
    std::size_t max_retries = 100;
};

struct ErParams { double p; };
struct WsParams { std::size_t k; double beta; };
struct BaParams { std::size_t m_attach; };
using ModelParams = std::variant<ErParams, WsParams, BaParams>;

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Ring lattice where each vertex links to its k/2 nearest neighbours on each
/// side; every lattice edge (u, u+s) is then rewired with probability beta to
/// (u, w) for a uniformly chosen w that is neither u nor already adjacent.
/// Edge count stays n*k/2.
Graph watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed);

/// Preferential attachment from a clique on m_attach+1 vertices. Each new
/// vertex attaches to m_attach distinct existing vertices chosen with
/// probability proportional to current degree.
Graph barabasi_albert(std::size_t n, std::size_t m_attach, std::uint64_t seed);

/// Edge count a BA graph reaches: C(m+1, 2) + (n - m - 1) m.
std::size_t barabasi_albert_edge_count(std::size_t n, std::size_t m_attach);

/// Maps a target density onto model parameters. Throws std::invalid_argument
/// when the density is outside (0,1) or infeasible for the model and order.
ModelParams density_to_params(const GeneratorSpec& spec);

/// One draw from the model with the spec's seed (no connectivity check).
Graph generate(const GeneratorSpec& spec);

/// Draws until the graph is connected. Attempt t uses derive_seed(seed, t).
/// Throws std::runtime_error naming the spec once max_retries draws failed.
Graph generate_connected(const GeneratorSpec& spec);

std::string describe(const GeneratorSpec& spec);

}  // namespace kronspec
