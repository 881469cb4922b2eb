#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace kronspec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using Edge = std::pair<std::size_t, std::size_t>;

// Dense real symmetric matrix. Symmetry is checked on construction; every
// entry pair is stored mirrored so entries(i,j) == entries(j,i) exactly.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(Matrix entries);

    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

private:
    Matrix m_;
};

/// Simple undirected graph (no loops, no multi-edges) on vertices 0..n-1.
///
/// Immutable after construction. Adjacency is stored densely as a row-major
/// 0/1 byte matrix; degrees and the sorted edge list are cached.
class Graph {
public:
    std::size_t order() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
    std::span<const std::uint8_t> adjacency_row(std::size_t u) const {
        return {adj_.data() + u * n_, n_};
    }

    const std::vector<std::size_t>& degrees() const { return degrees_; }
    std::size_t degree(std::size_t v) const { return degrees_[v]; }

    /// Degrees sorted ascending.
    std::vector<double> sorted_degrees() const;

    /// Edges as (u, v) with u < v, lexicographically sorted.
    const std::vector<Edge>& edges() const { return edges_; }

    Matrix adjacency_matrix() const;
    Matrix degree_matrix() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

private:
    friend Graph build_graph(std::size_t n, std::span<const Edge> edges);
    friend Graph kronecker_graph(const Graph& g, const Graph& h);

    Graph(std::size_t n, std::vector<std::uint8_t> adj);

    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::size_t> degrees_;
    std::vector<Edge> edges_;
};

/// Builds a graph from an unordered edge list. Duplicate edges (in either
/// orientation) are ignored. Throws std::invalid_argument on an out-of-range
/// endpoint or a self-loop.
Graph build_graph(std::size_t n, std::span<const Edge> edges);

SymMatrix laplacian(const Graph& g);

/// I - D^{-1/2} A D^{-1/2}. Throws std::domain_error if any vertex is isolated.
SymMatrix normalized_laplacian(const Graph& g);

/// I - D^{-1/2} W D^{-1/2} for a nonnegative weighted adjacency W with zero
/// diagonal; D holds the row sums. Throws std::domain_error on a zero row.
SymMatrix normalized_laplacian(const SymMatrix& weighted_adjacency);

/// Direct (tensor) product. Vertex (i, k) maps to index i*|h| + k, so the
/// adjacency equals kron(A_g, A_h).
Graph kronecker_graph(const Graph& g, const Graph& h);

Matrix kronecker_matrix(const Matrix& a, const Matrix& b);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

/// 2|E| / (n(n-1)); 0 for graphs with fewer than two vertices.
double edge_density(const Graph& g);

// Edge-list text format: "n m" on the first line, then m lines "u v".
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);
void save_edge_list(const std::string& path, const Graph& g);
Graph load_edge_list(const std::string& path);

}  // namespace kronspec
