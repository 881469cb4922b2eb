#include "kronspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kronspec {

SymMatrix::SymMatrix(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
        throw std::invalid_argument("SymMatrix: matrix is not square");
    }
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
            if (m_(i, j) != m_(j, i)) {
                throw std::invalid_argument("SymMatrix: matrix is not symmetric");
            }
        }
    }
}

Graph::Graph(std::size_t n, std::vector<std::uint8_t> adj)
    : n_(n), adj_(std::move(adj)), degrees_(n, 0) {
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v = 0; v < n_; ++v) {
            if (adj_[u * n_ + v]) {
                ++degrees_[u];
                if (u < v) edges_.emplace_back(u, v);
            }
        }
    }
}

std::vector<double> Graph::sorted_degrees() const {
    std::vector<double> d(degrees_.begin(), degrees_.end());
    std::sort(d.begin(), d.end());
    return d;
}

Matrix Graph::adjacency_matrix() const {
    Matrix a(n_, n_);
    for (std::size_t u = 0; u < n_; ++u)
        for (std::size_t v = 0; v < n_; ++v)
            a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = adj_[u * n_ + v];
    return a;
}

Matrix Graph::degree_matrix() const {
    Vector d(n_);
    for (std::size_t u = 0; u < n_; ++u) d(static_cast<Eigen::Index>(u)) = static_cast<double>(degrees_[u]);
    return d.asDiagonal();
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) {
    if (n == 0) throw std::invalid_argument("build_graph: a graph needs at least one vertex");
    std::vector<std::uint8_t> adj(n * n, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            std::ostringstream msg;
            msg << "build_graph: edge (" << u << ", " << v << ") out of range for n = " << n;
            throw std::invalid_argument(msg.str());
        }
        if (u == v) {
            std::ostringstream msg;
            msg << "build_graph: self-loop at vertex " << u;
            throw std::invalid_argument(msg.str());
        }
        adj[u * n + v] = 1;
        adj[v * n + u] = 1;
    }
    return Graph(n, std::move(adj));
}

SymMatrix laplacian(const Graph& g) {
    return SymMatrix(g.degree_matrix() - g.adjacency_matrix());
}

SymMatrix normalized_laplacian(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Vector inv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto d = g.degree(static_cast<std::size_t>(i));
        if (d == 0) {
            throw std::domain_error("normalized_laplacian: vertex " + std::to_string(i) +
                                    " is isolated");
        }
        inv_sqrt(i) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    Matrix m = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
                // Same product order for (i,j) and (j,i) keeps the matrix exactly symmetric.
                const double w = i < j ? inv_sqrt(i) * inv_sqrt(j) : inv_sqrt(j) * inv_sqrt(i);
                m(i, j) = -w;
            }
        }
    }
    return SymMatrix(std::move(m));
}

SymMatrix normalized_laplacian(const SymMatrix& weighted_adjacency) {
    const Matrix& w = weighted_adjacency.matrix();
    const Eigen::Index n = w.rows();
    Vector inv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (w(i, i) != 0.0) throw std::invalid_argument("normalized_laplacian: nonzero diagonal weight");
        const double d = w.row(i).sum();
        if (!(d > 0.0)) throw std::domain_error("normalized_laplacian: row " + std::to_string(i) + " has zero weight");
        inv_sqrt(i) = 1.0 / std::sqrt(d);
    }
    Matrix m = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) m(i, j) = -w(i, j) * (i < j ? inv_sqrt(i) * inv_sqrt(j) : inv_sqrt(j) * inv_sqrt(i));
    return SymMatrix(std::move(m));
}

Graph kronecker_graph(const Graph& g, const Graph& h) {
    const std::size_t ng = g.order();
    const std::size_t nh = h.order();
    const std::size_t n = ng * nh;
    std::vector<std::uint8_t> adj(n * n, 0);
    for (const auto& [i, j] : g.edges()) {
        for (const auto& [k, l] : h.edges()) {
            // (i,k)~(j,l) and (i,l)~(j,k), both orientations.
            const std::size_t ik = i * nh + k, jl = j * nh + l;
            const std::size_t il = i * nh + l, jk = j * nh + k;
            adj[ik * n + jl] = adj[jl * n + ik] = 1;
            adj[il * n + jk] = adj[jk * n + il] = 1;
        }
    }
    return Graph(n, std::move(adj));
}

Matrix kronecker_matrix(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

// BFS 2-coloring; color -1 means unvisited. Returns the number of components
// and writes whether an odd cycle was seen.
std::size_t color_components(const Graph& g, bool& odd_cycle) {
    const std::size_t n = g.order();
    std::vector<int> color(n, -1);
    std::vector<std::size_t> queue;
    queue.reserve(n);
    std::size_t components = 0;
    odd_cycle = false;
    for (std::size_t s = 0; s < n; ++s) {
        if (color[s] != -1) continue;
        ++components;
        color[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t u = queue[head];
            const auto row = g.adjacency_row(u);
            for (std::size_t v = 0; v < n; ++v) {
                if (!row[v]) continue;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    odd_cycle = true;
                }
            }
        }
    }
    return components;
}

}  // namespace

bool is_connected(const Graph& g) {
    bool odd = false;
    return color_components(g, odd) == 1;
}

bool is_bipartite(const Graph& g) {
    bool odd = false;
    color_components(g, odd);
    return !odd;
}

double edge_density(const Graph& g) {
    const double n = static_cast<double>(g.order());
    if (g.order() < 2) return 0.0;
    return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("edge list: missing \"n m\" header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t e = 0; e < m; ++e) {
        long long u = 0, v = 0;
        if (!(in >> u >> v)) {
            throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                     " edges, got " + std::to_string(e));
        }
        if (u < 0 || v < 0) throw std::runtime_error("edge list: negative vertex index");
        edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
    return build_graph(n, edges);
}

void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_edge_list(out, g);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

}  // namespace kronspec
