#ifndef LAPPERTURB_GRAPH_HPP
#define LAPPERTURB_GRAPH_HPP

#include "lapperturb/matrix.hpp"
#include "lapperturb/number.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace lapperturb {

// Nodes are 0-based in the API; text formats and the CLI use 1-based labels.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational weight = 1;
};

class Graph {
public:
    Graph() = default;

    std::size_t size() const { return n_; }
    bool is_weighted() const { return weighted_; }

    const Rational& weight(std::size_t i, std::size_t j) const { return weights_(i, j); }
    const Matrix<Rational>& weights() const { return weights_; }
    const std::vector<Rational>& degrees() const { return degrees_; }
    const Rational& degree(std::size_t i) const { return degrees_.at(i); }

    std::vector<std::size_t> neighbors(std::size_t i) const;
    std::vector<Edge> edges() const;

    template <class T>
    Matrix<T> adjacency() const {
        return weights_.template cast<T>();
    }

    friend Graph build_graph(std::size_t n, const std::vector<Edge>& edges);
    friend Graph graph_from_adjacency(const Matrix<Rational>& weights);

private:
    std::size_t n_ = 0;
    bool weighted_ = false;
    Matrix<Rational> weights_;
    std::vector<Rational> degrees_;
};

// Edges use 0-based endpoints. Rejects self-loops, duplicates, out-of-range nodes
// and non-positive weights.
Graph build_graph(std::size_t n, const std::vector<Edge>& edges);

// Validates symmetry, zero diagonal and non-negative entries.
Graph graph_from_adjacency(const Matrix<Rational>& weights);

struct DegreeProfile {
    std::vector<Rational> degrees;
    std::set<std::size_t> unique_nodes;
    // 1 / min_{k != q} |d_q - d_k|; only present for unique nodes. A single-node graph maps to 0.
    std::map<std::size_t, Rational> kappa;

    bool is_unique(std::size_t q) const { return unique_nodes.count(q) != 0; }
    // Unique-degree node of largest degree, if any.
    std::optional<std::size_t> max_unique_degree_node() const;
};

DegreeProfile degree_profile(const Graph& g);

struct WalkCounts {
    std::size_t node = 0;
    std::vector<Rational> counts;  // counts[m] = (A^m)_qq
};

WalkCounts closed_walk_counts(const Graph& g, std::size_t q, std::size_t max_length);

template <class T>
Matrix<T> laplacian(const Graph& g) {
    const std::size_t n = g.size();
    Matrix<T> q(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && g.weight(i, j) != 0) q(i, j) = -static_cast<T>(g.weight(i, j));
        q(i, i) = static_cast<T>(g.degree(i));
    }
    return q;
}

// Degree diagonal plus zeta times adjacency; zeta = -1 gives the Laplacian.
template <class T>
Matrix<T> perturbed_matrix(const Graph& g, const T& zeta) {
    const std::size_t n = g.size();
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && g.weight(i, j) != 0) m(i, j) = zeta * static_cast<T>(g.weight(i, j));
        m(i, i) = static_cast<T>(g.degree(i));
    }
    return m;
}

// Generators.
Graph complete_graph(std::size_t n);
// Node i < j (1-based labels) are joined iff j and n have the same parity.
Graph antiregular_graph(std::size_t n);
// Node 0 is the core, joined to all; nodes 1..n-1 form a ring where each node links to
// its k nearest neighbours on either side. Requires 2k + 2 < n.
Graph ring_with_core(std::size_t n, std::size_t k);
// G_p(n). Each pair i < j, in row-major order, draws one 64-bit word x from
// std::mt19937_64(seed) and becomes an edge iff (x >> 11) * 2^-53 < p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

}  // namespace lapperturb

#endif
