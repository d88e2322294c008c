#include "lapperturb/graph.hpp"

#include "lapperturb/errors.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <random>
#include <string>

namespace lapperturb {

namespace {

std::string label(std::size_t node) { return std::to_string(node + 1); }

void finish(std::size_t n, Matrix<Rational>& w, bool& weighted, std::vector<Rational>& degrees) {
    weighted = false;
    degrees.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& a = w(i, j);
            if (a != 0 && a != 1) weighted = true;
            degrees[i] += a;
        }
    }
}

}  // namespace

std::vector<std::size_t> Graph::neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
        if (weights_(i, j) != 0) out.push_back(j);
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (weights_(i, j) != 0) out.push_back({i, j, weights_(i, j)});
    return out;
}

Graph build_graph(std::size_t n, const std::vector<Edge>& edges) {
    Graph g;
    g.n_ = n;
    g.weights_ = Matrix<Rational>(n, n);
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n)
            throw GraphError("edge (" + label(e.u) + "," + label(e.v) + ") out of range for n=" +
                             std::to_string(n));
        if (e.u == e.v) throw GraphError("self-loop at node " + label(e.u));
        if (e.weight <= 0)
            throw GraphError("non-positive weight on edge (" + label(e.u) + "," + label(e.v) + ")");
        if (g.weights_(e.u, e.v) != 0)
            throw GraphError("duplicate edge (" + label(e.u) + "," + label(e.v) + ")");
        g.weights_(e.u, e.v) = e.weight;
        g.weights_(e.v, e.u) = e.weight;
    }
    finish(n, g.weights_, g.weighted_, g.degrees_);
    return g;
}

Graph graph_from_adjacency(const Matrix<Rational>& weights) {
    if (weights.rows() != weights.cols()) throw GraphError("adjacency matrix is not square");
    const std::size_t n = weights.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (weights(i, i) != 0) throw GraphError("self-loop at node " + label(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (weights(i, j) < 0) throw GraphError("negative weight at (" + label(i) + "," + label(j) + ")");
            if (weights(i, j) != weights(j, i))
                throw GraphError("adjacency matrix not symmetric at (" + label(i) + "," + label(j) + ")");
        }
    }
    Graph g;
    g.n_ = n;
    g.weights_ = weights;
    finish(n, g.weights_, g.weighted_, g.degrees_);
    return g;
}

std::optional<std::size_t> DegreeProfile::max_unique_degree_node() const {
    std::optional<std::size_t> best;
    for (std::size_t q : unique_nodes)
        if (!best || degrees[q] > degrees[*best]) best = q;
    return best;
}

DegreeProfile degree_profile(const Graph& g) {
    DegreeProfile p;
    p.degrees = g.degrees();
    const std::size_t n = g.size();
    for (std::size_t q = 0; q < n; ++q) {
        bool unique = true;
        Rational min_gap = -1;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == q) continue;
            Rational gap = boost::multiprecision::abs(p.degrees[q] - p.degrees[k]);
            if (gap == 0) {
                unique = false;
                break;
            }
            if (min_gap < 0 || gap < min_gap) min_gap = gap;
        }
        if (!unique) continue;
        p.unique_nodes.insert(q);
        p.kappa[q] = min_gap < 0 ? Rational(0) : Rational(1 / min_gap);
    }
    return p;
}

WalkCounts closed_walk_counts(const Graph& g, std::size_t q, std::size_t max_length) {
    if (q >= g.size()) throw GraphError("node " + label(q) + " out of range");
    WalkCounts w;
    w.node = q;
    w.counts.reserve(max_length + 1);
    std::vector<Rational> v(g.size(), Rational(0));
    v[q] = 1;
    w.counts.push_back(1);
    for (std::size_t m = 1; m <= max_length; ++m) {
        v = g.weights().multiply(v);
        w.counts.push_back(v[q]);
    }
    return w;
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, 1});
    return build_graph(n, edges);
}

Graph antiregular_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            if (j % 2 == n % 2) edges.push_back({i - 1, j - 1, 1});
    return build_graph(n, edges);
}

Graph ring_with_core(std::size_t n, std::size_t k) {
    if (2 * k + 2 >= n)
        throw GraphError("ring_with_core needs 2k+2 < n so the core degree is unique (n=" +
                         std::to_string(n) + ", k=" + std::to_string(k) + ")");
    const std::size_t ring = n - 1;
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) edges.push_back({0, i, 1});
    for (std::size_t i = 0; i < ring; ++i)
        for (std::size_t s = 1; s <= k; ++s) {
            std::size_t j = (i + s) % ring;
            edges.push_back({1 + i, 1 + j, 1});
        }
    return build_graph(n, edges);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw GraphError("link density p must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < p) edges.push_back({i, j, 1});
        }
    return build_graph(n, edges);
}

}  // namespace lapperturb
