#ifndef LAPPERTURB_TEST_SUPPORT_HPP
#define LAPPERTURB_TEST_SUPPORT_HPP

#include "lapperturb/graph.hpp"

#include <random>
#include <vector>

namespace testsupport {

using lapperturb::Graph;
using lapperturb::Integer;
using lapperturb::Rational;

// Counts closed walks q -> q of length m by depth-first enumeration of every walk.
inline Integer enumerate_closed_walks(const Graph& g, std::size_t q, std::size_t m) {
    struct Walker {
        const Graph& g;
        std::size_t q;
        Integer count = 0;
        void go(std::size_t at, std::size_t left) {
            if (left == 0) {
                if (at == q) ++count;
                return;
            }
            for (std::size_t next = 0; next < g.size(); ++next)
                if (g.weight(at, next) != 0) go(next, left - 1);
        }
    } w{g, q};
    w.go(q, m);
    return w.count;
}

// (A^m)_{qq} by repeated dense matrix products.
inline std::vector<Rational> matrix_power_diagonal(const Graph& g, std::size_t q, std::size_t M) {
    const std::size_t n = g.size();
    std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    std::vector<Rational> out{p[q][q]};
    for (std::size_t m = 1; m <= M; ++m) {
        std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (p[i][k] != 0)
                    for (std::size_t j = 0; j < n; ++j)
                        if (g.weight(k, j) != 0) next[i][j] += p[i][k] * g.weight(k, j);
        p = std::move(next);
        out.push_back(p[q][q]);
    }
    return out;
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<lapperturb::Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) edges.push_back({u, v, 1});
    return lapperturb::build_graph(n, edges);
}

inline Graph random_tree(std::mt19937_64& rng, std::size_t n) {
    std::vector<lapperturb::Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> parent(0, v - 1);
        edges.push_back({parent(rng), v, 1});
    }
    return lapperturb::build_graph(n, edges);
}

inline Rational binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Rational r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace testsupport

#endif
