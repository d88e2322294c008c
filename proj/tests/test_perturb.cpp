#include "lapperturb/errors.hpp"
#include "lapperturb/graph_io.hpp"
#include "lapperturb/oracle.hpp"
#include "lapperturb/perturb.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace lapperturb;
namespace mp = boost::multiprecision;

namespace {

// Random graph that has at least one unique-degree node; returns the node too.
std::pair<Graph, std::size_t> random_unique(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> size(3, 12);
    std::uniform_real_distribution<double> density(0.15, 0.8);
    for (;;) {
        const Graph g = testsupport::random_graph(rng, size(rng), density(rng));
        const DegreeProfile p = degree_profile(g);
        if (p.unique_nodes.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, p.unique_nodes.size() - 1);
        return {g, *std::next(p.unique_nodes.begin(), static_cast<long>(pick(rng)))};
    }
}

Graph scaled(const Graph& g, const Rational& w) {
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.weight *= w;
    return build_graph(g.size(), edges);
}

}  // namespace

TEST_CASE("coefficients of the five-node tree") {
    const Graph g = example_graph(1);
    const auto t1 = coefficients<Rational>(g, 0, 4);
    CHECK(t1.d_q() == 3);
    CHECK(t1.c[1] == 0);
    CHECK(t1.c[2] == 2);
    CHECK(t1.c[3] == 0);
    CHECK(t1.c[4] == Rational(-5, 2));
    const auto t5 = coefficients<Rational>(g, 4, 4);
    CHECK(t5.c[2] == 0);
    CHECK(t5.c[3] == 0);
    CHECK(t5.c[4] == 2);

    const auto ex = explicit_c2_c3_c4<Rational>(g, 0);
    CHECK(ex.c2 == 2);
    CHECK(ex.c3 == 0);
    CHECK(ex.c4 == Rational(-5, 2));
}

TEST_CASE("non-unique node and bad order are rejected") {
    const Graph g = example_graph(1);
    CHECK_THROWS_AS(coefficients<Rational>(g, 1, 4), NonUniqueDegree);
    CHECK_THROWS_AS(explicit_c2_c3_c4<Rational>(g, 2), NonUniqueDegree);
    CHECK_THROWS_AS(coefficients<Rational>(g, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(coefficients<Rational>(g, 7, 4), std::out_of_range);
}

TEST_CASE("star centre") {
    for (std::size_t n = 4; n <= 9; ++n) {
        std::vector<Edge> edges;
        for (std::size_t v = 1; v < n; ++v) edges.push_back({0, v, 1});
        const Graph star = build_graph(n, edges);
        const auto ex = explicit_c2_c3_c4<Rational>(star, 0);
        CHECK(ex.c2 == Rational(n - 1, n - 2));
        CHECK(ex.c3 == 0);
        const auto table = coefficients<Rational>(star, 0, 4);
        CHECK(table.c[2] == ex.c2);
        CHECK(table.c[4] == ex.c4);
    }
}

TEST_CASE("recursion equals the explicit formulas on 200 random graphs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [g, q] = random_unique(rng);
        const auto table = coefficients<Rational>(g, q, 4);
        const auto ex = explicit_c2_c3_c4<Rational>(g, q);
        CHECK(table.c[2] == ex.c2);
        CHECK(table.c[3] == ex.c3);
        CHECK(table.c[4] == ex.c4);
    }
}

TEST_CASE("c1 and beta_jq vanish") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto [g, q] = random_unique(rng);
        const auto table = coefficients<Rational>(g, q, 8);
        CHECK(table.c[1] == 0);
        CHECK(table.beta[0][q] == 1);
        for (std::size_t r = 0; r < g.size(); ++r)
            if (r != q) CHECK(table.beta[0][r] == 0);
        for (std::size_t j = 1; j <= 8; ++j) CHECK(table.beta[j][q] == 0);
    }
}

TEST_CASE("odd coefficients vanish on trees") {
    std::mt19937_64 rng(99);
    int tested = 0;
    while (tested < 40) {
        const Graph tree = testsupport::random_tree(rng, 4 + tested % 9);
        const DegreeProfile p = degree_profile(tree);
        for (std::size_t q : p.unique_nodes) {
            const auto table = coefficients<Rational>(tree, q, 12);
            for (std::size_t j = 3; j <= 12; j += 2) CHECK(table.c[j] == 0);
            ++tested;
        }
    }
}

TEST_CASE("weighted path agrees with the unweighted one") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const auto [g, q] = random_unique(rng);
        const auto plain = coefficients<Rational>(g, q, 7);
        // Unit weights written explicitly still take the unweighted route.
        CHECK_FALSE(scaled(g, 1).is_weighted());
        // Scaling every weight by w scales the eigenvalue, hence every c_j, by w.
        const Rational w(3, 2);
        const Graph gw = scaled(g, w);
        REQUIRE(gw.is_weighted());
        const auto weighted = coefficients<Rational>(gw, q, 7);
        for (std::size_t j = 0; j <= 7; ++j) CHECK(weighted.c[j] == w * plain.c[j]);
    }
}

TEST_CASE("floating coefficients track the exact ones") {
    PrecisionScope scope(128);
    const Graph g = example_graph(2);
    const auto exact = coefficients<Rational>(g, 6, 30);
    const auto fl = coefficients<Real>(g, 6, 30);
    for (std::size_t j = 2; j <= 30; ++j) {
        const Real e(exact.c[j]);
        CHECK(mp::abs(fl.c[j] - e) <= Real("1e-25") * (1 + mp::abs(e)));
    }
    CHECK(exact.bits.size() == 31);
    CHECK(fl.bits.empty());
}

TEST_CASE("Taylor partial sums reproduce a direct eigenvalue solve for small zeta") {
    // For |zeta| well inside the radius, the truncated series must match the eigenvalue of
    // Delta + zeta A nearest d_q computed by the dense solver.
    PrecisionScope scope(128);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const auto [g, q] = random_unique(rng);
        const Rational zeta(1, 50);
        const auto table = coefficients<Rational>(g, q, 24);
        const Real xi(taylor_partial_sums<Rational>(table, zeta, 24).at(24));
        const auto spec = symmetric_eigen<Real>(perturbed_matrix<Real>(g, Real(zeta)));
        Real best = 1e9;
        for (const Real& mu : spec.eigenvalues) best = mp::min(best, Real(mp::abs(mu - xi)));
        CHECK(best < Real("1e-25"));
    }
}

TEST_CASE("Taylor partial sums") {
    const auto table = coefficients<Rational>(example_graph(1), 0, 6);
    const auto zero = taylor_partial_sums<Rational>(table, Rational(0), 6);
    for (std::size_t K = 0; K <= 6; ++K) CHECK(zero.at(K) == 3);
    const auto lap = taylor_partial_sums<Rational>(table, Rational(-1), 6);
    CHECK(lap.at(2) == 3 + table.c[2]);
    CHECK(lap.at(4) == Rational(5, 2));
    CHECK(lap.kind == SeriesEvaluation<Rational>::Kind::taylor);
    CHECK(lap.k_max() == 6);
    CHECK_THROWS(taylor_partial_sums<Rational>(table, Rational(-1), 7));
}

TEST_CASE("coefficient bounds") {
    const Graph g = example_graph(1);
    const auto table = coefficients<Rational>(g, 0, 6);
    const auto report = coefficient_bounds_ok(g, 0, table);
    CHECK(report.ok());
    REQUIRE(report.hypothesis.size() == 5);
    CHECK(report.hypothesis.front().j == 2);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto [h, q] = random_unique(rng);
        const auto t = coefficients<Rational>(h, q, 4);
        const auto r = coefficient_bounds_ok(h, q, t);
        CHECK(r.c2_ok);
        CHECK(r.c3_ok);
        CHECK(r.c4_ok);
    }

    const auto e2 = example_graph(2);
    const auto report7 = coefficient_bounds_ok(e2, 6, coefficients<Rational>(e2, 6, 10));
    CHECK(report7.ok());
    CHECK(report7.hypothesis.size() == 9);

    const Graph weighted = build_graph(3, {{0, 1, 2}, {1, 2, 1}});
    CHECK_THROWS(coefficient_bounds_ok(weighted, 0, coefficients<Rational>(weighted, 0, 4)));
}

TEST_CASE("eigenvector reconstruction") {
    const Graph g = example_graph(1);
    const auto table = coefficients<Rational>(g, 0, 6);
    const auto v0 = reconstruct_eigenvector<Rational>(table, Rational(-1), 0);
    CHECK(v0 == std::vector<Rational>{1, 0, 0, 0, 0});
    const Rational zeta(-1, 3);
    const auto v1 = reconstruct_eigenvector<Rational>(table, zeta, 1);
    CHECK(v1[0] == 1);
    for (std::size_t r = 1; r < 5; ++r)
        CHECK(v1[r] == zeta * g.weight(r, 0) / (g.degree(0) - g.degree(r)));

    // Residual of the reconstructed pair on Example 2, node 7, at a zeta inside the radius.
    PrecisionScope scope(128);
    const Graph e2 = example_graph(2);
    const Real z("-0.1");
    const auto t7 = coefficients<Real>(e2, 6, 30);
    const auto v = reconstruct_eigenvector<Real>(t7, z, 30);
    CHECK(v[6] == 1);
    const Real xi = taylor_partial_sums<Real>(t7, z, 30).at(30);
    const auto wv = perturbed_matrix<Real>(e2, z).multiply(v);
    Real num = 0, den = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += (wv[i] - xi * v[i]) * (wv[i] - xi * v[i]);
        den += v[i] * v[i];
    }
    CHECK(mp::sqrt(num / den) < Real("1e-8"));
}

TEST_CASE("coefficient JSON") {
    const auto table = coefficients<Rational>(example_graph(1), 0, 4);
    const auto j = coefficient_table_to_json(table);
    CHECK(j.at("q") == 1);
    CHECK(j.at("K") == 4);
    CHECK(j.at("c") == nlohmann::json::array({"2/1", "0/1", "-5/2"}));
}
