#include "lapperturb/errors.hpp"
#include "lapperturb/graph.hpp"
#include "lapperturb/graph_io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace lapperturb;

namespace {

std::vector<Rational> degrees_of(std::initializer_list<int> d) {
    std::vector<Rational> out;
    for (int x : d) out.emplace_back(x);
    return out;
}

void check_structure(const Graph& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g.weight(i, i) == 0);
        Rational row = 0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            CHECK(g.weight(i, j) == g.weight(j, i));
            row += g.weight(i, j);
        }
        CHECK(row == g.degree(i));
    }
}

}  // namespace

TEST_CASE("build_graph: the five-node tree") {
    const Graph g = build_graph(5, {{0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {1, 4, 1}});
    CHECK(g.degrees() == degrees_of({3, 1, 1, 1, 2}));
    CHECK_FALSE(g.is_weighted());
    CHECK(g.neighbors(4) == std::vector<std::size_t>{0, 1});
    CHECK(g.edges().size() == 4);
    check_structure(g);
}

TEST_CASE("build_graph: empty and weighted graphs") {
    const Graph empty = build_graph(2, {});
    CHECK(empty.degrees() == degrees_of({0, 0}));
    const Graph w = build_graph(3, {{0, 1, Rational(5, 2)}});
    CHECK(w.is_weighted());
    CHECK(w.degrees() == std::vector<Rational>{Rational(5, 2), Rational(5, 2), 0});
}

TEST_CASE("build_graph rejects invalid edges") {
    CHECK_THROWS_AS(build_graph(3, {{1, 1, 1}}), GraphError);
    CHECK_THROWS_AS(build_graph(3, {{0, 1, 1}, {1, 0, 1}}), GraphError);
    CHECK_THROWS_AS(build_graph(3, {{0, 3, 1}}), GraphError);
    CHECK_THROWS_AS(build_graph(3, {{0, 1, 0}}), GraphError);
    CHECK_THROWS_AS(build_graph(3, {{0, 1, -1}}), GraphError);
}

TEST_CASE("degree profiles") {
    const DegreeProfile e1 = degree_profile(example_graph(1));
    CHECK(e1.unique_nodes == std::set<std::size_t>{0, 4});
    CHECK(e1.kappa.at(0) == 1);
    CHECK(e1.kappa.at(4) == 1);
    CHECK(e1.max_unique_degree_node() == std::optional<std::size_t>(0));

    const DegreeProfile e2 = degree_profile(example_graph(2));
    CHECK(e2.unique_nodes == std::set<std::size_t>{2, 3, 6, 12});
    CHECK(e2.kappa.at(12) == Rational(1, 2));
    CHECK(e2.max_unique_degree_node() == std::optional<std::size_t>(6));

    const DegreeProfile regular = degree_profile(complete_graph(6));
    CHECK(regular.unique_nodes.empty());
    CHECK_FALSE(regular.max_unique_degree_node());
}

TEST_CASE("kappa never exceeds one on unweighted graphs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const DegreeProfile p = degree_profile(testsupport::random_graph(rng, 9, 0.4));
        for (const auto& [q, k] : p.kappa) CHECK(k <= 1);
    }
}

TEST_CASE("closed walk counts agree with brute-force enumeration") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + trial % 6;
        const Graph g = testsupport::random_graph(rng, n, 0.5);
        for (std::size_t q = 0; q < n; ++q) {
            const WalkCounts w = closed_walk_counts(g, q, 6);
            REQUIRE(w.counts.size() == 7);
            CHECK(w.counts[0] == 1);
            CHECK(w.counts[1] == 0);
            CHECK(w.counts[2] == g.degree(q));
            for (std::size_t m = 0; m <= 6; ++m) CHECK(w.counts[m] == Rational(testsupport::enumerate_closed_walks(g, q, m)));
        }
    }
}

TEST_CASE("closed walk counts on the tree and on complete graphs") {
    const WalkCounts tree = closed_walk_counts(example_graph(1), 0, 5);
    CHECK(tree.counts == degrees_of({1, 0, 3, 0, 10, 0}));
    CHECK(closed_walk_counts(example_graph(1), 0, 0).counts == degrees_of({1}));
    for (std::size_t N = 2; N <= 7; ++N) {
        const WalkCounts w = closed_walk_counts(complete_graph(N), 0, 8);
        for (std::size_t m = 0; m <= 8; ++m) {
            const Integer sign = m % 2 ? -1 : 1;
            const Integer expected = (ipow(Integer(N - 1), m) - sign) / Integer(N) + sign;
            CHECK(w.counts[m] == Rational(expected));
        }
    }
}

TEST_CASE("generators") {
    const Graph fig = ring_with_core(8, 1);
    CHECK(fig.degrees() == degrees_of({7, 3, 3, 3, 3, 3, 3, 3}));
    check_structure(fig);

    const Graph anti = antiregular_graph(10);
    CHECK(anti.degrees() == degrees_of({5, 5, 4, 6, 3, 7, 2, 8, 1, 9}));
    CHECK(degree_profile(anti).unique_nodes.size() == 8);
    check_structure(anti);

    for (std::size_t k = 1; k <= 14; ++k) {
        const Graph g = ring_with_core(31, k);
        const DegreeProfile p = degree_profile(g);
        CHECK(p.unique_nodes == std::set<std::size_t>{0});
        CHECK(g.degree(0) == 30);
        for (std::size_t i = 1; i < 31; ++i) CHECK(g.degree(i) == Rational(2 * k + 1));
        CHECK(p.kappa.at(0) == Rational(1, 31 - 2 * k - 2));
    }
    CHECK_THROWS_AS(ring_with_core(8, 3), GraphError);

    const Graph a = erdos_renyi(20, 0.3, 42);
    const Graph b = erdos_renyi(20, 0.3, 42);
    const Graph c = erdos_renyi(20, 0.3, 43);
    CHECK(a.edges().size() == b.edges().size());
    CHECK(graph_to_json(a) == graph_to_json(b));
    CHECK(graph_to_json(a) != graph_to_json(c));
    check_structure(a);
    CHECK(erdos_renyi(12, 0.0, 1).edges().empty());
    CHECK(erdos_renyi(12, 1.0, 1).edges().size() == 66);

    for (std::size_t n = 2; n <= 15; ++n) {
        const DegreeProfile p = degree_profile(antiregular_graph(n));
        CHECK(p.unique_nodes.size() == n - 2);
    }
}

TEST_CASE("Laplacian rows sum to zero") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = testsupport::random_graph(rng, 10, 0.4);
        const Matrix<Rational> q = laplacian<Rational>(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < g.size(); ++j) s += q(i, j);
            CHECK(s == 0);
        }
        const Matrix<Rational> m = perturbed_matrix<Rational>(g, Rational(-1));
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) CHECK(m(i, j) == q(i, j));
    }
}

TEST_CASE("edge-list text format") {
    const std::string text =
        "# the tree\n"
        "n 5\n"
        "1 3\n"
        "1 4   # trailing comment\n"
        "1 5 1\n"
        "\n"
        "2 5\n";
    const Graph g = parse_edge_list_text(text);
    CHECK(g.degrees() == degrees_of({3, 1, 1, 1, 2}));

    const Graph w = parse_edge_list_text("n 3\n1 2 5/2\n2 3 0.5\n");
    CHECK(w.is_weighted());
    CHECK(w.weight(0, 1) == Rational(5, 2));
    CHECK(w.weight(2, 1) == Rational(1, 2));

    std::ostringstream out;
    write_edge_list(out, w);
    const Graph back = parse_edge_list_text(out.str());
    CHECK(graph_to_json(back) == graph_to_json(w));

    CHECK_THROWS_AS(parse_edge_list_text("1 2\n"), GraphError);
    CHECK_THROWS_AS(parse_edge_list_text("n 3\n1 4\n"), GraphError);
    CHECK_THROWS_AS(parse_edge_list_text("n 3\n1 1\n"), GraphError);
    CHECK_THROWS_AS(parse_edge_list_text("n 3\n1 2 x\n"), std::exception);
}

TEST_CASE("graph JSON round trip") {
    const Graph g = example_graph(2);
    const nlohmann::json j = graph_to_json(g);
    CHECK(j.at("n") == 20);
    const Graph back = graph_from_json(j);
    CHECK(back.degrees() == g.degrees());
    CHECK(graph_to_json(back) == j);
}

TEST_CASE("embedded examples") {
    CHECK(example_graph(1).size() == 5);
    CHECK(example_graph(2).degrees() ==
          degrees_of({4, 4, 8, 3, 7, 4, 12, 4, 7, 6, 7, 6, 10, 6, 6, 6, 6, 5, 4, 5}));
    CHECK(graph_to_json(example_graph(3)) == graph_to_json(antiregular_graph(10)));
    CHECK_THROWS(example_graph(4));
    CHECK_THROWS_AS(parse_adjacency_text("0 1\n0 0\n"), GraphError);
}
