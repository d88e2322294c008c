#include "lapperturb/experiment.hpp"
#include "lapperturb/errors.hpp"
#include "lapperturb/graph_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace lapperturb;

namespace {

std::string csv(const SweepOutput& out) {
    std::ostringstream s;
    write_sweep_csv(s, out);
    return s.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("generator specs") {
    const GeneratorSpec er = parse_generator_spec("erdos_renyi:20,0.2,7");
    CHECK(er.kind == GeneratorSpec::Kind::erdos_renyi);
    CHECK(er.n == 20);
    CHECK(er.p == 0.2);
    CHECK(er.seed == 7);
    CHECK(parse_generator_spec("er:10,0.5").seed == 1);
    CHECK(parse_generator_spec("antiregular:10").kind == GeneratorSpec::Kind::antiregular);
    const GeneratorSpec ring = parse_generator_spec("ring_with_core:21,9");
    CHECK(ring.k == 9);
    CHECK(generate(ring).degree(0) == 20);
    CHECK(generate(parse_generator_spec("complete:5")).edges().size() == 10);
    CHECK(parse_generator_spec(describe(er)).seed == 7);
    CHECK_THROWS(parse_generator_spec("lattice:4"));
    CHECK_THROWS(parse_generator_spec("erdos_renyi:20"));
    CHECK_THROWS(parse_generator_spec("erdos_renyi:20,1.5"));
}

TEST_CASE("q selection") {
    const Graph e2 = example_graph(2);
    CHECK(QSelector{QSelector::Kind::max_unique_degree, 0}.select(e2) == std::vector<std::size_t>{6});
    CHECK(QSelector{QSelector::Kind::all_unique, 0}.select(e2) == std::vector<std::size_t>{2, 3, 6, 12});
    CHECK(QSelector{QSelector::Kind::node, 12}.select(e2) == std::vector<std::size_t>{12});
    CHECK_THROWS_AS((QSelector{QSelector::Kind::node, 11}.select(e2)), NonUniqueDegree);
    CHECK(QSelector{QSelector::Kind::max_unique_degree, 0}.select(complete_graph(5)).empty());
}

TEST_CASE("default t grid drops singular values") {
    const auto lap = default_t_grid();
    CHECK(lap.size() == 7);
    CHECK(std::find(lap.begin(), lap.end(), Rational(1)) == lap.end());
    const auto signless = default_t_grid(Rational(1));
    CHECK(signless.size() == 7);
    CHECK(std::find(signless.begin(), signless.end(), Rational(-1)) == signless.end());
    CHECK(default_t_grid(Rational(-2)).size() == 8);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.t_grid = {Rational(1)};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = ExperimentConfig{};
    c.K_check = 40;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = ExperimentConfig{};
    c.graph_source.kind = GraphSource::Kind::generator;
    c.graph_source.generator = parse_generator_spec("er:20,0.2");
    c.q_selector.kind = QSelector::Kind::all_unique;
    CHECK(c.is_ensemble());
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("config JSON round trip") {
    const auto j = nlohmann::json::parse(R"({
        "graph": {"generator": "erdos_renyi:20,0.2"},
        "q": "max_unique_degree",
        "t_grid": [-3, "-1/2", -1],
        "zeta": -1,
        "K_max": 40,
        "K_check": 30,
        "domain": "float128",
        "seed": 9,
        "alpha_threshold": -5,
        "sizes": [20, 30],
        "densities": [0.2, 0.8],
        "trials": 100,
        "threads": 2
    })");
    const ExperimentConfig c = config_from_json(j);
    CHECK(c.is_ensemble());
    CHECK(c.t_grid == std::vector<Rational>{-3, Rational(-1, 2), -1});
    CHECK(c.K_max == 40);
    CHECK(c.domain);
    CHECK_FALSE(c.domain->is_exact());
    CHECK(c.domain->precision_bits == 128);
    CHECK(c.seed == 9);
    CHECK(c.alpha_threshold == -5.0);
    CHECK(c.sizes == std::vector<std::size_t>{20, 30});
    CHECK(c.trials == 100);
    const ExperimentConfig back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));

    const ExperimentConfig node = config_from_json(nlohmann::json::parse(R"({"graph": {"example": "e2"}, "q": 13})"));
    CHECK(node.q_selector.kind == QSelector::Kind::node);
    CHECK(node.q_selector.node == 12);
    CHECK(node.t_grid == default_t_grid());

    const ExperimentConfig z = config_from_json(nlohmann::json::parse(R"({"graph": {"example": "e1"}, "zeta": 1})"));
    CHECK(z.t_grid == default_t_grid(Rational(1)));
    CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"q": "smallest"})")));
    CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"graph": {"example": "e2"}, "q": 0})")));
}

TEST_CASE("trial seeds") {
    CHECK(trial_seed(1, 20, 0.2, 0) == trial_seed(1, 20, 0.2, 0));
    CHECK(trial_seed(1, 20, 0.2, 0) != trial_seed(1, 20, 0.2, 1));
    CHECK(trial_seed(1, 20, 0.2, 0) != trial_seed(2, 20, 0.2, 0));
    CHECK(trial_seed(1, 20, 0.2, 0) != trial_seed(1, 21, 0.2, 0));
    CHECK(trial_seed(1, 20, 0.2, 0) != trial_seed(1, 20, 0.3, 0));
}

TEST_CASE("single-graph sweep") {
    ExperimentConfig c;
    c.graph_source.kind = GraphSource::Kind::example;
    c.graph_source.example = 2;
    c.q_selector = {QSelector::Kind::node, 12};
    c.t_grid = {Rational(-1)};
    const SweepOutput out = run_sweep(c);
    CHECK_FALSE(out.ensemble);
    REQUIRE(out.rows.size() == 1);
    CHECK(out.rows[0].converged);
    CHECK(out.rows[0].xi.rfind("1.1619913670004495261", 0) == 0);
    const std::string text = csv(out);
    CHECK(text.rfind("q,t,K,xi,alpha,matched_mu,converged\n13,-1,30,", 0) == 0);
    CHECK(line_count(text) == 2);

    c.q_selector.kind = QSelector::Kind::all_unique;
    c.t_grid = default_t_grid();
    CHECK(run_sweep(c).rows.size() == 4 * 7);
}

TEST_CASE("ensemble sweep is deterministic and thread-count independent") {
    ExperimentConfig c;
    c.graph_source.kind = GraphSource::Kind::generator;
    c.graph_source.generator = parse_generator_spec("er:14,0.3");
    c.t_grid = {Rational(-3), Rational(-1)};
    c.trials = 24;
    c.sizes = {10, 14};
    c.densities = {0.2, 0.8};
    c.threads = 1;
    const std::string one = csv(run_sweep(c));
    c.threads = 4;
    const std::string four = csv(run_sweep(c));
    CHECK(one == four);
    CHECK(csv(run_sweep(c)) == four);
    CHECK(one.rfind("N,p,t,trials,skipped,converged,fraction\n", 0) == 0);
    CHECK(line_count(one) == 1 + 2 * 2 * 2);

    const SweepOutput out = run_sweep(c);
    for (const SweepCell& cell : out.cells) {
        CHECK(cell.trials == 24);
        CHECK(cell.skipped + cell.converged <= cell.trials);
        if (cell.skipped < cell.trials)
            CHECK(cell.fraction() == doctest::Approx(double(cell.converged) / double(cell.trials - cell.skipped)));
    }
    c.seed = 2;
    CHECK(csv(run_sweep(c)) != four);
}

TEST_CASE("graphs without a unique degree are skipped") {
    ExperimentConfig c;
    c.graph_source.kind = GraphSource::Kind::generator;
    c.graph_source.generator = parse_generator_spec("er:6,1.0");
    c.t_grid = {Rational(-1)};
    c.trials = 5;
    const SweepOutput out = run_sweep(c);
    REQUIRE(out.cells.size() == 1);
    CHECK(out.cells[0].skipped == 5);
    CHECK(out.cells[0].converged == 0);
    CHECK(out.cells[0].fraction() == 0.0);
}

TEST_CASE("edge-list graph source") {
    const std::string path = "test_experiment_tree.edges";
    {
        std::ofstream f(path);
        f << "n 5\n1 3\n1 4\n1 5\n2 5\n";
    }
    GraphSource s;
    s.kind = GraphSource::Kind::edge_list;
    s.path = path;
    CHECK(s.load().degree(0) == 3);
    std::remove(path.c_str());
    CHECK_THROWS(s.load());
}

TEST_CASE("reproduce digests") {
    const ReproduceReport e1 = reproduce("e1", {});
    CHECK(e1.all_pass());
    CHECK(e1.files.empty());
    const ReproduceReport e3 = reproduce("e3", "reproduce_test_out");
    CHECK(e3.all_pass());
    REQUIRE(e3.files.size() == 2);
    std::ifstream series(e3.files[0]);
    std::string header;
    std::getline(series, header);
    CHECK(header == "q,K,t,xi,alpha");
    CHECK_THROWS(reproduce("e9", {}));
}
