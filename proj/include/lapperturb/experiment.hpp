#ifndef LAPPERTURB_EXPERIMENT_HPP
#define LAPPERTURB_EXPERIMENT_HPP

#include "lapperturb/graph.hpp"
#include "lapperturb/number.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lapperturb {

struct GeneratorSpec {
    enum class Kind { erdos_renyi, antiregular, ring_with_core, complete };
    Kind kind = Kind::erdos_renyi;
    std::size_t n = 0;
    double p = 0.0;       // erdos_renyi
    std::size_t k = 0;    // ring_with_core
    std::uint64_t seed = 1;  // erdos_renyi; ensembles derive per-trial seeds instead
};

// "erdos_renyi:N,p[,seed]", "antiregular:N", "ring_with_core:N,k", "complete:N".
GeneratorSpec parse_generator_spec(const std::string& text);
std::string describe(const GeneratorSpec& spec);
Graph generate(const GeneratorSpec& spec);

struct GraphSource {
    enum class Kind { generator, edge_list, example };
    Kind kind = Kind::example;
    GeneratorSpec generator;
    std::string path;
    int example = 2;

    Graph load() const;
};

struct QSelector {
    enum class Kind { node, max_unique_degree, all_unique };
    Kind kind = Kind::max_unique_degree;
    std::size_t node = 0;  // 0-based, for Kind::node

    // Empty when the graph has no matching unique-degree node.
    std::vector<std::size_t> select(const Graph& g) const;
};

// {-6..-1, 1, 2} without the values where 1 + t zeta = 0.
std::vector<Rational> default_t_grid(const Rational& zeta = -1);

struct ExperimentConfig {
    GraphSource graph_source;
    QSelector q_selector;
    std::vector<Rational> t_grid = default_t_grid();
    Rational zeta = -1;
    std::size_t K_max = 30;
    std::optional<NumberDomain> domain;  // unset: exact for unweighted graphs, float128 otherwise
    std::uint64_t seed = 1;
    double alpha_threshold = -4.0;
    std::size_t K_check = 30;

    // Erdos-Renyi ensembles: one cell per (N, p); empty lists fall back to the generator's n and p.
    std::vector<std::size_t> sizes;
    std::vector<double> densities;
    std::size_t trials = 1000;
    unsigned threads = 0;  // 0: hardware concurrency

    bool is_ensemble() const;
    // Drops nothing silently: throws std::invalid_argument on singular t values or bad orders.
    void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// Seed of trial `trial` in cell (n, p): splitmix64 over the base seed, n, the bits of p and trial.
std::uint64_t trial_seed(std::uint64_t base, std::size_t n, double p, std::size_t trial);

struct SweepCell {
    std::size_t n = 0;
    double p = 0.0;
    Rational t;
    std::size_t trials = 0;
    std::size_t skipped = 0;  // no unique-degree node
    std::size_t converged = 0;

    double fraction() const;
};

struct SweepRow {
    std::size_t q = 0;
    Rational t;
    std::size_t K = 0;
    std::string xi;
    double alpha = 0.0;
    std::string matched_mu;
    bool converged = false;
};

struct SweepOutput {
    bool ensemble = false;
    std::vector<SweepCell> cells;  // ensemble mode
    std::vector<SweepRow> rows;    // single-graph mode, evaluated at K_check
};

SweepOutput run_sweep(const ExperimentConfig& config);
void write_sweep_csv(std::ostream& out, const SweepOutput& result);

struct DigestEntry {
    std::string name;
    std::string expected;
    std::string obtained;
    bool pass = false;
};

struct ReproduceReport {
    std::string example;
    std::vector<DigestEntry> entries;
    std::vector<std::filesystem::path> files;

    bool all_pass() const;
};

// example: e1, e2, e3 or almost_regular. Writes <example>_series.csv and <example>_digest.csv
// into out_dir when it is non-empty.
ReproduceReport reproduce(const std::string& example, const std::filesystem::path& out_dir);

}  // namespace lapperturb

#endif
