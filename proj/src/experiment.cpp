#include "lapperturb/experiment.hpp"

#include "lapperturb/almost_regular.hpp"
#include "lapperturb/errors.hpp"
#include "lapperturb/euler.hpp"
#include "lapperturb/graph_io.hpp"
#include "lapperturb/oracle.hpp"
#include "lapperturb/perturb.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace lapperturb {

namespace mp = boost::multiprecision;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

std::size_t to_size(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long long v = -1;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || v < 0) throw std::invalid_argument("bad " + what + ": '" + s + "'");
    return static_cast<std::size_t>(v);
}

double to_prob(const std::string& s) {
    std::size_t used = 0;
    double v = -1;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("bad link density: '" + s + "'");
    return v;
}

std::string double_label(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string alpha_label(double a) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << a;
    return os.str();
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::vector<std::string> args = colon == std::string::npos ? std::vector<std::string>{}
                                                                      : split(text.substr(colon + 1), ',');
    GeneratorSpec spec;
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) throw std::invalid_argument("bad generator arguments in '" + text + "'");
    };
    if (name == "erdos_renyi" || name == "er") {
        need(2, 3);
        spec.kind = GeneratorSpec::Kind::erdos_renyi;
        spec.n = to_size(args[0], "node count");
        spec.p = to_prob(args[1]);
        if (args.size() == 3) spec.seed = to_size(args[2], "seed");
    } else if (name == "antiregular") {
        need(1, 1);
        spec.kind = GeneratorSpec::Kind::antiregular;
        spec.n = to_size(args[0], "node count");
    } else if (name == "ring_with_core") {
        need(2, 2);
        spec.kind = GeneratorSpec::Kind::ring_with_core;
        spec.n = to_size(args[0], "node count");
        spec.k = to_size(args[1], "neighbour count");
    } else if (name == "complete") {
        need(1, 1);
        spec.kind = GeneratorSpec::Kind::complete;
        spec.n = to_size(args[0], "node count");
    } else {
        throw std::invalid_argument("unknown generator '" + name + "'");
    }
    return spec;
}

std::string describe(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::erdos_renyi:
            return "erdos_renyi:" + std::to_string(spec.n) + "," + double_label(spec.p) + "," + std::to_string(spec.seed);
        case GeneratorSpec::Kind::antiregular: return "antiregular:" + std::to_string(spec.n);
        case GeneratorSpec::Kind::ring_with_core:
            return "ring_with_core:" + std::to_string(spec.n) + "," + std::to_string(spec.k);
        case GeneratorSpec::Kind::complete: return "complete:" + std::to_string(spec.n);
    }
    return {};
}

Graph generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::erdos_renyi: return erdos_renyi(spec.n, spec.p, spec.seed);
        case GeneratorSpec::Kind::antiregular: return antiregular_graph(spec.n);
        case GeneratorSpec::Kind::ring_with_core: return ring_with_core(spec.n, spec.k);
        case GeneratorSpec::Kind::complete: return complete_graph(spec.n);
    }
    throw std::logic_error("unhandled generator");
}

Graph GraphSource::load() const {
    switch (kind) {
        case Kind::generator: return generate(generator);
        case Kind::edge_list: return read_edge_list_file(path);
        case Kind::example: return example_graph(example);
    }
    throw std::logic_error("unhandled graph source");
}

std::vector<std::size_t> QSelector::select(const Graph& g) const {
    const DegreeProfile profile = degree_profile(g);
    switch (kind) {
        case Kind::node:
            if (node >= g.size()) throw std::invalid_argument("node " + std::to_string(node + 1) + " out of range");
            if (!profile.is_unique(node)) throw NonUniqueDegree(node);
            return {node};
        case Kind::max_unique_degree: {
            auto q = profile.max_unique_degree_node();
            if (!q) return {};
            return {*q};
        }
        case Kind::all_unique: return {profile.unique_nodes.begin(), profile.unique_nodes.end()};
    }
    return {};
}

std::vector<Rational> default_t_grid(const Rational& zeta) {
    std::vector<Rational> grid;
    for (int t : {-6, -5, -4, -3, -2, -1, 1, 2})
        if (1 + t * zeta != 0) grid.emplace_back(t);
    return grid;
}

bool ExperimentConfig::is_ensemble() const {
    return graph_source.kind == GraphSource::Kind::generator &&
           graph_source.generator.kind == GeneratorSpec::Kind::erdos_renyi;
}

void ExperimentConfig::validate() const {
    if (K_max < 2) throw std::invalid_argument("K_max must be at least 2");
    if (K_check > K_max) throw std::invalid_argument("K_check exceeds K_max");
    if (t_grid.empty()) throw std::invalid_argument("t_grid is empty");
    for (const Rational& t : t_grid)
        if (1 + t * zeta == 0)
            throw std::invalid_argument("t = " + to_compact_string(t) + " is singular for zeta = " + to_compact_string(zeta));
    if (domain && !domain->is_exact() && domain->precision_bits < 24)
        throw std::invalid_argument("floating precision below 24 bits");
    if (is_ensemble()) {
        if (trials == 0) throw std::invalid_argument("trials must be positive");
        if (q_selector.kind == QSelector::Kind::all_unique)
            throw std::invalid_argument("ensembles need a single node per trial (node or max_unique_degree)");
        for (double p : densities)
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("link density outside [0,1]");
    }
}

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number()) return parse_rational(v.dump());
    throw std::invalid_argument("expected a number or rational string");
}

std::string domain_label(const NumberDomain& d) { return d.describe(); }

NumberDomain parse_domain(const nlohmann::json& v) {
    if (v.is_object()) return NumberDomain::floating(v.at("precision_bits").get<unsigned>());
    const std::string s = v.get<std::string>();
    if (s == "exact") return NumberDomain::exact();
    if (s.rfind("float", 0) == 0) {
        const std::string bits = s.substr(5);
        return NumberDomain::floating(bits.empty() ? 128u : static_cast<unsigned>(to_size(bits, "precision")));
    }
    throw std::invalid_argument("unknown domain '" + s + "'");
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("graph")) {
        const auto& g = j.at("graph");
        if (g.contains("generator")) {
            c.graph_source.kind = GraphSource::Kind::generator;
            c.graph_source.generator = parse_generator_spec(g.at("generator").get<std::string>());
        } else if (g.contains("edge_list")) {
            c.graph_source.kind = GraphSource::Kind::edge_list;
            c.graph_source.path = g.at("edge_list").get<std::string>();
        } else if (g.contains("example")) {
            c.graph_source.kind = GraphSource::Kind::example;
            const std::string e = g.at("example").get<std::string>();
            if (e != "e1" && e != "e2" && e != "e3") throw std::invalid_argument("unknown example '" + e + "'");
            c.graph_source.example = e[1] - '0';
        } else {
            throw std::invalid_argument("graph needs one of generator, edge_list, example");
        }
    }
    if (j.contains("q")) {
        const auto& q = j.at("q");
        if (q.is_number_integer()) {
            const auto node = q.get<long long>();
            if (node < 1) throw std::invalid_argument("q is 1-based");
            c.q_selector = {QSelector::Kind::node, static_cast<std::size_t>(node - 1)};
        } else {
            const std::string s = q.get<std::string>();
            if (s == "max_unique_degree")
                c.q_selector.kind = QSelector::Kind::max_unique_degree;
            else if (s == "all_unique")
                c.q_selector.kind = QSelector::Kind::all_unique;
            else
                throw std::invalid_argument("unknown q selector '" + s + "'");
        }
    }
    if (j.contains("t_grid")) {
        c.t_grid.clear();
        for (const auto& t : j.at("t_grid")) c.t_grid.push_back(json_rational(t));
    }
    if (j.contains("zeta")) {
        c.zeta = json_rational(j.at("zeta"));
        if (!j.contains("t_grid")) c.t_grid = default_t_grid(c.zeta);
    }
    if (j.contains("K_max")) c.K_max = j.at("K_max").get<std::size_t>();
    if (j.contains("K_check")) c.K_check = j.at("K_check").get<std::size_t>();
    if (j.contains("domain")) c.domain = parse_domain(j.at("domain"));
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("alpha_threshold")) c.alpha_threshold = j.at("alpha_threshold").get<double>();
    if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("densities")) c.densities = j.at("densities").get<std::vector<double>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    c.validate();
    return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    switch (c.graph_source.kind) {
        case GraphSource::Kind::generator: j["graph"] = {{"generator", describe(c.graph_source.generator)}}; break;
        case GraphSource::Kind::edge_list: j["graph"] = {{"edge_list", c.graph_source.path}}; break;
        case GraphSource::Kind::example: j["graph"] = {{"example", "e" + std::to_string(c.graph_source.example)}}; break;
    }
    switch (c.q_selector.kind) {
        case QSelector::Kind::node: j["q"] = c.q_selector.node + 1; break;
        case QSelector::Kind::max_unique_degree: j["q"] = "max_unique_degree"; break;
        case QSelector::Kind::all_unique: j["q"] = "all_unique"; break;
    }
    nlohmann::json grid = nlohmann::json::array();
    for (const Rational& t : c.t_grid) grid.push_back(to_compact_string(t));
    j["t_grid"] = grid;
    j["zeta"] = to_compact_string(c.zeta);
    j["K_max"] = c.K_max;
    j["K_check"] = c.K_check;
    if (c.domain) j["domain"] = domain_label(*c.domain);
    j["seed"] = c.seed;
    j["alpha_threshold"] = c.alpha_threshold;
    j["sizes"] = c.sizes;
    j["densities"] = c.densities;
    j["trials"] = c.trials;
    j["threads"] = c.threads;
    return j;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t n, double p, std::size_t trial) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(base);
    h = mix(h ^ static_cast<std::uint64_t>(n));
    h = mix(h ^ std::bit_cast<std::uint64_t>(p));
    h = mix(h ^ static_cast<std::uint64_t>(trial));
    return h;
}

double SweepCell::fraction() const {
    const std::size_t evaluated = trials - skipped;
    return evaluated == 0 ? 0.0 : static_cast<double>(converged) / static_cast<double>(evaluated);
}

namespace {

struct Evaluation {
    std::string xi;
    double alpha = 0.0;
    std::string mu;
    bool converged = false;
};

NumberDomain effective_domain(const ExperimentConfig& c, const Graph& g) {
    if (c.domain) return *c.domain;
    return g.is_weighted() ? NumberDomain::floating(128) : NumberDomain::exact();
}

std::vector<Real> oracle_for(const Graph& g, const Rational& zeta) {
    return symmetric_eigen<Real>(perturbed_matrix<Real>(g, Real(zeta))).eigenvalues;
}

template <Scalar T>
std::vector<Evaluation> evaluate_node(const Graph& g, std::size_t q, const ExperimentConfig& c,
                                      const std::vector<Real>& spectrum) {
    const CoefficientTable<T> table = coefficients<T>(g, q, c.K_check);
    std::vector<Evaluation> out;
    for (const Rational& t : c.t_grid) {
        const auto series = euler_series<T>(table, {T(t), T(c.zeta), c.K_check});
        const ConvergenceReport r = convergence_classify(series, spectrum, c.alpha_threshold, c.K_check);
        out.push_back({to_scientific_string(to_real(series.at(c.K_check)), 20), r.alpha[c.K_check],
                       to_scientific_string(r.matched_mu, 20), r.converged});
    }
    return out;
}

std::vector<Evaluation> evaluate(const Graph& g, std::size_t q, const ExperimentConfig& c,
                                 const NumberDomain& domain, const std::vector<Real>& spectrum) {
    if (domain.is_exact()) return evaluate_node<Rational>(g, q, c, spectrum);
    return evaluate_node<Real>(g, q, c, spectrum);
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

SweepOutput run_sweep(const ExperimentConfig& config) {
    config.validate();
    SweepOutput out;
    out.ensemble = config.is_ensemble();
    const unsigned bits = config.domain && !config.domain->is_exact() ? config.domain->precision_bits : 128;
    PrecisionScope precision(bits);

    if (!out.ensemble) {
        const Graph g = config.graph_source.load();
        const NumberDomain domain = effective_domain(config, g);
        const std::vector<Real> spectrum = oracle_for(g, config.zeta);
        for (std::size_t q : config.q_selector.select(g)) {
            const auto evals = evaluate(g, q, config, domain, spectrum);
            for (std::size_t i = 0; i < evals.size(); ++i)
                out.rows.push_back({q, config.t_grid[i], config.K_check, evals[i].xi, evals[i].alpha, evals[i].mu,
                                    evals[i].converged});
        }
        return out;
    }

    const GeneratorSpec& base = config.graph_source.generator;
    const std::vector<std::size_t> sizes = config.sizes.empty() ? std::vector<std::size_t>{base.n} : config.sizes;
    const std::vector<double> densities = config.densities.empty() ? std::vector<double>{base.p} : config.densities;

    for (std::size_t n : sizes) {
        for (double p : densities) {
            // outcome[trial][t]: -1 skipped, 0 diverged, 1 converged
            std::vector<std::vector<int>> outcome(config.trials);
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_lock;
            auto worker = [&] {
                for (std::size_t trial = next++; trial < config.trials; trial = next++) {
                    try {
                        const Graph g = erdos_renyi(n, p, trial_seed(config.seed, n, p, trial));
                        const auto nodes = config.q_selector.select(g);
                        if (nodes.empty()) {
                            outcome[trial].assign(config.t_grid.size(), -1);
                            continue;
                        }
                        const NumberDomain domain = effective_domain(config, g);
                        const auto evals = evaluate(g, nodes.front(), config, domain, oracle_for(g, config.zeta));
                        for (const auto& e : evals) outcome[trial].push_back(e.converged ? 1 : 0);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_lock);
                        if (!failure) failure = std::current_exception();
                    }
                }
            };
            std::vector<std::thread> pool;
            const unsigned workers = worker_count(config.threads, config.trials);
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            if (failure) std::rethrow_exception(failure);

            for (std::size_t i = 0; i < config.t_grid.size(); ++i) {
                SweepCell cell{n, p, config.t_grid[i], config.trials, 0, 0};
                for (const auto& o : outcome) {
                    if (o[i] < 0) ++cell.skipped;
                    if (o[i] > 0) ++cell.converged;
                }
                out.cells.push_back(cell);
            }
        }
    }
    return out;
}

void write_sweep_csv(std::ostream& out, const SweepOutput& result) {
    if (result.ensemble) {
        out << "N,p,t,trials,skipped,converged,fraction\n";
        for (const SweepCell& c : result.cells) {
            std::ostringstream frac;
            frac << std::fixed << std::setprecision(6) << c.fraction();
            out << c.n << ',' << double_label(c.p) << ',' << to_compact_string(c.t) << ',' << c.trials << ','
                << c.skipped << ',' << c.converged << ',' << frac.str() << '\n';
        }
        return;
    }
    out << "q,t,K,xi,alpha,matched_mu,converged\n";
    for (const SweepRow& r : result.rows)
        out << r.q + 1 << ',' << to_compact_string(r.t) << ',' << r.K << ',' << r.xi << ',' << alpha_label(r.alpha) << ','
            << r.matched_mu << ',' << (r.converged ? "true" : "false") << '\n';
}

bool ReproduceReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const DigestEntry& e) { return e.pass; });
}

}  // namespace lapperturb
