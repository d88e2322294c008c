#include "lapperturb/almost_regular.hpp"
#include "lapperturb/errors.hpp"
#include "lapperturb/euler.hpp"
#include "lapperturb/experiment.hpp"
#include "lapperturb/graph_io.hpp"
#include "lapperturb/oracle.hpp"
#include "lapperturb/perturb.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace lapperturb;

namespace {

struct GraphArgs {
    std::string example;
    std::string edges;
    std::string generate;

    void attach(CLI::App* app) {
        auto* e = app->add_option("--example", example, "embedded example graph")
                      ->check(CLI::IsMember({"e1", "e2", "e3"}));
        auto* f = app->add_option("--edges", edges, "edge-list file (n <count> header, 1-based u v [w])")
                      ->check(CLI::ExistingFile);
        auto* g = app->add_option("--generate", generate,
                                  "erdos_renyi:N,p[,seed] | antiregular:N | ring_with_core:N,k | complete:N");
        e->excludes(f)->excludes(g);
        f->excludes(g);
    }

    GraphSource source() const {
        GraphSource s;
        if (!example.empty()) {
            s.kind = GraphSource::Kind::example;
            s.example = example[1] - '0';
        } else if (!edges.empty()) {
            s.kind = GraphSource::Kind::edge_list;
            s.path = edges;
        } else if (!generate.empty()) {
            s.kind = GraphSource::Kind::generator;
            s.generator = parse_generator_spec(generate);
        } else {
            throw CLI::ValidationError("graph", "one of --example, --edges, --generate is required");
        }
        return s;
    }

    Graph load() const { return source().load(); }
};

struct DomainArgs {
    bool exact = false;
    unsigned precision = 0;

    void attach(CLI::App* app) {
        auto* e = app->add_flag("--exact", exact, "exact rational arithmetic; rationals print as p/q");
        auto* p = app->add_option("--precision", precision, "floating precision in bits")->check(CLI::Range(24u, 100000u));
        e->excludes(p);
    }

    NumberDomain resolve(const Graph& g) const {
        if (exact) {
            if (g.is_weighted()) {
                // Weights are stored as rationals, so exact mode stays valid for weighted inputs too.
            }
            return NumberDomain::exact();
        }
        if (precision) return NumberDomain::floating(precision);
        return g.is_weighted() ? NumberDomain::floating(128) : NumberDomain::exact();
    }
};

std::size_t node_index(long long node, const Graph& g) {
    if (node < 1 || static_cast<std::size_t>(node) > g.size())
        throw std::invalid_argument("node " + std::to_string(node) + " out of range 1.." + std::to_string(g.size()));
    return static_cast<std::size_t>(node - 1);
}

template <Scalar T>
std::string value_text(const T& v, int digits) {
    if constexpr (std::same_as<T, Rational>) {
        (void)digits;
        return to_fraction_string(v);
    } else {
        return to_decimal_string(v, digits);
    }
}

// Runs `fn` with T = Rational or Real according to the domain, holding the precision for Real.
template <class Fn>
void with_domain(const NumberDomain& domain, Fn&& fn) {
    PrecisionScope scope(domain.is_exact() ? 128 : domain.precision_bits);
    if (domain.is_exact())
        fn(Rational{});
    else
        fn(Real{});
}

std::vector<Real> oracle_eigenvalues(const Graph& g, const Rational& zeta) {
    return symmetric_eigen<Real>(perturbed_matrix<Real>(g, Real(zeta))).eigenvalues;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplacian eigenvalues from perturbation series around a unique degree"};
    app.require_subcommand(1);

    // coeffs
    GraphArgs coeffs_graph;
    DomainArgs coeffs_domain;
    long long coeffs_node = 0;
    std::size_t coeffs_order = 4;
    int coeffs_digits = 30;
    bool coeffs_json = false, coeffs_bits = false, coeffs_bounds = false;
    auto* coeffs = app.add_subcommand("coeffs", "perturbation coefficients c_2..c_K of a unique-degree node");
    coeffs_graph.attach(coeffs);
    coeffs_domain.attach(coeffs);
    coeffs->add_option("--node,-q", coeffs_node, "expansion node (1-based)")->required();
    coeffs->add_option("--order,-K", coeffs_order, "highest order K")->check(CLI::Range(2, 100000));
    coeffs->add_option("--digits", coeffs_digits, "significant digits for floating output");
    coeffs->add_flag("--json", coeffs_json, "print {q, K, d_q, c} JSON");
    coeffs->add_flag("--bits", coeffs_bits, "print numerator/denominator bit lengths per order");
    coeffs->add_flag("--bounds", coeffs_bounds, "check the c_2..c_4 bounds and report the kappa hypothesis");

    // taylor / euler share most options
    GraphArgs series_graph;
    DomainArgs series_domain;
    long long series_node = 0;
    std::size_t series_order = 30;
    std::string series_zeta = "-1";
    std::string series_t = "-1";
    int series_digits = 20;
    bool series_csv = false;
    std::size_t series_check = 30;
    double series_threshold = -4.0;
    auto* taylor = app.add_subcommand("taylor", "Taylor partial sums of the eigenvalue series");
    auto* euler = app.add_subcommand("euler", "Euler t-transformed partial sums");
    for (auto* sub : {taylor, euler}) {
        series_graph.attach(sub);
        series_domain.attach(sub);
        sub->add_option("--node,-q", series_node, "expansion node (1-based)")->required();
        sub->add_option("--order,-K", series_order, "number of terms K")->check(CLI::Range(2, 100000));
        sub->add_option("--zeta", series_zeta, "perturbation parameter (rational; -1 is the Laplacian)");
        sub->add_option("--digits", series_digits, "decimal digits in the output");
        sub->add_flag("--csv", series_csv, "all partial sums with accuracy against the eigen-oracle");
        sub->add_option("--check", series_check, "K used to match the eigenvalue and classify");
        sub->add_option("--alpha-threshold", series_threshold, "converged iff alpha(K_check) <= threshold");
    }
    euler->add_option("--t", series_t, "tuning parameter t (rational)");

    // oracle
    GraphArgs oracle_graph;
    std::string oracle_matrix = "laplacian";
    std::string oracle_zeta = "-1";
    unsigned oracle_precision = 128;
    int oracle_digits = 30;
    bool oracle_bounds = false;
    auto* oracle = app.add_subcommand("oracle", "dense Jacobi eigenvalues");
    oracle_graph.attach(oracle);
    oracle->add_option("--matrix", oracle_matrix, "laplacian | adjacency | signless | perturbed")
        ->check(CLI::IsMember({"laplacian", "adjacency", "signless", "perturbed"}));
    oracle->add_option("--zeta", oracle_zeta, "zeta for --matrix perturbed (degree diagonal + zeta A)");
    oracle->add_option("--precision", oracle_precision, "bits")->check(CLI::Range(24u, 100000u));
    oracle->add_option("--digits", oracle_digits, "significant digits");
    oracle->add_flag("--bounds", oracle_bounds, "evaluate the classical Laplacian bounds");

    // contour
    GraphArgs contour_graph;
    std::string contour_zeta = "-1";
    double contour_radius = 0.0;
    std::size_t contour_points = 64;
    unsigned contour_precision = 128;
    bool contour_series = false;
    auto* contour = app.add_subcommand("contour", "contour-integral eigenvalue of an almost-regular graph");
    contour_graph.attach(contour);
    contour->add_option("--zeta", contour_zeta, "perturbation parameter");
    contour->add_option("--radius", contour_radius, "circle radius (default 1/(2 lambda_1))");
    contour->add_option("--points", contour_points, "initial quadrature points");
    contour->add_option("--precision", contour_precision, "bits")->check(CLI::Range(24u, 100000u));
    contour->add_flag("--series", contour_series, "also print the K=80 series value for comparison");

    // reproduce
    std::string repro_example;
    std::string repro_out = "reproduce_out";
    bool repro_quiet = false;
    auto* repro = app.add_subcommand("reproduce", "regenerate a worked example and check it against published digits");
    repro->add_option("example", repro_example, "e1 | e2 | e3 | almost_regular")
        ->required()
        ->check(CLI::IsMember({"e1", "e2", "e3", "almost_regular"}));
    repro->add_option("--out", repro_out, "output directory for CSV files");
    repro->add_flag("--quiet", repro_quiet, "print failures and the summary only");

    // sweep
    std::string sweep_config;
    GraphArgs sweep_graph;
    DomainArgs sweep_domain;
    std::string sweep_q = "max_unique_degree";
    std::string sweep_tgrid;
    std::string sweep_zeta;
    std::optional<std::size_t> sweep_kmax, sweep_kcheck, sweep_trials;
    std::optional<std::uint64_t> sweep_seed;
    std::optional<unsigned> sweep_threads;
    std::optional<double> sweep_threshold;
    std::vector<std::size_t> sweep_sizes;
    std::vector<double> sweep_densities;
    std::string sweep_out;
    bool sweep_dump = false;
    auto* sweep = app.add_subcommand("sweep", "convergence sweep over t values or random-graph ensembles");
    sweep->add_option("--config", sweep_config, "JSON experiment config")->check(CLI::ExistingFile);
    sweep_graph.attach(sweep);
    sweep_domain.attach(sweep);
    sweep->add_option("--q", sweep_q, "node (1-based) | max_unique_degree | all_unique");
    sweep->add_option("--t-grid", sweep_tgrid, "comma separated t values");
    sweep->add_option("--zeta", sweep_zeta, "perturbation parameter");
    sweep->add_option("--K-max", sweep_kmax, "terms computed");
    sweep->add_option("--K-check", sweep_kcheck, "K at which convergence is judged");
    sweep->add_option("--trials", sweep_trials, "trials per (N, p) cell");
    sweep->add_option("--sizes", sweep_sizes, "ensemble node counts")->delimiter(',');
    sweep->add_option("--densities", sweep_densities, "ensemble link densities")->delimiter(',');
    sweep->add_option("--seed", sweep_seed, "base seed");
    sweep->add_option("--threads", sweep_threads, "worker threads (0: all cores)");
    sweep->add_option("--alpha-threshold", sweep_threshold, "accuracy threshold");
    sweep->add_option("--out", sweep_out, "CSV output file (default stdout)");
    sweep->add_flag("--dump-config", sweep_dump, "print the resolved config as JSON and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (coeffs->parsed()) {
            const Graph g = coeffs_graph.load();
            const std::size_t q = node_index(coeffs_node, g);
            with_domain(coeffs_domain.resolve(g), [&](auto tag) {
                using T = decltype(tag);
                const auto table = coefficients<T>(g, q, coeffs_order);
                if (coeffs_json) {
                    std::cout << coefficient_table_to_json(table, coeffs_digits).dump(2) << '\n';
                } else {
                    for (std::size_t j = 2; j <= table.K; ++j)
                        std::cout << (j > 2 ? "," : "") << 'c' << j << '=' << to_output_string(table.c[j], coeffs_digits);
                    std::cout << '\n';
                }
                if (coeffs_bits)
                    for (const auto& b : table.bits)
                        std::cout << "order " << b.order << ": numerator " << b.numerator << " bits, denominator "
                                  << b.denominator << " bits\n";
                if (coeffs_bounds) {
                    const auto report = coefficient_bounds_ok(g, q, table);
                    std::cout << "bound c2: " << (report.c2_ok ? "ok" : "VIOLATED") << '\n'
                              << "bound c3: " << (report.c3_ok ? "ok" : "VIOLATED") << '\n'
                              << "bound c4: " << (report.c4_ok ? "ok" : "VIOLATED") << '\n';
                    for (const auto& h : report.hypothesis)
                        std::cout << "hypothesis j=" << h.j << ": " << (h.holds ? "holds" : "fails") << '\n';
                    if (!report.ok()) return;
                }
            });
            return 0;
        }

        if (taylor->parsed() || euler->parsed()) {
            const Graph g = series_graph.load();
            const std::size_t q = node_index(series_node, g);
            const Rational zeta = parse_rational(series_zeta);
            const Rational t = parse_rational(series_t);
            with_domain(series_domain.resolve(g), [&](auto tag) {
                using T = decltype(tag);
                const auto table = coefficients<T>(g, q, series_order);
                const auto series = euler->parsed() ? euler_series<T>(table, {T(t), T(zeta), series_order})
                                                    : taylor_partial_sums<T>(table, T(zeta), series_order);
                if (series_csv) {
                    const auto report = convergence_classify(series, oracle_eigenvalues(g, zeta), series_threshold,
                                                             std::min(series_check, series_order));
                    write_convergence_csv_header(std::cout);
                    write_convergence_csv(std::cout, series, report, series_digits);
                } else {
                    std::cout << "xi_{" << q + 1 << ';' << series_order << "}=" << to_decimal_string(to_real(series.at(series_order)), series_digits);
                    if constexpr (std::same_as<T, Rational>)
                        std::cout << " (" << to_fraction_string(series.at(series_order)).size() << " chars exact)";
                    std::cout << '\n';
                }
            });
            return 0;
        }

        if (oracle->parsed()) {
            const Graph g = oracle_graph.load();
            PrecisionScope scope(oracle_precision);
            Matrix<Real> m;
            if (oracle_matrix == "laplacian")
                m = laplacian<Real>(g);
            else if (oracle_matrix == "adjacency")
                m = g.adjacency<Real>();
            else if (oracle_matrix == "signless")
                m = perturbed_matrix<Real>(g, Real(1));
            else
                m = perturbed_matrix<Real>(g, Real(parse_rational(oracle_zeta)));
            const auto spec = symmetric_eigen<Real>(m);
            std::cout << spectrum_to_json(spec, oracle_digits).dump(2) << '\n';
            if (oracle_bounds) {
                if (oracle_matrix != "laplacian") throw std::invalid_argument("--bounds needs --matrix laplacian");
                const auto b = spectral_bounds(g, spec);
                std::cout << "lower bound d_(k)-k+2: "
                          << (b.lower_applicable ? "checked" : "skipped (weighted)") << '\n';
                for (const auto& lb : b.lower)
                    std::cout << "  k=" << lb.k << ": " << (lb.exempt ? "exempt" : lb.holds ? "holds" : "VIOLATED") << '\n';
                std::cout << "upper bound mu_1 <= " << to_fraction_string(b.upper) << ": "
                          << (b.upper_holds ? "holds" : "VIOLATED") << '\n';
                for (const auto& gb : b.gerschgorin)
                    std::cout << "interval [0," << to_fraction_string(gb.upper) << "] for node " << gb.q + 1 << ": "
                              << (gb.holds ? "holds" : "VIOLATED") << '\n';
                return b.all_hold() ? 0 : 1;
            }
            return 0;
        }

        if (contour->parsed()) {
            const Graph g = contour_graph.load();
            PrecisionScope scope(contour_precision);
            const AlmostRegularGraph arg = make_almost_regular(g);
            ContourOptions opts;
            if (contour_radius > 0) opts.radius = Real(contour_radius);
            opts.quad_points = contour_points;
            const Rational zeta = parse_rational(contour_zeta);
            const ContourResult r = contour_eigenvalue(arg, Real(zeta), opts);
            nlohmann::json j = contour_to_json(r);
            if (contour_series)
                j["series_K80"] = to_scientific_string(almost_regular_series<Real>(arg, Real(zeta), 80).at(80), 30);
            std::cout << j.dump(2) << '\n';
            return 0;
        }

        if (repro->parsed()) {
            const ReproduceReport report = reproduce(repro_example, repro_out);
            std::size_t failed = 0;
            for (const auto& e : report.entries) {
                if (!e.pass) ++failed;
                if (repro_quiet && e.pass) continue;
                std::cout << (e.pass ? "[pass] " : "[FAIL] ") << e.name << ": expected " << e.expected << ", got "
                          << e.obtained << '\n';
            }
            std::cout << report.example << ": " << report.entries.size() - failed << '/' << report.entries.size()
                      << " checks passed\n";
            for (const auto& f : report.files) std::cout << "wrote " << f.string() << '\n';
            return failed == 0 ? 0 : 1;
        }

        if (sweep->parsed()) {
            ExperimentConfig cfg;
            if (!sweep_config.empty()) {
                std::ifstream in(sweep_config);
                cfg = config_from_json(nlohmann::json::parse(in));
            }
            if (!sweep_graph.example.empty() || !sweep_graph.edges.empty() || !sweep_graph.generate.empty())
                cfg.graph_source = sweep_graph.source();
            if (sweep->count("--q")) {
                if (sweep_q == "max_unique_degree")
                    cfg.q_selector.kind = QSelector::Kind::max_unique_degree;
                else if (sweep_q == "all_unique")
                    cfg.q_selector.kind = QSelector::Kind::all_unique;
                else
                    cfg.q_selector = {QSelector::Kind::node, static_cast<std::size_t>(std::stoull(sweep_q) - 1)};
            }
            if (!sweep_tgrid.empty()) {
                cfg.t_grid.clear();
                std::istringstream in(sweep_tgrid);
                for (std::string tok; std::getline(in, tok, ',');) cfg.t_grid.push_back(parse_rational(tok));
            }
            if (!sweep_zeta.empty()) {
                const bool default_grid = cfg.t_grid == default_t_grid(cfg.zeta);
                cfg.zeta = parse_rational(sweep_zeta);
                if (default_grid && sweep_tgrid.empty()) cfg.t_grid = default_t_grid(cfg.zeta);
            }
            if (sweep_kmax) cfg.K_max = *sweep_kmax;
            if (sweep_kcheck) cfg.K_check = *sweep_kcheck;
            if (sweep_trials) cfg.trials = *sweep_trials;
            if (sweep_seed) cfg.seed = *sweep_seed;
            if (sweep_threads) cfg.threads = *sweep_threads;
            if (sweep_threshold) cfg.alpha_threshold = *sweep_threshold;
            if (!sweep_sizes.empty()) cfg.sizes = sweep_sizes;
            if (!sweep_densities.empty()) cfg.densities = sweep_densities;
            if (sweep_domain.exact) cfg.domain = NumberDomain::exact();
            if (sweep_domain.precision) cfg.domain = NumberDomain::floating(sweep_domain.precision);
            cfg.validate();
            if (sweep_dump) {
                std::cout << config_to_json(cfg).dump(2) << '\n';
                return 0;
            }
            const SweepOutput result = run_sweep(cfg);
            if (sweep_out.empty()) {
                write_sweep_csv(std::cout, result);
            } else {
                std::ofstream out(sweep_out);
                write_sweep_csv(out, result);
            }
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "lap-perturb: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
