#include "lapperturb/almost_regular.hpp"
#include "lapperturb/errors.hpp"
#include "lapperturb/euler.hpp"
#include "lapperturb/experiment.hpp"
#include "lapperturb/graph_io.hpp"
#include "lapperturb/oracle.hpp"
#include "lapperturb/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lapperturb {

namespace mp = boost::multiprecision;

namespace {

// A printed decimal together with half a unit in its last printed place.
struct Printed {
    std::string text;
    Rational value;
    Rational half_unit;
    int decimals = 0;  // digits after the point in the mantissa
    bool scientific = false;
};

Printed parse_printed(const std::string& text) {
    Printed p;
    p.text = text;
    p.value = parse_rational(text);
    std::string mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mantissa = text.substr(0, e);
        exponent = std::stol(text.substr(e + 1));
        p.scientific = true;
    }
    if (auto dot = mantissa.find('.'); dot != std::string::npos)
        p.decimals = static_cast<int>(mantissa.size() - dot - 1);
    const long place = exponent - p.decimals;
    Rational unit = 1;
    for (long i = 0; i < (place < 0 ? -place : place); ++i) unit *= 10;
    if (place < 0) unit = 1 / unit;
    p.half_unit = unit / 2;
    return p;
}

std::string render_like(const Real& value, const Printed& p) {
    if (p.scientific) return to_scientific_string(value, p.decimals + 1);
    return to_decimal_string(value, p.decimals);
}

DigestEntry check_printed(const std::string& name, const Rational& value, const std::string& text) {
    const Printed p = parse_printed(text);
    const bool pass = mp::abs(value - p.value) <= p.half_unit;
    return {name, text, render_like(Real(value), p), pass};
}

DigestEntry check_printed(const std::string& name, const Real& value, const std::string& text) {
    const Printed p = parse_printed(text);
    const Real slack = mp::pow(Real(10), -static_cast<int>(Real::default_precision()) + 3);
    const bool pass = mp::abs(value - Real(p.value)) <= Real(p.half_unit) + slack * (1 + mp::abs(value));
    return {name, text, render_like(value, p), pass};
}

// Printed differences are truncated rather than rounded, so the tolerance is a full unit
// in the last place plus `extra`.
DigestEntry check_difference(const std::string& name, const Real& value, const std::string& text, double extra) {
    const Printed p = parse_printed(text);
    const bool pass = mp::abs(value - Real(p.value)) <= Real(2 * p.half_unit) + Real(extra);
    return {name, text, render_like(value, p), pass};
}

DigestEntry check_exact(const std::string& name, const Rational& value, const Rational& expected) {
    return {name, to_fraction_string(expected), to_fraction_string(value), value == expected};
}

DigestEntry check_flag(const std::string& name, bool ok, const std::string& expected, const std::string& obtained) {
    return {name, expected, obtained, ok};
}

std::string label(std::size_t node) { return std::to_string(node + 1); }

std::string alpha_text(double a) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << a;
    return os.str();
}

struct SeriesRow {
    std::string prefix;  // optional leading columns
    std::size_t q;
    std::size_t K;
    Rational t;
    std::string xi;
    double alpha;
};

// Euler series per t for one node, classified against `spectrum`.
struct NodeRun {
    std::vector<SeriesEvaluation<Rational>> series;
    std::vector<ConvergenceReport> reports;
};

NodeRun run_node(const Graph& g, std::size_t q, const std::vector<Rational>& grid, std::size_t K,
                 std::size_t K_check, const std::vector<Real>& spectrum) {
    const auto table = coefficients<Rational>(g, q, K);
    NodeRun run;
    for (const Rational& t : grid) {
        run.series.push_back(euler_series<Rational>(table, {t, Rational(-1), K}));
        run.reports.push_back(convergence_classify(run.series.back(), spectrum, -4.0, K_check));
    }
    return run;
}

void append_rows(std::vector<SeriesRow>& rows, const NodeRun& run, const std::vector<Rational>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t K = 2; K < run.series[i].partial_sums.size(); ++K)
            rows.push_back({"", run.series[i].q, K, grid[i], to_scientific_string(Real(run.series[i].at(K)), 30),
                            run.reports[i].alpha[K]});
}

void write_outputs(ReproduceReport& report, const std::filesystem::path& out_dir, const std::string& header,
                   const std::vector<SeriesRow>& rows) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    const auto series_path = out_dir / (report.example + "_series.csv");
    std::ofstream s(series_path);
    s << header << '\n';
    for (const SeriesRow& r : rows)
        s << r.prefix << r.q + 1 << ',' << r.K << ',' << to_compact_string(r.t) << ',' << r.xi << ',' << alpha_text(r.alpha)
          << '\n';
    const auto digest_path = out_dir / (report.example + "_digest.csv");
    std::ofstream d(digest_path);
    d << "name,expected,obtained,pass\n";
    for (const DigestEntry& e : report.entries)
        d << '"' << e.name << "\"," << e.expected << ',' << e.obtained << ',' << (e.pass ? "pass" : "FAIL") << '\n';
    report.files = {series_path, digest_path};
}

std::string degree_text(const Graph& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + mp::numerator(g.degree(i)).str();
    return s;
}

// Example 1: the 5-node tree.
void reproduce_e1(ReproduceReport& report, std::vector<SeriesRow>& rows) {
    const Graph g = example_graph(1);
    const DegreeProfile profile = degree_profile(g);
    report.entries.push_back(check_flag("degree vector", degree_text(g) == "3,1,1,1,2", "3,1,1,1,2", degree_text(g)));
    report.entries.push_back(check_flag("unique-degree nodes", profile.unique_nodes == std::set<std::size_t>{0, 4},
                                        "1,5", std::to_string(profile.unique_nodes.size()) + " nodes"));

    const auto spec = laplacian_spectrum<Real>(g);
    const std::vector<std::string> mu = {"4.17009", "2.31111", "1.", "0.518806", "0"};
    for (std::size_t i = 0; i < mu.size(); ++i)
        report.entries.push_back(check_printed("mu_" + std::to_string(i + 1), spec.eigenvalues[i], mu[i]));

    const auto t1 = coefficients<Rational>(g, 0, 12);
    const auto t5 = coefficients<Rational>(g, 4, 12);
    const auto e1 = euler_series<Rational>(t1, {Rational(-1), Rational(-1), 12});
    const auto e5 = euler_series<Rational>(t5, {Rational(-1), Rational(-1), 12});
    report.entries.push_back(check_exact("xi_{1;4}(t=-1)", e1.at(4), Rational(135, 32)));
    report.entries.push_back(check_exact("xi_{5;4}(t=-1)", e5.at(4), Rational(17, 8)));
    report.entries.push_back(check_exact("xi_{5;5}(t=-1)", e5.at(5), Rational(19, 8)));
    report.entries.push_back(check_exact("K=4 closed form, node 1", euler_k4_estimate<Rational>(g, 0), Rational(135, 32)));
    report.entries.push_back(check_exact("K=4 closed form, node 5", euler_k4_estimate<Rational>(g, 4), Rational(17, 8)));
    bool odd_zero = true;
    for (const auto* t : {&t1, &t5})
        for (std::size_t j = 3; j <= 12; j += 2) odd_zero = odd_zero && t->c[j] == 0;
    report.entries.push_back(check_flag("odd c_j vanish up to K=12", odd_zero, "0", odd_zero ? "0" : "nonzero"));

    // K = 30 is too short for this tree: the t < -1 accuracy only passes 1e-4 near K = 100.
    const auto grid = default_t_grid();
    for (std::size_t q : {std::size_t{0}, std::size_t{4}}) {
        const NodeRun run = run_node(g, q, grid, 100, 100, spec.eigenvalues);
        append_rows(rows, run, grid);
        bool minus_one = false, more_negative = false, positive = false;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const bool c = run.reports[i].converged;
            if (grid[i] == -1) minus_one = c;
            else if (grid[i] < -1) more_negative = more_negative || c;
            else if (grid[i] > 0) positive = positive || c;
        }
        report.entries.push_back(check_flag("node " + label(q) + ": t=-1 not converged at K=100", !minus_one,
                                            "diverged", minus_one ? "converged" : "diverged"));
        report.entries.push_back(check_flag("node " + label(q) + ": some t<-1 converged at K=100", more_negative,
                                            "converged", more_negative ? "converged" : "diverged"));
        report.entries.push_back(check_flag("node " + label(q) + ": positive t diverge", !positive, "diverged",
                                            positive ? "converged" : "diverged"));
    }
}

// Example 2: the 20-node G_p(N) instance.
void reproduce_e2(ReproduceReport& report, std::vector<SeriesRow>& rows) {
    const Graph g = example_graph(2);
    const DegreeProfile profile = degree_profile(g);
    const std::string degrees = "4,4,8,3,7,4,12,4,7,6,7,6,10,6,6,6,6,5,4,5";
    report.entries.push_back(check_flag("degree vector", degree_text(g) == degrees, degrees, degree_text(g)));
    report.entries.push_back(check_exact("kappa(13)", profile.kappa.at(12), Rational(1, 2)));

    const auto lap = laplacian_spectrum<Real>(g);
    const auto adj = symmetric_eigen<Real>(g.adjacency<Real>());
    report.entries.push_back(check_printed("lambda_1(A)", adj.eigenvalues.front(), "6.67615"));
    const std::vector<std::string> mu = {"13.3514", "11.6199", "9.80641", "9.32872", "7.6586",  "7.46193", "7.11613",
                                         "6.92149", "6.3782",  "6.07484", "5.80058", "5.29648", "4.59557", "4.05486",
                                         "3.58036", "3.50647", "2.83079", "2.39082", "2.22645", "0"};
    for (std::size_t i = 0; i < mu.size(); ++i)
        report.entries.push_back(check_printed("mu_" + std::to_string(i + 1), lap.eigenvalues[i], mu[i]));
    const Real mu1 = lap.eigenvalues[0];
    const Real mu2 = lap.eigenvalues[1];
    report.entries.push_back(check_printed("mu_2 (15 digits)", mu2, "11.6199127895910"));
    report.entries.push_back(check_printed("mu_1 (30 digits)", mu1, "13.3513926733482839961128497270"));

    const auto grid = default_t_grid();
    const auto index_of = [&](int t) {
        return static_cast<std::size_t>(std::find(grid.begin(), grid.end(), Rational(t)) - grid.begin());
    };
    std::map<std::size_t, NodeRun> runs;
    for (std::size_t q : profile.unique_nodes) {
        runs[q] = run_node(g, q, grid, 100, 30, lap.eigenvalues);
        append_rows(rows, runs[q], grid);
    }
    const auto& xi13 = runs.at(12).series[index_of(-1)];
    const auto& xi7 = runs.at(6).series[index_of(-1)];
    const auto& xi3 = runs.at(2).series[index_of(-1)];

    const std::vector<std::string> q13 = {"10.48154762", "11.00138889", "11.33195709", "11.49508126", "11.57496760",
                                          "11.61206362", "11.62002740", "11.61508019", "11.61181587", "11.61364728",
                                          "11.61699285", "11.61921713", "11.62029217", "11.62070805", "11.62057580",
                                          "11.62009681", "11.61968541", "11.61958213", "11.61970380"};
    for (std::size_t K = 2; K <= 20; ++K)
        report.entries.push_back(check_printed("xi_{13;" + std::to_string(K) + "}", xi13.at(K), q13[K - 2]));
    report.entries.push_back(check_printed("xi_{13;30}", xi13.at(30), "11.61991367"));

    const std::vector<std::pair<std::string, std::string>> q13_long = {
        {"11.6118158710925", "0.00809692"},        {"11.6197037971111", "0.000208992"},
        {"11.6199136700045", "-8.8041349e-7"},     {"11.6199135474613", "-7.5787030e-7"},
        {"11.6199128258523", "-3.6261285e-8"},     {"11.6199127874211", "2.1699282e-9"},
        {"11.6199127892558", "3.3520741e-10"},     {"11.6199127895867", "4.3485215e-12"},
        {"11.6199127895931", "-2.0765611e-12"},    {"11.6199127895912", "-1.5099033e-13"}};
    // The printed differences were formed in binary64; compare against that arithmetic with a
    // 2-ulp allowance on mu_2 (2^-48 at this magnitude).
    const double mu2_double = mu2.convert_to<double>();
    for (std::size_t i = 0; i < q13_long.size(); ++i) {
        const std::size_t K = 10 * (i + 1);
        const std::string k = std::to_string(K);
        report.entries.push_back(check_printed("xi_{13;" + k + "} (13 decimals)", xi13.at(K), q13_long[i].first));
        const double diff = mu2_double - to_double(xi13.at(K));
        const double printed = std::stod(q13_long[i].second);
        std::ostringstream got;
        got.precision(8);
        got << diff;
        const double unit = static_cast<double>(2 * parse_printed(q13_long[i].second).half_unit);
        report.entries.push_back(check_flag("mu_2 - xi_{13;" + k + "} in binary64",
                                            std::abs(diff - printed) <= unit + 0x1.0p-48, q13_long[i].second, got.str()));
    }

    const std::vector<std::string> q7 = {"12.55684524", "12.92105159", "13.10777862", "13.22029144", "13.28981543",
                                         "13.32451888", "13.33893469", "13.34549561", "13.34889571", "13.35029701",
                                         "13.35071509", "13.35094032", "13.35114508", "13.35126516", "13.35131598",
                                         "13.35134956", "13.35137642", "13.35138894", "13.35139125"};
    for (std::size_t K = 2; K <= 20; ++K)
        report.entries.push_back(check_printed("xi_{7;" + std::to_string(K) + "}", xi7.at(K), q7[K - 2]));
    report.entries.push_back(check_printed("xi_{7;30}", xi7.at(30), "13.35139267"));
    const std::vector<std::pair<std::string, std::string>> q7_long = {
        {"13.3488957090710433527956303093", "0.00249696"},
        {"13.3513912536915562912298783841", "1.41966e-6"},
        {"13.3513926692587838827462033968", "4.08949e-9"},
        {"13.3513926733102103638002761686", "3.80691e-11"},
        {"13.3513926733476992672999617420", "5.79092e-13"},
        {"13.3513926733482839312804648760", "6.48323e-17"},
        {"13.3513926733482839615285740731", "3.45842e-17"},
        {"13.3513926733482839965575848138", "-4.4473e-19"},
        {"13.3513926733482839961083203713", "4.52935e-21"},
        {"13.3513926733482839961129243912", "-7.4664234e-23"}};
    for (std::size_t i = 0; i < q7_long.size(); ++i) {
        const std::size_t K = 10 * (i + 1);
        const std::string k = std::to_string(K);
        report.entries.push_back(check_printed("xi_{7;" + k + "} (28 decimals)", xi7.at(K), q7_long[i].first));
        // Rows 30..50 of the printed column carry binary64-sized errors (up to 1.1e-14) that the
        // 28-decimal xi values beside them do not; those rows get 8 ulp of mu_1 in binary64.
        const double extra = (K >= 30 && K <= 50) ? 8 * 0x1.0p-49 : 0.0;
        report.entries.push_back(check_difference("mu_1 - xi_{7;" + k + "}", Real(mu1 - Real(xi7.at(K))),
                                                  q7_long[i].second, extra));
    }

    const std::vector<std::string> q3 = {"8.937500000", "9.593750000", "9.541536458", "9.632552083", "10.14137146",
                                         "9.961090970", "9.152494535", "9.649234801", "10.87231670", "9.574716849",
                                         "7.834417220", "11.10756619", "13.44103998", "5.881312597", "3.636664041",
                                         "20.15673862", "19.02124175", "-15.77306388", "-0.7480476187"};
    for (std::size_t K = 2; K <= 20; ++K)
        report.entries.push_back(check_printed("xi_{3;" + std::to_string(K) + "}", xi3.at(K), q3[K - 2]));
    report.entries.push_back(check_printed("xi_{3;30}", xi3.at(30), "-1883.697136"));

    for (std::size_t q : {std::size_t{6}, std::size_t{12}}) {
        const auto& a = runs.at(q).reports[index_of(-1)].alpha;
        const bool mono = a[10] > a[20] && a[20] > a[30];
        report.entries.push_back(check_flag("node " + label(q) + ": alpha(10) > alpha(20) > alpha(30) at t=-1", mono,
                                            "decreasing", alpha_text(a[10]) + ">" + alpha_text(a[20]) + ">" + alpha_text(a[30])));
    }
    const auto& r4 = runs.at(3).reports;
    const bool any4 = std::any_of(r4.begin(), r4.end(), [](const ConvergenceReport& r) { return r.converged; });
    report.entries.push_back(check_flag("node 4 diverges for every t in the grid", !any4, "diverged",
                                        any4 ? "converged" : "diverged"));
}

// Example 3: antiregular graph on 10 nodes.
void reproduce_e3(ReproduceReport& report, std::vector<SeriesRow>& rows) {
    const Graph g = example_graph(3);
    report.entries.push_back(check_flag("embedded matrix equals antiregular(10)",
                                        g.weights().rows() == 10 && graph_to_json(g) == graph_to_json(antiregular_graph(10)),
                                        "equal", "compared"));
    const std::string degrees = "5,5,4,6,3,7,2,8,1,9";
    report.entries.push_back(check_flag("degree vector", degree_text(g) == degrees, degrees, degree_text(g)));
    const auto spec = laplacian_spectrum<Real>(g);
    const int expected[] = {10, 9, 8, 7, 6, 4, 3, 2, 1, 0};
    for (std::size_t i = 0; i < 10; ++i) {
        const bool ok = mp::abs(spec.eigenvalues[i] - expected[i]) < Real(1e-9);
        report.entries.push_back(check_flag("mu_" + std::to_string(i + 1), ok, std::to_string(expected[i]),
                                            to_decimal_string(spec.eigenvalues[i], 12)));
    }

    // A node counts as convergent when some t in the grid reaches alpha <= -3 at K = 60 and
    // alpha keeps falling between K = 30 and K = 60.
    const DegreeProfile profile = degree_profile(g);
    const auto grid = default_t_grid();
    std::string fast, slow;
    bool split_ok = true;
    for (std::size_t q : profile.unique_nodes) {
        const NodeRun run = run_node(g, q, grid, 60, 60, spec.eigenvalues);
        append_rows(rows, run, grid);
        bool converges = false;
        double best = 1e9;
        for (const auto& r : run.reports) {
            best = std::min(best, r.alpha[60]);
            converges = converges || (r.alpha[60] <= -3.0 && r.alpha[60] < r.alpha[30]);
        }
        const bool high = g.degree(q) >= 7;
        split_ok = split_ok && converges == high;
        report.entries.push_back(check_flag("node " + label(q) + " (degree " + mp::numerator(g.degree(q)).str() + ")",
                                            converges == high, high ? "converges" : "diverges",
                                            (converges ? "converges, best alpha(60)=" : "diverges, best alpha(60)=") +
                                                alpha_text(best)));
        (converges ? fast : slow) += mp::numerator(g.degree(q)).str() + " ";
    }
    report.entries.push_back(check_flag("convergence exactly for degrees >= 7", split_ok, "7 8 9", fast));
}

void reproduce_almost_regular(ReproduceReport& report, std::vector<SeriesRow>& rows) {
    const std::size_t K = 80;
    auto record = [&](const std::string& name, const Rational& zeta, const SeriesEvaluation<Rational>& s,
                      const ConvergenceReport& r) {
        for (std::size_t k = 2; k <= s.k_max(); ++k)
            rows.push_back({name + "," + to_compact_string(zeta) + ",", s.q, k, s.t ? *s.t : Rational(0),
                            to_scientific_string(Real(s.at(k)), 30), r.alpha[k]});
    };
    auto spectrum = [](const Graph& g, const Rational& zeta) {
        return symmetric_eigen<Real>(perturbed_matrix<Real>(g, Real(zeta))).eigenvalues;
    };

    const AlmostRegularGraph g1 = make_almost_regular(ring_with_core(21, 1));
    const AlmostRegularGraph g9 = make_almost_regular(ring_with_core(21, 9));

    const auto mu1 = spectrum(g1.graph, -1);
    const auto s1 = almost_regular_series<Rational>(g1, Rational(-1), K);
    const auto r1 = convergence_classify(s1, mu1, -8.0, K);
    record("ring_with_core(21;1)", -1, s1, r1);
    report.entries.push_back(check_flag("G(21,1), zeta=-1: series converges to mu_1",
                                        r1.converged && r1.matched_index == 0, "alpha(80) <= -8, mu_1",
                                        "alpha(80)=" + alpha_text(r1.alpha[K]) + ", index " + std::to_string(r1.matched_index + 1)));

    const auto mu2 = spectrum(g1.graph, -2);
    const auto s2 = almost_regular_series<Rational>(g1, Rational(-2), K);
    const auto r2 = convergence_classify(s2, mu2, -4.0, K);
    record("ring_with_core(21;1)", -2, s2, r2);
    report.entries.push_back(check_flag("G(21,1), zeta=-2: plain series does not settle", !r2.converged,
                                        "alpha(80) > -4", "alpha(80)=" + alpha_text(r2.alpha[K])));
    const auto e2 = almost_regular_euler<Rational>(g1, Rational(-2), Rational(-1, 2), K);
    const auto re2 = convergence_classify(e2, mu2, -8.0, K);
    record("ring_with_core(21;1)", -2, e2, re2);
    report.entries.push_back(check_flag("G(21,1), zeta=-2: Euler t=-1/2 converges to mu_1(-2)",
                                        re2.converged && re2.matched_index == 0, "alpha(80) <= -8, mu_1",
                                        "alpha(80)=" + alpha_text(re2.alpha[K]) + ", index " +
                                            std::to_string(re2.matched_index + 1)));

    const auto s9 = almost_regular_series<Rational>(g9, Rational(-1), K);
    const auto r9 = convergence_classify(s9, spectrum(g9.graph, -1), -4.0, K);
    record("ring_with_core(21;9)", -1, s9, r9);
    report.entries.push_back(check_flag("G(21,9), zeta=-1: series diverges", !r9.converged && r9.alpha[K] > 0,
                                        "alpha(80) > 0", "alpha(80)=" + alpha_text(r9.alpha[K])));
    const auto mu9 = spectrum(g9.graph, -2);
    bool any = false;
    std::string seen;
    for (const Rational& t : {Rational(-2), Rational(-1), Rational(-1, 2), Rational(-1, 4), Rational(1, 4), Rational(1)}) {
        const auto e = almost_regular_euler<Rational>(g9, Rational(-2), t, K);
        const auto r = convergence_classify(e, mu9, -4.0, K);
        record("ring_with_core(21;9)", -2, e, r);
        any = any || r.converged;
        seen += (seen.empty() ? "" : " ") + alpha_text(r.alpha[K]);
    }
    report.entries.push_back(check_flag("G(21,9), zeta=-2: Euler diverges for every t tried", !any, "alpha(80) > -4",
                                        seen));

    const ContourResult c = contour_eigenvalue(g1, Real(-1));
    const Real gap = mp::abs(c.value - Real(s1.at(K)));
    report.entries.push_back(check_flag("G(21,1), zeta=-1: contour integral matches the series", gap < Real(1e-8),
                                        "< 1e-8", to_scientific_string(gap, 3)));

    bool triple = true;
    for (std::size_t k : {1, 2, 3}) {
        const AlmostRegularGraph a = make_almost_regular(ring_with_core(9, k));
        const auto rec = cm_recursion(a, 10);
        const auto gen = coefficients<Rational>(a.graph, a.special, 10);
        const ChcTable chc = chc_build(closed_walk_counts(a.graph, a.special, 10), 10);
        for (std::size_t m = 2; m <= 10; ++m) triple = triple && rec[m] == gen.c[m] && cm_closed_form(a, chc, m) == rec[m];
    }
    report.entries.push_back(check_flag("G(9,k), k=1..3: three routes to c_2..c_10 agree", triple, "equal",
                                        triple ? "equal" : "differ"));
}

}  // namespace

ReproduceReport reproduce(const std::string& example, const std::filesystem::path& out_dir) {
    PrecisionScope precision(128);
    ReproduceReport report;
    report.example = example;
    std::vector<SeriesRow> rows;
    std::string header = "q,K,t,xi,alpha";
    if (example == "e1")
        reproduce_e1(report, rows);
    else if (example == "e2")
        reproduce_e2(report, rows);
    else if (example == "e3")
        reproduce_e3(report, rows);
    else if (example == "almost_regular") {
        reproduce_almost_regular(report, rows);
        header = "graph,zeta,q,K,t,xi,alpha";
    } else
        throw std::invalid_argument("unknown example '" + example + "' (expected e1, e2, e3, almost_regular)");
    write_outputs(report, out_dir, header, rows);
    return report;
}

}  // namespace lapperturb
