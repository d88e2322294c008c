#include "lapperturb/errors.hpp"
#include "lapperturb/euler.hpp"
#include "lapperturb/experiment.hpp"
#include "lapperturb/graph_io.hpp"
#include "lapperturb/oracle.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace lapperturb;
namespace mp = boost::multiprecision;
using testsupport::binomial;

namespace {

// The zeta = -1 form written out directly: weights (1/(t-1))^m.
Rational euler_at_minus_one(const CoefficientTable<Rational>& table, const Rational& t, std::size_t K) {
    Rational sum = table.c[0];
    const Rational w = 1 / (t - 1);
    for (std::size_t m = 2; m <= K; ++m) {
        Rational inner = 0;
        for (std::size_t k = 2; k <= m; ++k)
            inner += binomial(static_cast<long>(m - 1), static_cast<long>(k - 1)) * ipow(t, m - k) * table.c[k];
        sum += inner * ipow(w, m);
    }
    return sum;
}

}  // namespace

TEST_CASE("generic transform of the geometric series") {
    std::vector<Rational> ones(60, Rational(1));
    for (const Rational& t : {Rational(0), Rational(-1, 2), Rational(1, 3), Rational(1)}) {
        const auto sums = euler_transform_generic<Rational>(Rational(1), ones, t, Rational(1, 2), 60);
        CHECK(mp::abs(sums.back() - 2) < Rational(1, 1000000));
    }
    // Beyond the unit radius: 1/(1 - z) at z = -3/2 is 2/5, reached with t = -1.
    const auto beyond = euler_transform_generic<Rational>(Rational(1), ones, Rational(-1), Rational(-3, 2), 60);
    CHECK(mp::abs(beyond.back() - Rational(2, 5)) < Rational(1, 1000000000));
    const auto taylor = euler_transform_generic<Rational>(Rational(1), ones, Rational(0), Rational(-3, 2), 20);
    CHECK(mp::abs(taylor.back()) > 100);
}

TEST_CASE("generic transform at t = 0 is the plain partial sum") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::vector<Rational> f;
    for (int i = 0; i < 15; ++i) f.emplace_back(coef(rng), 1 + (i % 4));
    const Rational z(-2, 3);
    const auto sums = euler_transform_generic<Rational>(Rational(5), f, Rational(0), z, 15);
    Rational plain = 5;
    CHECK(sums[0] == plain);
    for (std::size_t m = 1; m <= 15; ++m) {
        plain += f[m - 1] * ipow(z, m);
        CHECK(sums[m] == plain);
    }
}

TEST_CASE("binomial weights sum to (1+t)^(m-1) for unit coefficients") {
    for (const Rational& t : {Rational(-3), Rational(-1, 2), Rational(2, 5), Rational(4)}) {
        std::vector<Rational> ones(12, Rational(1));
        // With z chosen so z/(1+tz) = 1, term m of the partial sums is exactly the inner weight.
        const Rational z = 1 / (1 - t);
        const auto sums = euler_transform_generic<Rational>(Rational(0), ones, t, z, 12);
        for (std::size_t m = 1; m <= 12; ++m) CHECK(sums[m] - sums[m - 1] == ipow(Rational(1 + t), m - 1));
    }
}

TEST_CASE("singular transforms are rejected") {
    const auto table = coefficients<Rational>(example_graph(1), 0, 6);
    CHECK_THROWS_AS(euler_series<Rational>(table, {Rational(1), Rational(-1), 6}), SingularTransform);
    CHECK_THROWS_AS(euler_series<Rational>(table, {Rational(-1, 2), Rational(2), 6}), SingularTransform);
    std::vector<Rational> ones(3, Rational(1));
    CHECK_THROWS_AS(euler_transform_generic<Rational>(Rational(0), ones, Rational(2), Rational(-1, 2), 3),
                    SingularTransform);
}

TEST_CASE("Euler series equals the written-out zeta = -1 form") {
    std::mt19937_64 rng(4);
    const Graph e2 = example_graph(2);
    for (std::size_t q : {2u, 3u, 6u, 12u}) {
        const auto table = coefficients<Rational>(e2, q, 20);
        for (const Rational& t : {Rational(-3), Rational(-1), Rational(-1, 2), Rational(2)}) {
            const auto s = euler_series<Rational>(table, {t, Rational(-1), 20});
            for (std::size_t K : {2u, 5u, 13u, 20u}) CHECK(s.at(K) == euler_at_minus_one(table, t, K));
        }
    }
}

TEST_CASE("K = 4 closed form equals the series") {
    const Graph e1 = example_graph(1);
    CHECK(euler_k4_estimate<Rational>(e1, 0) == Rational(135, 32));
    CHECK(euler_k4_estimate<Rational>(e1, 4) == Rational(17, 8));
    const auto t5 = coefficients<Rational>(e1, 4, 5);
    CHECK(euler_series<Rational>(t5, {Rational(-1), Rational(-1), 5}).at(5) == Rational(19, 8));

    std::mt19937_64 rng(55);
    int tested = 0;
    while (tested < 60) {
        const Graph g = testsupport::random_graph(rng, 4 + tested % 8, 0.45);
        for (std::size_t q : degree_profile(g).unique_nodes) {
            const auto table = coefficients<Rational>(g, q, 4);
            CHECK(euler_k4_estimate<Rational>(g, q) ==
                  euler_series<Rational>(table, {Rational(-1), Rational(-1), 4}).at(4));
            ++tested;
        }
    }
    // Isolated vertex next to a matching: d_q = 0 and no neighbour sums.
    const Graph lone = build_graph(3, {{1, 2, 1}});
    CHECK(euler_k4_estimate<Rational>(lone, 0) == 0);
}

TEST_CASE("Example 2, node 13 partial sums") {
    const auto table = coefficients<Rational>(example_graph(2), 12, 30);
    const auto s = euler_series<Rational>(table, {Rational(-1), Rational(-1), 30});
    CHECK(mp::abs(s.at(2) - parse_rational("10.48154762")) < Rational(1, 200000000));
    CHECK(mp::abs(s.at(30) - parse_rational("11.61991367")) < Rational(1, 200000000));
    CHECK(s.kind == SeriesEvaluation<Rational>::Kind::euler);
    CHECK(*s.t == -1);
}

TEST_CASE("convergence classification") {
    PrecisionScope scope(128);
    const Graph e2 = example_graph(2);
    const auto spec = laplacian_spectrum<Real>(e2);

    const auto t13 = coefficients<Rational>(e2, 12, 30);
    const auto s13 = euler_series<Rational>(t13, {Rational(-1), Rational(-1), 30});
    const ConvergenceReport r13 = convergence_classify(s13, spec.eigenvalues);
    CHECK(r13.matched_index == 1);
    CHECK(r13.alpha[20] == doctest::Approx(std::log10(0.000208992)).epsilon(1e-4));
    CHECK(r13.converged);
    CHECK(r13.alpha[10] > r13.alpha[20]);
    CHECK(r13.alpha[20] > r13.alpha[30]);

    const auto t7 = coefficients<Rational>(e2, 6, 30);
    const ConvergenceReport r7 =
        convergence_classify(euler_series<Rational>(t7, {Rational(-1), Rational(-1), 30}), spec.eigenvalues);
    CHECK(r7.matched_index == 0);
    CHECK(r7.alpha[10] > r7.alpha[20]);
    CHECK(r7.alpha[20] > r7.alpha[30]);

    const auto t4 = coefficients<Rational>(e2, 3, 30);
    for (const Rational& t : default_t_grid()) {
        const auto r = convergence_classify(euler_series<Rational>(t4, {t, Rational(-1), 30}), spec.eigenvalues);
        CHECK_FALSE(r.converged);
    }

    CHECK_THROWS(convergence_classify(s13, std::vector<Real>{}));
    CHECK_THROWS(convergence_classify(s13, spec.eigenvalues, -4.0, 31));
}

TEST_CASE("nearest-eigenvalue ties go to the larger eigenvalue") {
    PrecisionScope scope(128);
    SeriesEvaluation<Rational> s;
    s.partial_sums = {Rational(2), Rational(2), Rational(2)};
    const auto r = convergence_classify(s, std::vector<Real>{Real(3), Real(1)}, -4.0, 2);
    CHECK(r.matched_index == 0);
    CHECK(r.alpha[2] == doctest::Approx(0.0));
}

TEST_CASE("convergence CSV") {
    PrecisionScope scope(128);
    const Graph e1 = example_graph(1);
    const auto table = coefficients<Rational>(e1, 0, 4);
    const auto s = euler_series<Rational>(table, {Rational(-1), Rational(-1), 4});
    const auto r = convergence_classify(s, laplacian_spectrum<Real>(e1).eigenvalues, -4.0, 4);
    std::ostringstream out;
    write_convergence_csv_header(out);
    write_convergence_csv(out, s, r, 10);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "q,t,K,xi,alpha,matched_mu,converged");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.rfind("1,-1,", 0) == 0);
        ++rows;
    }
    CHECK(rows == 3);
}
