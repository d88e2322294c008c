#include "lapperturb/almost_regular.hpp"

#include "lapperturb/binomial.hpp"
#include "lapperturb/errors.hpp"
#include "lapperturb/euler.hpp"
#include "lapperturb/oracle.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lapperturb {

namespace mp = boost::multiprecision;

AlmostRegularGraph make_almost_regular(const Graph& g) {
    if (g.size() < 2) throw NotAlmostRegular("almost-regular graphs need at least two nodes");
    const auto& d = g.degrees();
    const Rational top = *std::max_element(d.begin(), d.end());
    std::size_t special = g.size();
    std::optional<Rational> r;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (d[i] == top && special == g.size()) {
            special = i;
            continue;
        }
        if (r && d[i] != *r) throw NotAlmostRegular("more than two distinct degrees");
        r = d[i];
    }
    if (*r == top) throw NotAlmostRegular("no node has a strictly larger degree than the rest");
    return {g, special, *r, top - *r};
}

ChcTable chc_build(const WalkCounts& walks, std::size_t M) {
    if (walks.counts.size() < M + 1) throw std::invalid_argument("walk counts do not reach the requested order");
    ChcTable chc;
    chc.walks = walks;
    chc.M = M;
    chc.table = Matrix<Rational>(M + 1, M + 1);
    chc.table(0, 0) = 1;
    for (std::size_t k = 1; k <= M; ++k)
        for (std::size_t m = k; m <= M; ++m) {
            Rational acc = 0;
            for (std::size_t j = 1; j + k <= m + 1; ++j) {
                const Rational& w = walks.counts[j];
                const Rational& prev = chc.table(k - 1, m - j);
                if (w != 0 && prev != 0) acc += w * prev;
            }
            chc.table(k, m) = acc;
        }
    return chc;
}

Rational cm_closed_form(const AlmostRegularGraph& arg, const ChcTable& chc, std::size_t m, bool full_range) {
    if (m < 2) throw std::invalid_argument("closed form starts at m = 2");
    if (m > chc.M) throw std::invalid_argument("characteristic coefficient table too short");
    const BinomialTable binom(2 * m);
    const std::size_t upper = full_range ? m : m / 2;
    Rational sum = 0;
    for (std::size_t k = 1; k <= upper; ++k) {
        const Rational& a = chc.value(k, m);
        if (a == 0) continue;
        Rational g = Rational(binom.at(m + k - 2, k - 1), Integer(k));
        if (k % 2 == 0) g = -g;
        sum += g * a;
    }
    return sum / ipow(arg.x, m - 1);
}

namespace {

// beta rows 0..rows-1 and c[0..K] of the constant-gap recursion.
void special_recursion(const AlmostRegularGraph& arg, std::size_t K, std::vector<std::vector<Rational>>& beta,
                       std::vector<Rational>& c) {
    const Graph& g = arg.graph;
    const std::size_t n = g.size();
    const std::size_t s = arg.special;
    c.assign(K + 1, Rational(0));
    c[0] = arg.d_max();
    beta.assign(K + 1, std::vector<Rational>(n, Rational(0)));
    beta[0][s] = 1;
    for (std::size_t l = 0; l < n; ++l)
        if (l != s) beta[1][l] = g.weight(l, s) / arg.x;
    auto contract = [&](std::size_t j) {
        Rational acc = 0;
        for (std::size_t l = 0; l < n; ++l)
            if (g.weight(s, l) != 0) acc += beta[j][l] * g.weight(s, l);
        return acc;
    };
    if (K >= 2) c[2] = contract(1);
    for (std::size_t j = 2; j <= K; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            Rational acc = 0;
            for (std::size_t m = 0; m < n; ++m)
                if (m != s && g.weight(l, m) != 0) acc += beta[j - 1][m] * g.weight(l, m);
            for (std::size_t k = 1; k + 2 <= j; ++k) acc -= beta[k][l] * c[j - k];
            beta[j][l] = acc / arg.x;
        }
        if (j + 1 <= K) c[j + 1] = contract(j);
    }
}

}  // namespace

std::vector<Rational> cm_recursion(const AlmostRegularGraph& arg, std::size_t K) {
    if (K < 2) throw std::invalid_argument("expansion order K must be at least 2");
    std::vector<std::vector<Rational>> beta;
    std::vector<Rational> c;
    special_recursion(arg, K, beta, c);
    return c;
}

std::vector<Rational> cm_pseudo_recursion(const AlmostRegularGraph& arg, std::size_t K) {
    if (K < 2) throw std::invalid_argument("expansion order K must be at least 2");
    std::vector<std::vector<Rational>> beta;
    std::vector<Rational> unused;
    special_recursion(arg, K, beta, unused);

    const Graph& g = arg.graph;
    const std::size_t n = g.size();
    const std::size_t s = arg.special;
    // (A^2)_{m s}
    std::vector<Rational> e(n, Rational(0));
    e[s] = 1;
    const std::vector<Rational> a2s = g.weights().multiply(g.weights().multiply(e));

    std::vector<Rational> c(K + 1, Rational(0));
    c[0] = arg.d_max();
    c[2] = a2s[s] / arg.x;
    for (std::size_t j = 3; j <= K; ++j) {
        Rational acc = 0;
        for (std::size_t m = 0; m < n; ++m)
            if (m != s && a2s[m] != 0) acc += beta[j - 2][m] * a2s[m];
        for (std::size_t k = 1; k + 3 <= j; ++k) acc -= c[j - 1 - k] * c[k + 1];
        c[j] = acc / arg.x;
    }
    return c;
}

Integer complete_graph_chc(std::size_t N, std::size_t k, std::size_t m) {
    if (N < 2 || k < 1 || m < 2) throw std::invalid_argument("complete_graph_chc needs N >= 2, k >= 1, m >= 2");
    if (2 * k > m) return Integer(0);
    const BinomialTable binom(m);
    const Integer d = Integer(N - 1);
    Integer sum = 0;
    Integer dpow = 1;  // (N-1)^r
    for (std::size_t r = 0; r + 2 * k <= m; ++r) {
        Integer term = binom(k + r - 1, r) * binom(m - k - r - 1, m - 2 * k - r) * dpow;
        if (r % 2 == 1) term = -term;
        sum += term;
        dpow *= d;
    }
    Integer out = mp::pow(d, static_cast<unsigned>(k)) * sum;
    return m % 2 == 1 ? Integer(-out) : out;
}

namespace {

void check_bound_args(std::size_t N, std::size_t k, std::size_t m) {
    if (N < 3) throw std::invalid_argument("chc bound needs N >= 3");
    if (k < 1 || 2 * k > m) throw std::invalid_argument("chc bound needs 1 <= k <= m/2");
}

Rational rpow(const Rational& base, std::size_t e) { return ipow(base, e); }

}  // namespace

Rational chc_bound(std::size_t N, std::size_t k, std::size_t m) {
    check_bound_args(N, k, m);
    const Rational d = Rational(N - 1);
    const std::size_t gap = m - 2 * k;
    const Rational denom = d - Rational(Integer(gap), Integer(m - k));
    // rpow(0, 0) == 1 covers m == 2k.
    return rpow(d, m) / rpow(denom, k) * rpow(Rational(m - k), m - k) /
           (rpow(Rational(gap), gap) * rpow(Rational(k), k));
}

Rational chc_bound_half(std::size_t N, std::size_t k, std::size_t m) {
    check_bound_args(N, k, m);
    return rpow(Rational(2), m - k) * rpow(Rational(N - 1), m) / rpow(Rational(N) - Rational(3, 2), k);
}

namespace {

// S_m = sum_k ((-1)^{k-1}/k) C(m+k-2, k-1) A[k,m], so c_m = S_m / x^{m-1}.
std::vector<Rational> chc_sums(const ChcTable& chc, std::size_t K) {
    const BinomialTable binom(2 * K);
    std::vector<Rational> S(K + 1, Rational(0));
    for (std::size_t m = 1; m <= K; ++m)
        for (std::size_t k = 1; 2 * k <= m; ++k) {
            const Rational& a = chc.value(k, m);
            if (a == 0) continue;
            Rational g = Rational(binom.at(m + k - 2, k - 1), Integer(k));
            S[m] += (k % 2 == 1 ? g : Rational(-g)) * a;
        }
    return S;
}

ChcTable special_chc(const AlmostRegularGraph& arg, std::size_t K) {
    return chc_build(closed_walk_counts(arg.graph, arg.special, K), K);
}

}  // namespace

template <Scalar T>
SeriesEvaluation<T> almost_regular_series(const AlmostRegularGraph& arg, const T& zeta, std::size_t K) {
    if (K < 2) throw std::invalid_argument("expansion order K must be at least 2");
    const std::vector<Rational> S = chc_sums(special_chc(arg, K), K);
    const T x = T(arg.x);
    const T ratio = zeta / x;
    SeriesEvaluation<T> s;
    s.q = arg.special;
    s.zeta = zeta;
    s.kind = SeriesEvaluation<T>::Kind::taylor;
    T sum = T(arg.d_max());
    T power = ratio;
    s.partial_sums.push_back(sum);
    for (std::size_t m = 1; m <= K; ++m) {
        if (m > 1) power *= ratio;
        if (S[m] != 0) sum += x * T(S[m]) * power;
        s.partial_sums.push_back(sum);
    }
    return s;
}

template <Scalar T>
SeriesEvaluation<T> almost_regular_euler(const AlmostRegularGraph& arg, const T& zeta, const T& t, std::size_t K) {
    validate_euler(t, zeta);
    if (t == 0) {
        SeriesEvaluation<T> s = almost_regular_series(arg, zeta, K);
        s.kind = SeriesEvaluation<T>::Kind::euler;
        s.t = t;
        return s;
    }
    if (K < 2) throw std::invalid_argument("expansion order K must be at least 2");
    const std::vector<Rational> S = chc_sums(special_chc(arg, K), K);
    const BinomialTable binom(K);
    const T x = T(arg.x);
    const T inv_tx = T(1) / (t * x);
    std::vector<T> scaled(K + 1, T(0));  // S_k (tx)^{-k}
    T p(1);
    for (std::size_t k = 1; k <= K; ++k) {
        p *= inv_tx;
        scaled[k] = T(S[k]) * p;
    }
    const T w = t * zeta / (1 + t * zeta);

    SeriesEvaluation<T> s;
    s.q = arg.special;
    s.zeta = zeta;
    s.kind = SeriesEvaluation<T>::Kind::euler;
    s.t = t;
    T sum = T(arg.d_max());
    T wpow(1);
    s.partial_sums.push_back(sum);
    for (std::size_t m = 1; m <= K; ++m) {
        wpow *= w;
        T inner(0);
        for (std::size_t k = 1; k <= m; ++k)
            if (scaled[k] != 0) inner += T(binom.at(m - 1, k - 1)) * scaled[k];
        if (inner != 0) sum += x * inner * wpow;
        s.partial_sums.push_back(sum);
    }
    return s;
}

namespace {

struct Complex {
    Real re;
    Real im;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
    const Real den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
Real modulus(const Complex& a) { return mp::sqrt(a.re * a.re + a.im * a.im); }
Real argument(const Complex& a) { return mp::atan2(a.im, a.re); }
Complex log(const Complex& a) { return {mp::log(modulus(a)), argument(a)}; }
Complex unit(const Real& theta) { return {mp::cos(theta), mp::sin(theta)}; }

struct Quadrature {
    Complex mean;
    Real max_u;
    Real winding;  // total change of arg f around the circle, divided by 2 pi
};

}  // namespace

ContourResult contour_eigenvalue(const AlmostRegularGraph& arg, const Real& zeta, const ContourOptions& opts) {
    const Graph& g = arg.graph;
    const Spectrum<Real> spec = symmetric_eigen<Real>(g.adjacency<Real>());
    std::vector<Real> lambda;
    std::vector<Real> weight;
    Real lambda_max = 0;
    const Real tiny = mp::pow(Real(10), -static_cast<int>(Real::default_precision()) + 5);
    for (std::size_t k = 0; k < g.size(); ++k) {
        Real w = spec.eigenvectors(arg.special, k);
        w *= w;
        if (w < tiny) continue;
        lambda.push_back(spec.eigenvalues[k]);
        weight.push_back(w);
        lambda_max = std::max(lambda_max, Real(mp::abs(spec.eigenvalues[k])));
    }

    ContourResult out;
    out.radius = opts.radius ? *opts.radius : Real(1 / (2 * lambda_max));
    if (out.radius <= 0) throw std::invalid_argument("contour radius must be positive");
    if (lambda_max > 0 && out.radius * lambda_max >= 1)
        throw std::domain_error("contour radius encloses a pole of the walk generating function (radius >= 1/lambda_1)");

    const Real d = Real(arg.d_max());
    if (zeta == 0) {
        out.points = 0;
        out.branch_ok = true;
        out.value = d;
        return out;
    }

    const Real x = Real(arg.x);
    const Real two_pi = 2 * boost::math::constants::pi<Real>();

    auto evaluate = [&](std::size_t points) {
        Quadrature q{{Real(0), Real(0)}, Real(0), Real(0)};
        std::optional<Real> first_arg;
        Real prev_arg = 0;
        for (std::size_t i = 0; i < points; ++i) {
            const Real theta = two_pi * i / points;
            const Complex e = unit(theta);
            const Complex z{out.radius * e.re, out.radius * e.im};
            Complex f{Real(0), Real(0)};
            for (std::size_t k = 0; k < lambda.size(); ++k) {
                const Complex den = Complex{Real(1), Real(0)} - Complex{lambda[k] * z.re, lambda[k] * z.im};
                f = f + Complex{weight[k], Real(0)} / den;
            }
            const Real fa = argument(f);
            if (first_arg) {
                Real step = fa - prev_arg;
                while (step > two_pi / 2) step -= two_pi;
                while (step < -two_pi / 2) step += two_pi;
                q.winding += step;
            } else {
                first_arg = fa;
            }
            prev_arg = fa;
            const Complex einv{e.re, -e.im};
            const Complex u = Complex{zeta, Real(0)} * einv / (Complex{x * out.radius, Real(0)} * f);
            q.max_u = std::max(q.max_u, modulus(u));
            q.mean = q.mean + einv * log(Complex{Real(1), Real(0)} - u);
        }
        Real step = *first_arg - prev_arg;
        while (step > two_pi / 2) step -= two_pi;
        while (step < -two_pi / 2) step += two_pi;
        q.winding = (q.winding + step) / two_pi;
        q.mean = {q.mean.re / points, q.mean.im / points};
        return q;
    };

    auto check = [&](const Quadrature& q) {
        if (q.max_u >= 1) throw std::domain_error("log branch condition |zeta/(x z f(z))| < 1 fails on the contour");
        if (mp::abs(q.winding) > 0.5) throw std::domain_error("walk generating function has a zero inside the contour");
    };
    auto finish = [&](const Quadrature& q, std::size_t points) {
        out.points = points;
        out.branch_ok = true;
        out.value = d + zeta / out.radius * q.mean.re;
        return out;
    };

    std::size_t points = std::max<std::size_t>(opts.quad_points, 8);
    Quadrature prev = evaluate(points);
    check(prev);
    // Fixed rule, no refinement.
    if (points >= opts.max_points) return finish(prev, points);
    while (true) {
        if (points * 2 > opts.max_points)
            throw ConvergenceError("contour quadrature did not settle within " + std::to_string(opts.max_points) +
                                   " points");
        Quadrature next = evaluate(points * 2);
        check(next);
        const Real v_prev = d + zeta / out.radius * prev.mean.re;
        const Real v_next = d + zeta / out.radius * next.mean.re;
        points *= 2;
        prev = next;
        if (mp::abs(v_next - v_prev) <= opts.tolerance * std::max(Real(1), Real(mp::abs(v_next))))
            return finish(prev, points);
    }
}

void write_chc_csv(std::ostream& out, const ChcTable& chc) {
    out << "k,m,value\n";
    for (std::size_t m = 1; m <= chc.M; ++m)
        for (std::size_t k = 1; k <= m; ++k) {
            const Rational& v = chc.value(k, m);
            out << k << ',' << m << ',';
            if (mp::denominator(v) == 1)
                out << mp::numerator(v).str();
            else
                out << to_fraction_string(v);
            out << '\n';
        }
}

nlohmann::json contour_to_json(const ContourResult& r, int digits) {
    return {{"radius", to_scientific_string(r.radius, digits)},
            {"points", r.points},
            {"branch_ok", r.branch_ok},
            {"value", to_scientific_string(r.value, digits)}};
}

template SeriesEvaluation<Rational> almost_regular_series<Rational>(const AlmostRegularGraph&, const Rational&,
                                                                    std::size_t);
template SeriesEvaluation<Real> almost_regular_series<Real>(const AlmostRegularGraph&, const Real&, std::size_t);
template SeriesEvaluation<Rational> almost_regular_euler<Rational>(const AlmostRegularGraph&, const Rational&,
                                                                   const Rational&, std::size_t);
template SeriesEvaluation<Real> almost_regular_euler<Real>(const AlmostRegularGraph&, const Real&, const Real&,
                                                           std::size_t);

}  // namespace lapperturb
