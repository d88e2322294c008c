#include "lapperturb/perturb.hpp"

#include "lapperturb/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace lapperturb {

namespace {

template <Scalar T>
struct Neighbour {
    std::size_t node;
    T weight;
    bool unit;
};

template <Scalar T>
std::vector<std::vector<Neighbour<T>>> neighbour_lists(const Graph& g) {
    std::vector<std::vector<Neighbour<T>>> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g.weight(i, j) != 0) out[i].push_back({j, T(g.weight(i, j)), g.weight(i, j) == 1});
    return out;
}

template <Scalar T>
void record_bits(CoefficientTable<T>& table, std::size_t j) {
    if constexpr (std::same_as<T, Rational>) {
        BitLengths b{j, numerator_bits(table.c[j]), denominator_bits(table.c[j])};
        for (const Rational& v : table.beta[j]) {
            b.numerator = std::max(b.numerator, numerator_bits(v));
            b.denominator = std::max(b.denominator, denominator_bits(v));
        }
        table.bits.push_back(b);
    } else {
        (void)table;
        (void)j;
    }
}

// Tolerant comparison for floating tables; exact tables compare exactly.
template <Scalar T>
bool within(const T& value, const T& bound) {
    if constexpr (std::same_as<T, Rational>) {
        return value <= bound;
    } else {
        const Real slack = boost::multiprecision::pow(Real(2), -static_cast<int>(Real::default_precision() * 3));
        return value <= bound + slack * (1 + boost::multiprecision::abs(bound));
    }
}

}  // namespace

void require_unique_degree(const Graph& g, std::size_t q) {
    if (q >= g.size()) throw std::out_of_range("node " + std::to_string(q + 1) + " out of range");
    for (std::size_t k = 0; k < g.size(); ++k)
        if (k != q && g.degree(k) == g.degree(q)) throw NonUniqueDegree(q);
}

template <Scalar T>
CoefficientTable<T> coefficients(const Graph& g, std::size_t q, std::size_t K) {
    if (K < 2) throw std::invalid_argument("expansion order K must be at least 2");
    require_unique_degree(g, q);

    const std::size_t n = g.size();
    const auto nbrs = neighbour_lists<T>(g);
    std::vector<T> degree(n);
    for (std::size_t i = 0; i < n; ++i) degree[i] = T(g.degree(i));
    std::vector<T> gap(n);  // d_r - d_q
    for (std::size_t r = 0; r < n; ++r) gap[r] = degree[r] - degree[q];

    CoefficientTable<T> table;
    table.q = q;
    table.K = K;
    table.c.assign(K + 1, T(0));
    table.beta.assign(K + 1, std::vector<T>(n, T(0)));
    table.c[0] = degree[q];
    table.beta[0][q] = 1;

    for (const auto& nb : nbrs[q]) table.beta[1][nb.node] = -nb.weight / gap[nb.node];

    auto c_from_row = [&](std::size_t j) {
        T acc(0);
        for (const auto& nb : nbrs[q]) {
            const T& b = table.beta[j][nb.node];
            if (b == 0) continue;
            if (nb.unit)
                acc += b;
            else
                acc += b * nb.weight;
        }
        return acc;
    };

    if (K >= 2) table.c[2] = c_from_row(1);
    for (std::size_t j = 2; j <= K; ++j) {
        const auto& prev = table.beta[j - 1];
        auto& row = table.beta[j];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == q) continue;
            T acc(0);
            for (std::size_t k = 1; k + 2 <= j; ++k) {
                const T& b = table.beta[k][r];
                if (b != 0) acc += b * table.c[j - k];
            }
            for (const auto& nb : nbrs[r]) {
                if (nb.node == q) continue;
                const T& b = prev[nb.node];
                if (b == 0) continue;
                if (nb.unit)
                    acc -= b;
                else
                    acc -= b * nb.weight;
            }
            if (acc != 0) row[r] = acc / gap[r];
        }
        if (j + 1 <= K) table.c[j + 1] = c_from_row(j);
    }

    for (std::size_t j = 0; j <= K; ++j) record_bits(table, j);
    return table;
}

template <Scalar T>
ExplicitCoefficients<T> explicit_c2_c3_c4(const Graph& g, std::size_t q) {
    require_unique_degree(g, q);
    const std::size_t n = g.size();
    const Matrix<T> a = g.adjacency<T>();
    std::vector<T> inv_gap(n, T(0));  // 1/(d_q - d_k)
    for (std::size_t k = 0; k < n; ++k)
        if (k != q) inv_gap[k] = T(1) / T(g.degree(q) - g.degree(k));

    T c2(0);
    for (std::size_t k = 0; k < n; ++k)
        if (k != q) c2 += a(k, q) * a(k, q) * inv_gap[k];

    // s[l] = sum_k a_kq a_kl / (d_q - d_k)
    std::vector<T> s(n, T(0));
    for (std::size_t l = 0; l < n; ++l) {
        if (l == q) continue;
        for (std::size_t k = 0; k < n; ++k)
            if (k != q) s[l] += a(k, q) * a(k, l) * inv_gap[k];
    }

    T c3(0);
    for (std::size_t r = 0; r < n; ++r)
        if (r != q) c3 += a(r, q) * inv_gap[r] * s[r];

    T c4(0);
    for (std::size_t r = 0; r < n; ++r) {
        if (r == q || a(r, q) == 0) continue;
        T inner(0);
        for (std::size_t l = 0; l < n; ++l)
            if (l != q) inner += a(r, l) * inv_gap[l] * s[l];
        c4 += a(r, q) * inv_gap[r] * inner;
    }
    T sq(0);
    for (std::size_t r = 0; r < n; ++r)
        if (r != q) sq += a(r, q) * a(r, q) * inv_gap[r] * inv_gap[r];
    c4 -= sq * c2;

    return {c2, c3, c4};
}

template <Scalar T>
BoundsReport<T> coefficient_bounds_ok(const Graph& g, std::size_t q, const CoefficientTable<T>& table) {
    if (g.is_weighted()) throw std::invalid_argument("coefficient bounds apply to unweighted graphs only");
    if (table.q != q) throw std::invalid_argument("coefficient table was built for a different node");
    const WalkCounts w = closed_walk_counts(g, q, table.K);
    const DegreeProfile profile = degree_profile(g);
    const Rational kappa = profile.kappa.at(q);

    BoundsReport<T> report;
    auto walks = [&](std::size_t m) { return T(w.counts[m]); };
    using boost::multiprecision::abs;
    if (table.K >= 2) report.c2_ok = within<T>(abs(table.c[2]), walks(2));
    if (table.K >= 3) report.c3_ok = within<T>(abs(table.c[3]), walks(3));
    if (table.K >= 4) report.c4_ok = within<T>(abs(table.c[4]), walks(4) + walks(2));

    Rational kpow = 1;
    for (std::size_t j = 2; j <= table.K; ++j) {
        kpow *= kappa;
        typename BoundsReport<T>::Hypothesis h;
        h.j = j;
        h.magnitude = abs(table.c[j]);
        h.bound = T(kpow * w.counts[j]);
        h.holds = within<T>(h.magnitude, h.bound);
        report.hypothesis.push_back(std::move(h));
    }
    return report;
}

template <Scalar T>
SeriesEvaluation<T> taylor_partial_sums(const CoefficientTable<T>& table, const T& zeta, std::size_t K_max) {
    if (K_max > table.K) throw std::invalid_argument("K_max exceeds the coefficient table order");
    SeriesEvaluation<T> s;
    s.q = table.q;
    s.zeta = zeta;
    s.kind = SeriesEvaluation<T>::Kind::taylor;
    s.partial_sums.reserve(K_max + 1);
    T sum = table.d_q();
    T power(1);
    s.partial_sums.push_back(sum);
    for (std::size_t j = 1; j <= K_max; ++j) {
        power *= zeta;
        if (table.c[j] != 0) sum += table.c[j] * power;
        s.partial_sums.push_back(sum);
    }
    return s;
}

template <Scalar T>
std::vector<T> reconstruct_eigenvector(const CoefficientTable<T>& table, const T& zeta, std::size_t K) {
    if (K > table.K) throw std::invalid_argument("K exceeds the coefficient table order");
    std::vector<T> v = table.beta[0];
    T power(1);
    for (std::size_t j = 1; j <= K; ++j) {
        power *= zeta;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (table.beta[j][k] != 0) v[k] += power * table.beta[j][k];
    }
    return v;
}

template <Scalar T>
nlohmann::json coefficient_table_to_json(const CoefficientTable<T>& table, int digits) {
    nlohmann::json c = nlohmann::json::array();
    for (std::size_t j = 2; j <= table.K; ++j) c.push_back(to_output_string(table.c[j], digits));
    return {{"q", table.q + 1}, {"K", table.K}, {"d_q", to_output_string(table.d_q(), digits)}, {"c", c}};
}

#define LAPPERTURB_INSTANTIATE(T)                                                                     \
    template CoefficientTable<T> coefficients<T>(const Graph&, std::size_t, std::size_t);             \
    template ExplicitCoefficients<T> explicit_c2_c3_c4<T>(const Graph&, std::size_t);                 \
    template BoundsReport<T> coefficient_bounds_ok<T>(const Graph&, std::size_t,                      \
                                                      const CoefficientTable<T>&);                    \
    template SeriesEvaluation<T> taylor_partial_sums<T>(const CoefficientTable<T>&, const T&,         \
                                                        std::size_t);                                 \
    template std::vector<T> reconstruct_eigenvector<T>(const CoefficientTable<T>&, const T&,          \
                                                       std::size_t);                                  \
    template nlohmann::json coefficient_table_to_json<T>(const CoefficientTable<T>&, int);

LAPPERTURB_INSTANTIATE(Rational)
LAPPERTURB_INSTANTIATE(Real)

#undef LAPPERTURB_INSTANTIATE

}  // namespace lapperturb
