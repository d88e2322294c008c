#include "lapperturb/euler.hpp"

#include "lapperturb/binomial.hpp"
#include "lapperturb/errors.hpp"
#include "lapperturb/oracle.hpp"

#include <ostream>
#include <stdexcept>

namespace lapperturb {

template <Scalar T>
void validate_euler(const T& t, const T& zeta) {
    if (1 + t * zeta == 0) {
        if (zeta == -1) throw SingularTransform("Euler transform is singular at t = 1 for zeta = -1");
        throw SingularTransform("Euler transform is singular: 1 + t*zeta = 0");
    }
}

template <Scalar T>
std::vector<T> euler_transform_generic(const T& f0, std::span<const T> coeffs, const T& t, const T& z,
                                       std::size_t M) {
    validate_euler(t, z);
    if (coeffs.size() < M) throw std::invalid_argument("Euler transform needs M series coefficients");
    const BinomialTable binom(M == 0 ? 0 : M - 1);
    std::vector<T> tpow(M + 1, T(1));
    for (std::size_t i = 1; i <= M; ++i) tpow[i] = tpow[i - 1] * t;
    const T w = z / (1 + t * z);

    std::vector<T> sums;
    sums.reserve(M + 1);
    T sum = f0;
    T wpow(1);
    sums.push_back(sum);
    for (std::size_t m = 1; m <= M; ++m) {
        wpow *= w;
        T inner(0);
        for (std::size_t k = 1; k <= m; ++k) {
            const T& f = coeffs[k - 1];
            if (f == 0 || tpow[m - k] == 0) continue;
            inner += T(binom.at(m - 1, k - 1)) * tpow[m - k] * f;
        }
        if (inner != 0) sum += inner * wpow;
        sums.push_back(sum);
    }
    return sums;
}

template <Scalar T>
SeriesEvaluation<T> euler_series(const CoefficientTable<T>& table, const EulerParams<T>& params) {
    if (params.K_max > table.K) throw std::invalid_argument("K_max exceeds the coefficient table order");
    SeriesEvaluation<T> s;
    s.q = table.q;
    s.zeta = params.zeta;
    s.kind = SeriesEvaluation<T>::Kind::euler;
    s.t = params.t;
    const std::span<const T> f(table.c.data() + 1, table.K);
    s.partial_sums = euler_transform_generic<T>(table.d_q(), f, params.t, params.zeta, params.K_max);
    return s;
}

template <Scalar T>
T euler_k4_estimate(const Graph& g, std::size_t q) {
    const ExplicitCoefficients<T> c = explicit_c2_c3_c4<T>(g, q);
    return T(g.degree(q)) + (11 * c.c2 - 5 * c.c3 + c.c4) / 16;
}

template <Scalar T>
ConvergenceReport convergence_classify(const SeriesEvaluation<T>& series, const std::vector<Real>& eigenvalues,
                                       double alpha_threshold, std::size_t K_check) {
    if (eigenvalues.empty()) throw std::invalid_argument("convergence check needs a non-empty spectrum");
    if (K_check > series.k_max())
        throw std::invalid_argument("K_check " + std::to_string(K_check) + " beyond computed order " +
                                    std::to_string(series.k_max()));

    const Real xi_check = to_real(series.at(K_check));
    std::size_t best = 0;
    Real best_dist = boost::multiprecision::abs(xi_check - eigenvalues[0]);
    for (std::size_t i = 1; i < eigenvalues.size(); ++i) {
        Real d = boost::multiprecision::abs(xi_check - eigenvalues[i]);
        // Strict comparison keeps the earlier, larger eigenvalue on ties.
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }

    ConvergenceReport r;
    r.matched_index = best;
    r.matched_mu = eigenvalues[best];
    r.alpha_threshold = alpha_threshold;
    r.K_check = K_check;
    r.alpha.reserve(series.partial_sums.size());
    for (const T& xi : series.partial_sums) r.alpha.push_back(accuracy_alpha(to_real(xi), r.matched_mu));
    r.converged = r.alpha[K_check] <= alpha_threshold;
    return r;
}

namespace {

std::string t_label(const Rational& t) { return to_compact_string(t); }
std::string t_label(const Real& t) { return to_scientific_string(t, 6); }

}  // namespace

void write_convergence_csv_header(std::ostream& out) { out << "q,t,K,xi,alpha,matched_mu,converged\n"; }

template <Scalar T>
void write_convergence_csv(std::ostream& out, const SeriesEvaluation<T>& series, const ConvergenceReport& report,
                           int digits) {
    const std::string t_text = series.t ? t_label(*series.t) : std::string("taylor");
    const std::string mu = to_scientific_string(report.matched_mu, digits);
    for (std::size_t K = 2; K < series.partial_sums.size(); ++K) {
        out << series.q + 1 << ',' << t_text << ',' << K << ','
            << to_scientific_string(to_real(series.partial_sums[K]), digits) << ',' << report.alpha[K] << ','
            << mu << ',' << (report.converged ? "true" : "false") << '\n';
    }
}

#define LAPPERTURB_INSTANTIATE(T)                                                                           \
    template void validate_euler<T>(const T&, const T&);                                                    \
    template std::vector<T> euler_transform_generic<T>(const T&, std::span<const T>, const T&, const T&,   \
                                                       std::size_t);                                        \
    template SeriesEvaluation<T> euler_series<T>(const CoefficientTable<T>&, const EulerParams<T>&);        \
    template T euler_k4_estimate<T>(const Graph&, std::size_t);                                             \
    template ConvergenceReport convergence_classify<T>(const SeriesEvaluation<T>&, const std::vector<Real>&, \
                                                       double, std::size_t);                                \
    template void write_convergence_csv<T>(std::ostream&, const SeriesEvaluation<T>&,                       \
                                           const ConvergenceReport&, int);

LAPPERTURB_INSTANTIATE(Rational)
LAPPERTURB_INSTANTIATE(Real)

#undef LAPPERTURB_INSTANTIATE

}  // namespace lapperturb
