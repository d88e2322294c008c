#include "lapperturb/oracle.hpp"

#include "lapperturb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lapperturb {

namespace {

using std::abs;
using std::sqrt;
using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

constexpr std::size_t max_sweeps = 50;

template <Floating T>
T frobenius(const Matrix<T>& m, bool off_diagonal_only) {
    T sum(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!off_diagonal_only || i != j) sum += m(i, j) * m(i, j);
    return sqrt(sum);
}

template <Floating T>
std::string as_text(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

template <>
double default_eigen_tolerance<double>() {
    return 1e-12;
}

template <>
Real default_eigen_tolerance<Real>() {
    const int digits = static_cast<int>(Real::default_precision());
    return boost::multiprecision::pow(Real(10), -std::max(digits - 8, 6));
}

template <Floating T>
Spectrum<T> symmetric_eigen(const Matrix<T>& input, std::optional<T> tol_opt) {
    if (input.rows() != input.cols()) throw std::invalid_argument("eigensolver needs a square matrix");
    const std::size_t n = input.rows();
    const T tol = tol_opt ? *tol_opt : default_eigen_tolerance<T>();
    const T scale = std::max(T(1), frobenius(input, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (abs(input(i, j) - input(j, i)) > tol * scale)
                throw std::invalid_argument("eigensolver input is not symmetric");

    Matrix<T> a = input;
    Matrix<T> v = Matrix<T>::identity(n);
    std::size_t sweep = 0;
    while (frobenius(a, true) >= tol * scale) {
        if (sweep == max_sweeps)
            throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0) continue;
                const T theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
                T t = T(1) / (abs(theta) + sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                const T c = T(1) / sqrt(t * t + 1);
                const T s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const T akp = a(k, p);
                    const T akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T apk = a(p, k);
                    const T aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T vkp = v(k, p);
                    const T vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    Spectrum<T> out;
    out.sweeps = sweep;
    out.eigenvectors = Matrix<T>(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        out.eigenvalues.push_back(a(order[col], order[col]));
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, col) = v(k, order[col]);
    }
    T worst(0);
    for (std::size_t col = 0; col < n; ++col) {
        T norm2(0);
        for (std::size_t i = 0; i < n; ++i) {
            T r = -out.eigenvalues[col] * out.eigenvectors(i, col);
            for (std::size_t k = 0; k < n; ++k) r += input(i, k) * out.eigenvectors(k, col);
            norm2 += r * r;
        }
        worst = std::max(worst, T(sqrt(norm2)));
    }
    out.residual = worst;
    return out;
}

double accuracy_alpha(const Real& xi, const Real& mu) {
    const Real diff = boost::multiprecision::abs(xi - mu);
    if (diff == 0) return alpha_floor;
    const double a = boost::multiprecision::log10(diff).convert_to<double>();
    return std::max(a, alpha_floor);
}

double accuracy_alpha(double xi, double mu) {
    const double diff = std::abs(xi - mu);
    if (diff == 0.0) return alpha_floor;
    return std::max(std::log10(diff), alpha_floor);
}

bool SpectralBoundsReport::all_hold() const {
    if (!upper_holds) return false;
    for (const auto& b : lower)
        if (!b.exempt && !b.holds) return false;
    for (const auto& gb : gerschgorin)
        if (!gb.holds) return false;
    return true;
}

namespace {

// True when the non-isolated nodes form a clique K_m; returns m (1 for the empty graph).
std::optional<std::size_t> clique_plus_isolated(const Graph& g) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.degree(i) != 0) active.push_back(i);
    if (active.empty()) return 1;
    for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = a + 1; b < active.size(); ++b)
            if (g.weight(active[a], active[b]) == 0) return std::nullopt;
    return active.size();
}

}  // namespace

SpectralBoundsReport spectral_bounds(const Graph& g, const Spectrum<Real>& spec) {
    const std::size_t n = g.size();
    if (spec.eigenvalues.size() != n) throw std::invalid_argument("spectrum does not match graph size");
    SpectralBoundsReport report;
    const Real slack = 1e-9;

    report.lower_applicable = !g.is_weighted();
    if (report.lower_applicable) {
        std::vector<Rational> sorted = g.degrees();
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        const auto exception = clique_plus_isolated(g);
        for (std::size_t k = 1; k <= n; ++k) {
            SpectralBoundsReport::LowerBound b;
            b.k = k;
            b.mu_k = spec.eigenvalues[k - 1];
            b.bound = sorted[k - 1] - Rational(k) + 2;
            b.exempt = exception && *exception == k;
            b.holds = b.mu_k >= Real(b.bound) - slack;
            report.lower.push_back(b);
        }
    }

    report.mu1 = n ? spec.eigenvalues.front() : Real(0);
    Rational pair_max = 0;
    for (const Edge& e : g.edges()) pair_max = std::max(pair_max, Rational(g.degree(e.u) + g.degree(e.v)));
    report.upper = pair_max;
    if (!g.is_weighted()) report.upper = std::min(report.upper, Rational(n));
    report.upper_holds = report.mu1 <= Real(report.upper) + slack;

    const DegreeProfile profile = degree_profile(g);
    for (std::size_t q : profile.unique_nodes) {
        SpectralBoundsReport::Gerschgorin gb;
        gb.q = q;
        gb.upper = 2 * g.degree(q);
        gb.holds = std::any_of(spec.eigenvalues.begin(), spec.eigenvalues.end(), [&](const Real& mu) {
            return mu >= -slack && mu <= Real(gb.upper) + slack;
        });
        report.gerschgorin.push_back(gb);
    }
    return report;
}

SpectralBoundsReport spectral_bounds(const Graph& g) {
    return spectral_bounds(g, laplacian_spectrum<Real>(g));
}

template <Floating T>
nlohmann::json spectrum_to_json(const Spectrum<T>& s, int digits) {
    nlohmann::json values = nlohmann::json::array();
    for (const T& mu : s.eigenvalues) {
        if constexpr (std::same_as<T, Real>)
            values.push_back(to_scientific_string(mu, digits));
        else
            values.push_back(as_text(mu));
    }
    return {{"eigenvalues", values}, {"residual", to_double(s.residual)}};
}

template Spectrum<double> symmetric_eigen<double>(const Matrix<double>&, std::optional<double>);
template Spectrum<Real> symmetric_eigen<Real>(const Matrix<Real>&, std::optional<Real>);
template nlohmann::json spectrum_to_json<double>(const Spectrum<double>&, int);
template nlohmann::json spectrum_to_json<Real>(const Spectrum<Real>&, int);

}  // namespace lapperturb
