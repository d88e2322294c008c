#ifndef LAPPERTURB_PERTURB_HPP
#define LAPPERTURB_PERTURB_HPP

#include "lapperturb/graph.hpp"
#include "lapperturb/number.hpp"

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

namespace lapperturb {

struct BitLengths {
    std::size_t order = 0;
    std::size_t numerator = 0;
    std::size_t denominator = 0;
};

template <Scalar T>
struct CoefficientTable {
    std::size_t q = 0;
    std::size_t K = 0;
    // c[0] = d_q, c[1] = 0, c[j] for 2 <= j <= K.
    std::vector<T> c;
    // beta[j][r] for 0 <= j <= K; beta[0] = e_q and beta[j][q] = 0 for j >= 1.
    std::vector<std::vector<T>> beta;
    // Largest numerator/denominator bit length among c_j and beta_j, per order. Exact mode only.
    std::vector<BitLengths> bits;

    const T& d_q() const { return c[0]; }
};

template <Scalar T>
struct SeriesEvaluation {
    enum class Kind { taylor, euler };

    std::size_t q = 0;
    T zeta;
    Kind kind = Kind::taylor;
    std::optional<T> t;
    // partial_sums[K] for 0 <= K <= K_max.
    std::vector<T> partial_sums;

    std::size_t k_max() const { return partial_sums.empty() ? 0 : partial_sums.size() - 1; }
    const T& at(std::size_t K) const { return partial_sums.at(K); }
};

// Throws NonUniqueDegree unless q's degree is held by no other node.
void require_unique_degree(const Graph& g, std::size_t q);

template <Scalar T>
CoefficientTable<T> coefficients(const Graph& g, std::size_t q, std::size_t K);

template <Scalar T>
struct ExplicitCoefficients {
    T c2;
    T c3;
    T c4;
};

// Direct neighbour-sum formulas for c2, c3, c4 (no recursion).
template <Scalar T>
ExplicitCoefficients<T> explicit_c2_c3_c4(const Graph& g, std::size_t q);

template <Scalar T>
struct BoundsReport {
    struct Hypothesis {
        std::size_t j = 0;
        T magnitude;
        T bound;  // kappa^(j-1) (A^j)_qq
        bool holds = false;
    };

    bool c2_ok = true;
    bool c3_ok = true;
    bool c4_ok = true;
    std::vector<Hypothesis> hypothesis;

    bool ok() const { return c2_ok && c3_ok && c4_ok; }
};

// Unweighted graphs only. Checks |c2| <= (A^2)_qq, |c3| <= (A^3)_qq and
// |c4| <= (A^4)_qq + (A^2)_qq; the kappa^(j-1) (A^j)_qq comparison is informational.
template <Scalar T>
BoundsReport<T> coefficient_bounds_ok(const Graph& g, std::size_t q, const CoefficientTable<T>& table);

template <Scalar T>
SeriesEvaluation<T> taylor_partial_sums(const CoefficientTable<T>& table, const T& zeta, std::size_t K_max);

// e_q + sum_{j=1}^{K} zeta^j beta_j. Component q is exactly 1.
template <Scalar T>
std::vector<T> reconstruct_eigenvector(const CoefficientTable<T>& table, const T& zeta, std::size_t K);

// {q, K, d_q, c:[c_2..c_K]} with 1-based q. Rationals as "p/q", reals in scientific notation.
template <Scalar T>
nlohmann::json coefficient_table_to_json(const CoefficientTable<T>& table, int digits = 40);

}  // namespace lapperturb

#endif
