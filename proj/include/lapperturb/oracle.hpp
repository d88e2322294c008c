#ifndef LAPPERTURB_ORACLE_HPP
#define LAPPERTURB_ORACLE_HPP

#include "lapperturb/graph.hpp"
#include "lapperturb/matrix.hpp"
#include "lapperturb/number.hpp"

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

namespace lapperturb {

template <Floating T>
struct Spectrum {
    std::vector<T> eigenvalues;  // descending
    Matrix<T> eigenvectors;      // column i belongs to eigenvalues[i]
    T residual = T(0);           // max_i ||M v_i - lambda_i v_i||
    std::size_t sweeps = 0;
};

// 1e-12 for double; for Real, 10^-(digits10 - 8), i.e. 1e-30 at 128 bits.
template <Floating T>
T default_eigen_tolerance();

// Cyclic Jacobi. Stops when the off-diagonal Frobenius norm drops below tol * max(1, ||M||_F);
// throws ConvergenceError after 50 sweeps.
template <Floating T>
Spectrum<T> symmetric_eigen(const Matrix<T>& m, std::optional<T> tol = std::nullopt);

template <Floating T>
Spectrum<T> laplacian_spectrum(const Graph& g) {
    return symmetric_eigen<T>(laplacian<T>(g));
}

inline constexpr double alpha_floor = -300.0;

// log10|xi - mu|, floored at -300.
double accuracy_alpha(const Real& xi, const Real& mu);
double accuracy_alpha(double xi, double mu);

struct SpectralBoundsReport {
    struct LowerBound {
        std::size_t k = 0;  // 1-based rank
        Real mu_k;
        Rational bound;  // d_(k) - k + 2
        bool exempt = false;
        bool holds = false;
    };
    struct Gerschgorin {
        std::size_t q = 0;
        Rational upper;  // 2 d_q
        bool holds = false;
    };

    bool lower_applicable = false;  // unweighted graphs only
    std::vector<LowerBound> lower;
    Real mu1;
    Rational upper;  // min(N, max over edges of d_u + d_v); the N cap only for unweighted graphs
    bool upper_holds = false;
    std::vector<Gerschgorin> gerschgorin;

    bool all_hold() const;
};

SpectralBoundsReport spectral_bounds(const Graph& g, const Spectrum<Real>& laplacian_spec);
SpectralBoundsReport spectral_bounds(const Graph& g);

// {eigenvalues:[strings], residual}
template <Floating T>
nlohmann::json spectrum_to_json(const Spectrum<T>& s, int digits = 40);

}  // namespace lapperturb

#endif
