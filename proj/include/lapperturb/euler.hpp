#ifndef LAPPERTURB_EULER_HPP
#define LAPPERTURB_EULER_HPP

#include "lapperturb/perturb.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace lapperturb {

template <Scalar T>
struct EulerParams {
    T t = T(-1);
    T zeta = T(-1);
    std::size_t K_max = 30;
};

// Throws SingularTransform when 1 + t*zeta == 0 (t == 1 on the Laplacian).
template <Scalar T>
void validate_euler(const T& t, const T& zeta);

// xi_K = d_q + sum_{m=2}^{K} (sum_{k=2}^{m} C(m-1,k-1) t^(m-k) c_k) (zeta / (1 + t zeta))^m.
template <Scalar T>
SeriesEvaluation<T> euler_series(const CoefficientTable<T>& table, const EulerParams<T>& params);

// d_q + 11 c2/16 - 5 c3/16 + c4/16 from the explicit neighbour sums.
template <Scalar T>
T euler_k4_estimate(const Graph& g, std::size_t q);

// Partial sums (index 0..M) of f0 + sum_{m=1}^{M} [sum_{k=1}^{m} C(m-1,k-1) f_k t^(m-k)] (z/(1+tz))^m.
// coeffs[k-1] holds f_k.
template <Scalar T>
std::vector<T> euler_transform_generic(const T& f0, std::span<const T> coeffs, const T& t, const T& z,
                                       std::size_t M);

struct ConvergenceReport {
    std::size_t matched_index = 0;  // 0-based position in the descending spectrum
    Real matched_mu;
    std::vector<double> alpha;  // alpha[K] for 0 <= K <= K_max
    double alpha_threshold = -4.0;
    std::size_t K_check = 30;
    bool converged = false;
};

// Matches the eigenvalue nearest to the partial sum at K_check (ties go to the larger one),
// then reports alpha(K) = log10|xi_K - mu| for every K.
template <Scalar T>
ConvergenceReport convergence_classify(const SeriesEvaluation<T>& series, const std::vector<Real>& eigenvalues,
                                       double alpha_threshold = -4.0, std::size_t K_check = 30);

// Columns q,t,K,xi,alpha,matched_mu,converged; one row per K from 2 to K_max.
void write_convergence_csv_header(std::ostream& out);
template <Scalar T>
void write_convergence_csv(std::ostream& out, const SeriesEvaluation<T>& series, const ConvergenceReport& report,
                           int digits = 20);

}  // namespace lapperturb

#endif
