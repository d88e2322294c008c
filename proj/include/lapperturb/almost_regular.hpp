#ifndef LAPPERTURB_ALMOST_REGULAR_HPP
#define LAPPERTURB_ALMOST_REGULAR_HPP

#include "lapperturb/graph.hpp"
#include "lapperturb/matrix.hpp"
#include "lapperturb/number.hpp"
#include "lapperturb/perturb.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

namespace lapperturb {

// One node of degree d_max, every other node of degree r < d_max; x = d_max - r.
struct AlmostRegularGraph {
    Graph graph;
    std::size_t special = 0;
    Rational r;
    Rational x;

    const Rational& d_max() const { return graph.degree(special); }
};

// Detects the special node; throws NotAlmostRegular otherwise.
AlmostRegularGraph make_almost_regular(const Graph& g);

// Characteristic coefficients A[k,m] = sum over compositions (j_1..j_k) of m of prod (A^{j_i})_ss.
struct ChcTable {
    WalkCounts walks;
    std::size_t M = 0;
    Matrix<Rational> table;  // indices k, m in 0..M; A[0,0] = 1

    const Rational& value(std::size_t k, std::size_t m) const { return table(k, m); }
};

ChcTable chc_build(const WalkCounts& walks, std::size_t M);

// c_m = x^{1-m} sum_{k=1}^{U} ((-1)^{k-1}/k) C(m+k-2, k-1) A[k,m] with U = m, or floor(m/2)
// when full_range is false.
Rational cm_closed_form(const AlmostRegularGraph& arg, const ChcTable& chc, std::size_t m, bool full_range = true);

// c[0..K] (c[0] = d_max, c[1] = 0) from the constant-gap beta recursion.
std::vector<Rational> cm_recursion(const AlmostRegularGraph& arg, std::size_t K);

// c[0..K] where c_j, j >= 3, comes from the (A^2)_{m s} contraction of beta_{j-2}.
std::vector<Rational> cm_pseudo_recursion(const AlmostRegularGraph& arg, std::size_t K);

// A[k,m] of the complete graph K_N in closed form.
Integer complete_graph_chc(std::size_t N, std::size_t k, std::size_t m);

// Upper bound on |A[k,m]| for graphs on N nodes, 2k <= m, N >= 3. At m = 2k the
// factor (m-2k)^(m-2k) is taken as 0^0 = 1.
Rational chc_bound(std::size_t N, std::size_t k, std::size_t m);
// Same bound with the auxiliary parameter fixed at 1/2: 2^{m-k} (N-1)^m / (N - 3/2)^k.
Rational chc_bound_half(std::size_t N, std::size_t k, std::size_t m);

template <Scalar T>
SeriesEvaluation<T> almost_regular_series(const AlmostRegularGraph& arg, const T& zeta, std::size_t K);

// Euler t-transform written with (A[j,k]) directly; t == 0 falls back to the plain series.
template <Scalar T>
SeriesEvaluation<T> almost_regular_euler(const AlmostRegularGraph& arg, const T& zeta, const T& t, std::size_t K);

struct ContourOptions {
    std::optional<Real> radius;  // default 1/(2 lambda_1(A))
    std::size_t quad_points = 64;
    std::size_t max_points = std::size_t{1} << 14;  // quad_points >= max_points: single fixed rule
    double tolerance = 1e-10;
};

struct ContourResult {
    Real radius;
    std::size_t points = 0;
    bool branch_ok = false;
    Real value;
};

// Circle-contour evaluation of the perturbed eigenvalue using the walk generating function
// f(z) = sum_m (A^m)_ss z^m = sum_k (x_k)_s^2 / (1 - lambda_k z).
ContourResult contour_eigenvalue(const AlmostRegularGraph& arg, const Real& zeta, const ContourOptions& opts = {});

void write_chc_csv(std::ostream& out, const ChcTable& chc);
nlohmann::json contour_to_json(const ContourResult& r, int digits = 30);

}  // namespace lapperturb

#endif
