#ifndef LAPPERTURB_BINOMIAL_HPP
#define LAPPERTURB_BINOMIAL_HPP

#include "lapperturb/number.hpp"

#include <cstddef>
#include <vector>

namespace lapperturb {

// Pascal triangle of exact integers, rows 0..n_max.
class BinomialTable {
public:
    explicit BinomialTable(std::size_t n_max) : rows_(n_max + 1) {
        for (std::size_t n = 0; n <= n_max; ++n) {
            rows_[n].assign(n + 1, Integer(1));
            for (std::size_t k = 1; k < n; ++k) rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
        }
    }

    std::size_t max_n() const { return rows_.size() - 1; }

    // Zero outside 0 <= k <= n.
    Integer operator()(std::size_t n, std::size_t k) const {
        if (k > n) return Integer(0);
        return rows_.at(n)[k];
    }

    const Integer& at(std::size_t n, std::size_t k) const { return rows_.at(n).at(k); }

private:
    std::vector<std::vector<Integer>> rows_;
};

}  // namespace lapperturb

#endif
