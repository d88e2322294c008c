#ifndef LAPPERTURB_MATRIX_HPP
#define LAPPERTURB_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lapperturb {

// Row-major dense square-or-rectangular matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
        return out;
    }

    std::vector<T> multiply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            T acc(0);
            for (std::size_t j = 0; j < cols_; ++j) {
                const T& a = (*this)(i, j);
                if (a != 0) acc += a * v[j];
            }
            out[i] = acc;
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

}  // namespace lapperturb

#endif
