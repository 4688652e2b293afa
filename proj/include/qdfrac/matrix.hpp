#ifndef QDFRAC_MATRIX_HPP
#define QDFRAC_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "qdfrac/errors.hpp"
#include "qdfrac/rational.hpp"

namespace qdfrac {

/// Dense square matrix of rationals, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    explicit RatMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const noexcept { return n_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    /// Matrix with row i and column j removed (0-based).
    RatMatrix without(std::size_t row, std::size_t col) const {
        if (row >= n_ || col >= n_) throw IndexError("minor index out of range");
        RatMatrix m(n_ - 1);
        for (std::size_t i = 0, mi = 0; i < n_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, mj = 0; j < n_; ++j) {
                if (j == col) continue;
                m(mi, mj++) = (*this)(i, j);
            }
            ++mi;
        }
        return m;
    }

    bool operator==(const RatMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> data_;
};

/// Exact determinant by rational Gaussian elimination, pivoting on the first
/// nonzero entry of each column. The empty matrix has determinant 1.
inline Rational determinant(RatMatrix m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            det = -det;
        }
        const Rational p = m(col, col);
        det *= p;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            const Rational f = m(i, col) / p;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

} // namespace qdfrac

#endif
