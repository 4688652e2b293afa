#ifndef QDFRAC_HANKELMAT_HPP
#define QDFRAC_HANKELMAT_HPP

#include <string>
#include <vector>

#include "qdfrac/errors.hpp"
#include "qdfrac/matrix.hpp"
#include "qdfrac/rational.hpp"

namespace qdfrac::hankel {

/// The k x k matrix A^(k-1) with a_ij = (-1)^{i+j-2} (i+j-2)!, i.e. the Hankel
/// matrix of c_n = (-1)^n n! at offset 0.
inline RatMatrix factorial_matrix(int k) {
    if (k < 1) throw DomainError("factorial_matrix: k must be >= 1");
    RatMatrix a(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                Rational(neg_one_pow(i + j) * factorial(i + j));
    return a;
}

/// 1! 2! ... n!, with the empty product equal to 1.
inline Integer superfactorial(int n) {
    Integer r(1);
    for (int i = 1; i <= n; ++i) r *= factorial(i);
    return r;
}

/// ((k-1)! (k-2)! ... 1!)^2.
inline Rational det_A_closed_form(int k) {
    const Integer s = superfactorial(k - 1);
    return Rational(s * s);
}

/// det A^(k-1) by elimination, checked against the closed form.
inline Rational det_A(int k) {
    Rational d = determinant(factorial_matrix(k));
    if (d != det_A_closed_form(k))
        throw IdentityViolation("det A^(" + std::to_string(k - 1) + ") = " + to_string(d) +
                                " differs from closed form " + to_string(det_A_closed_form(k)));
    return d;
}

/// (-1)^{k+m} / ((m-1)!)^2 / (k-m)! * det A^(k-1).
inline Rational last_row_minor_closed_form(int k, int m) {
    const Integer fm = factorial(m - 1);
    return Rational(neg_one_pow(k + m)) / Rational(fm * fm * factorial(k - m)) * det_A_closed_form(k);
}

/// det of A^(k-1) with row `row` and column `col` deleted (1-based). Minors of
/// the last row are checked against the closed form above.
inline Rational minor_A(int k, int row, int col) {
    if (k < 1) throw DomainError("minor_A: k must be >= 1");
    if (row < 1 || row > k || col < 1 || col > k)
        throw IndexError("minor_A: (" + std::to_string(row) + "," + std::to_string(col) +
                         ") outside 1.." + std::to_string(k));
    Rational d = determinant(factorial_matrix(k).without(static_cast<std::size_t>(row - 1),
                                                         static_cast<std::size_t>(col - 1)));
    if (row == k) {
        const Rational expect = last_row_minor_closed_form(k, col);
        if (d != expect)
            throw IdentityViolation("minor (" + std::to_string(k) + "," + std::to_string(col) +
                                    ") of A^(" + std::to_string(k - 1) + ") = " + to_string(d) +
                                    ", closed form " + to_string(expect));
    }
    return d;
}

/// (-1)^{k+1} (k-1)! ((k-2)! ... 1!)^2.
inline Rational h1_offset_closed_form(int k) {
    const Integer s = superfactorial(k - 2);
    return Rational(neg_one_pow(k + 1) * factorial(k - 1) * s * s);
}

/// H_{k-1}^(1) = det A^(k-1)_{k,1}, checked against its closed form.
inline Rational h1_offset_det(int k) {
    if (k < 2) throw DomainError("h1_offset_det: k must be >= 2");
    Rational d = determinant(factorial_matrix(k).without(static_cast<std::size_t>(k - 1), 0));
    if (d != h1_offset_closed_form(k))
        throw IdentityViolation("H_" + std::to_string(k - 1) + "^(1) = " + to_string(d) +
                                " differs from closed form " + to_string(h1_offset_closed_form(k)));
    return d;
}

/// f_{k-1}(x, y) = 1 + sum_{i=1}^{k-1} (-1)^i prod_{j<=i} (x/j - 1) prod_{j<=i} (y/j + 1).
inline Rational f_poly(int k, const Rational& x, const Rational& y) {
    Rational total(1);
    Rational px(1);
    Rational py(1);
    for (int i = 1; i <= k - 1; ++i) {
        px *= x / i - 1;
        py *= y / i + 1;
        total += Rational(neg_one_pow(i)) * px * py;
    }
    return total;
}

/// f_{k-1}(k, m-1): 0 for 1 <= m <= k-1 and (-1)^{k-1} for m = k.
inline Rational f_eval(int k, int m) {
    if (k < 2) throw DomainError("f_eval: k must be >= 2");
    if (m < 1 || m > k) throw IndexError("f_eval: m outside 1..k");
    return f_poly(k, Rational(k), Rational(m - 1));
}

/// b_k with entries 1/((i-1)!)^2 * 1/(k-i)!, i = 1..k: the last column of (A^(k-1))^{-1}.
inline std::vector<Rational> inverse_last_column(int k) {
    std::vector<Rational> b;
    b.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        const Integer f = factorial(i - 1);
        b.emplace_back(Rational(1) / Rational(f * f * factorial(k - i)));
    }
    return b;
}

/// Row m of A^(k-1) times b_k; equals the Kronecker delta(m, k).
inline Rational row_times_inverse_column(int k, int m) {
    if (m < 1 || m > k) throw IndexError("row index outside 1..k");
    const RatMatrix a = factorial_matrix(k);
    const std::vector<Rational> b = inverse_last_column(k);
    Rational s(0);
    for (int i = 0; i < k; ++i) s += a(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(i)) * b[static_cast<std::size_t>(i)];
    return s;
}

} // namespace qdfrac::hankel

#endif
