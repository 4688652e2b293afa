#ifndef QDFRAC_RATIONAL_HPP
#define QDFRAC_RATIONAL_HPP

#include <gmpxx.h>

#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "qdfrac/errors.hpp"

namespace qdfrac {

/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// p/q text, or just p when the denominator is one.
inline std::string to_string(const Rational& r) {
    return r.get_str(10);
}

inline std::string to_string(const Integer& z) {
    return z.get_str(10);
}

/// (-1)^n for any integer n.
inline int neg_one_pow(long n) {
    return (n % 2 == 0) ? 1 : -1;
}

namespace detail {

class FactorialTable {
public:
    Integer get(unsigned n) {
        {
            std::shared_lock lock(mutex_);
            if (n < table_.size()) return table_[n];
        }
        std::unique_lock lock(mutex_);
        while (table_.size() <= n) {
            Integer next = table_.back() * static_cast<unsigned long>(table_.size());
            table_.push_back(std::move(next));
        }
        return table_[n];
    }

private:
    std::shared_mutex mutex_;
    std::vector<Integer> table_{Integer(1)};
};

inline FactorialTable& factorial_table() {
    static FactorialTable table;
    return table;
}

} // namespace detail

/// n! from a process-wide table that grows on demand.
inline Integer factorial(long n) {
    if (n < 0) throw DomainError("factorial of negative integer " + std::to_string(n));
    return detail::factorial_table().get(static_cast<unsigned>(n));
}

/// Binomial coefficient; zero outside 0 <= k <= n.
inline Integer binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// (l+1)(l+2)...(l+count); the empty product is 1.
inline Integer rising_block(long l, long count) {
    Integer r(1);
    for (long j = 1; j <= count; ++j) r *= (l + j);
    return r;
}

} // namespace qdfrac

#endif
