#ifndef QDFRAC_BIGREAL_HPP
#define QDFRAC_BIGREAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "qdfrac/errors.hpp"
#include "qdfrac/rational.hpp"

namespace qdfrac {

/// Binary floating-point value with its own precision in bits (MPFR, round to
/// nearest). Binary operations produce a result at the larger of the two
/// operand precisions.
class BigReal {
public:
    explicit BigReal(long prec = 128) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    BigReal(double d, long prec) : BigReal(prec) { mpfr_set_d(v_, d, MPFR_RNDN); }
    BigReal(long n, long prec) : BigReal(prec) { mpfr_set_si(v_, n, MPFR_RNDN); }
    BigReal(int n, long prec) : BigReal(static_cast<long>(n), prec) {}
    BigReal(const Integer& z, long prec) : BigReal(prec) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    BigReal(const Rational& q, long prec) : BigReal(prec) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

    /// Decimal ("1.25", "3e-5") or rational ("7/3") text.
    static BigReal parse(const std::string& text, long prec) {
        if (text.find('/') != std::string::npos) {
            Rational q;
            if (q.set_str(text, 10) != 0) throw DomainError("cannot parse number '" + text + "'");
            if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
            q.canonicalize();
            return BigReal(q, prec);
        }
        if (text.empty()) throw DomainError("empty number");
        BigReal r(prec);
        char* end = nullptr;
        mpfr_strtofr(r.v_, text.c_str(), &end, 10, MPFR_RNDN);
        if (end == text.c_str() || *end != '\0') throw DomainError("cannot parse number '" + text + "'");
        return r;
    }

    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    long prec() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }

    /// Copy rounded to a different precision.
    BigReal with_prec(long prec) const {
        BigReal r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() noexcept { return v_; }
    mpfr_srcptr raw() const noexcept { return v_; }

    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
    int sign() const noexcept { return mpfr_sgn(v_); }
    /// e such that |v| lies in [2^{e-1}, 2^e); meaningless for zero.
    long exponent() const noexcept { return static_cast<long>(mpfr_get_exp(v_)); }
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Scientific notation with `digits` significant digits; by default the
    /// largest count that survives a decimal round trip at this precision.
    std::string to_string(int digits = 0) const {
        if (digits <= 0) digits = decimal_digits(prec());
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    static int decimal_digits(long prec) {
        return std::max(1, static_cast<int>(std::floor(static_cast<double>(prec - 1) * 0.30102999566398120)));
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_add); }
    friend BigReal operator-(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_sub); }
    friend BigReal operator*(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_mul); }
    friend BigReal operator/(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_div); }
    friend BigReal operator-(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, long b) { return scalar(a, b, mpfr_add_si); }
    friend BigReal operator-(const BigReal& a, long b) { return scalar(a, b, mpfr_sub_si); }
    friend BigReal operator*(const BigReal& a, long b) { return scalar(a, b, mpfr_mul_si); }
    friend BigReal operator/(const BigReal& a, long b) { return scalar(a, b, mpfr_div_si); }
    friend BigReal operator*(long b, const BigReal& a) { return scalar(a, b, mpfr_mul_si); }
    friend BigReal operator+(long b, const BigReal& a) { return scalar(a, b, mpfr_add_si); }
    friend BigReal operator-(long a, const BigReal& b) {
        BigReal r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(long a, const BigReal& b) {
        BigReal r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
    BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
    BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
    BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

    friend int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigReal& a, const BigReal& b) { return compare(a, b) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return compare(a, b) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }

    friend BigReal abs(const BigReal& a) { return unary(a, mpfr_abs); }
    friend BigReal exp(const BigReal& a) { return unary(a, mpfr_exp); }
    friend BigReal log(const BigReal& a) { return unary(a, mpfr_log); }
    friend BigReal sqrt(const BigReal& a) { return unary(a, mpfr_sqrt); }
    friend BigReal sinh(const BigReal& a) { return unary(a, mpfr_sinh); }
    friend BigReal cosh(const BigReal& a) { return unary(a, mpfr_cosh); }

    /// a * 2^e, exact.
    friend BigReal ldexp(const BigReal& a, long e) {
        BigReal r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }

    static BigReal pi(long prec) {
        BigReal r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigReal euler_gamma(long prec) {
        BigReal r(prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }
    /// 2^e at the given precision.
    static BigReal pow2(long e, long prec) {
        BigReal r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigReal& a) { return os << a.to_string(); }

private:
    static mpfr_prec_t clamp(long prec) {
        return static_cast<mpfr_prec_t>(std::clamp<long>(prec, MPFR_PREC_MIN, MPFR_PREC_MAX));
    }
    template <class Fn>
    static BigReal binary(const BigReal& a, const BigReal& b, Fn fn) {
        BigReal r(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    template <class Fn>
    static BigReal scalar(const BigReal& a, long b, Fn fn) {
        BigReal r(a.prec());
        fn(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    template <class Fn>
    static BigReal unary(const BigReal& a, Fn fn) {
        BigReal r(a.prec());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

/// |a - b| <= 2^{-bits} * max(|a|, |b|).
inline bool agrees(const BigReal& a, const BigReal& b, long bits) {
    const BigReal scale = std::max(abs(a), abs(b));
    if (scale.is_zero()) return true;
    return abs(a - b) <= ldexp(scale, -bits);
}

/// |a - b| / max(|a|, |b|), zero when both vanish.
inline BigReal relative_difference(const BigReal& a, const BigReal& b) {
    const BigReal scale = std::max(abs(a), abs(b));
    if (scale.is_zero()) return BigReal(std::max(a.prec(), b.prec()));
    return abs(a - b) / scale;
}

} // namespace qdfrac

#endif
