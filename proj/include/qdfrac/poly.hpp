#ifndef QDFRAC_POLY_HPP
#define QDFRAC_POLY_HPP

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "qdfrac/errors.hpp"
#include "qdfrac/rational.hpp"

namespace qdfrac {

/// Dense polynomial over Q, ascending degree. The highest stored coefficient
/// is never zero; the zero polynomial has no coefficients.
class RatPoly {
public:
    RatPoly() = default;
    RatPoly(std::initializer_list<Rational> c) : c_(c) { trim(); }
    explicit RatPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    RatPoly(const Rational& constant) : c_{constant} { trim(); }  // NOLINT: implicit lift

    static RatPoly x() { return RatPoly{Rational(0), Rational(1)}; }
    static RatPoly monomial(const Rational& c, std::size_t deg) {
        std::vector<Rational> v(deg + 1);
        v[deg] = c;
        return RatPoly(std::move(v));
    }

    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    Rational coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c_.size())) return Rational(0);
        return c_[static_cast<std::size_t>(i)];
    }

    Rational operator()(const Rational& at) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    RatPoly& operator+=(const RatPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    RatPoly& operator-=(const RatPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    RatPoly& operator*=(const Rational& s) {
        for (auto& c : c_) c *= s;
        trim();
        return *this;
    }

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator-(RatPoly a) { return a *= Rational(-1); }
    friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
    friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return RatPoly(std::move(r));
    }

    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    /// Space-separated `coeff*x^deg` tokens in ascending degree; "0" when zero.
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << ' ';
            os << qdfrac::to_string(c_[i]) << "*x^" << i;
            first = false;
        }
        return os.str();
    }

    /// Inverse of to_string.
    static RatPoly parse(const std::string& text) {
        std::istringstream is(text);
        std::string tok;
        std::vector<Rational> c;
        while (is >> tok) {
            if (tok == "0") continue;
            const auto star = tok.find("*x^");
            if (star == std::string::npos) throw DomainError("bad polynomial token '" + tok + "'");
            Rational v(tok.substr(0, star), 10);
            v.canonicalize();
            const auto deg = std::stoul(tok.substr(star + 3));
            if (c.size() <= deg) c.resize(deg + 1);
            c[deg] += v;
        }
        return RatPoly(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Finite Laurent series sum_{e} c_e x^e with exponents starting at lo().
/// Trimmed at both ends; the zero element has lo() == 0 and no coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long lo, std::vector<Rational> c) : lo_(lo), c_(std::move(c)) { trim(); }
    LaurentPoly(const RatPoly& p) : lo_(0), c_(p.coeffs()) { trim(); }  // NOLINT: implicit lift

    static LaurentPoly monomial(const Rational& c, long exponent) {
        return LaurentPoly(exponent, {c});
    }

    long lo() const noexcept { return lo_; }
    /// Highest exponent present; meaningless for the zero element.
    long hi() const noexcept { return lo_ + static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    Rational coeff(long e) const {
        const long i = e - lo_;
        if (i < 0 || i >= static_cast<long>(c_.size())) return Rational(0);
        return c_[static_cast<std::size_t>(i)];
    }

    /// Component with exponents >= 0, i.e. the class modulo (1/x)Q[1/x].
    RatPoly polynomial_part() const {
        if (is_zero() || hi() < 0) return {};
        std::vector<Rational> r(static_cast<std::size_t>(hi() + 1));
        for (long e = std::max(0L, lo_); e <= hi(); ++e) r[static_cast<std::size_t>(e)] = coeff(e);
        return RatPoly(std::move(r));
    }

    /// Terms with exponent strictly below `bound` removed.
    LaurentPoly truncated_below(long bound) const {
        if (is_zero() || hi() < bound) return {};
        const long start = std::max(bound, lo_);
        std::vector<Rational> r(c_.begin() + (start - lo_), c_.end());
        return LaurentPoly(start, std::move(r));
    }

    LaurentPoly shifted(long k) const {
        LaurentPoly r = *this;
        if (!r.is_zero()) r.lo_ += k;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        return combine(a, b, Rational(1));
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        return combine(a, b, Rational(-1));
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return LaurentPoly(a.lo_ + b.lo_, std::move(r));
    }
    friend LaurentPoly operator*(const Rational& s, LaurentPoly a) {
        for (auto& c : a.c_) c *= s;
        a.trim();
        return a;
    }

    bool operator==(const LaurentPoly& o) const { return lo_ == o.lo_ && c_ == o.c_; }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << ' ';
            os << qdfrac::to_string(c_[i]) << "*x^" << (lo_ + static_cast<long>(i));
            first = false;
        }
        return os.str();
    }

private:
    static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, const Rational& sb) {
        if (a.is_zero()) return sb * b;
        if (b.is_zero()) return a;
        const long lo = std::min(a.lo_, b.lo_);
        const long hi = std::max(a.hi(), b.hi());
        std::vector<Rational> r(static_cast<std::size_t>(hi - lo + 1));
        for (long e = a.lo_; e <= a.hi(); ++e) r[static_cast<std::size_t>(e - lo)] += a.coeff(e);
        for (long e = b.lo_; e <= b.hi(); ++e) r[static_cast<std::size_t>(e - lo)] += sb * b.coeff(e);
        return LaurentPoly(lo, std::move(r));
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            lo_ = 0;
            return;
        }
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            lo_ += static_cast<long>(lead);
        }
    }

    long lo_ = 0;
    std::vector<Rational> c_;
};

} // namespace qdfrac

#endif
