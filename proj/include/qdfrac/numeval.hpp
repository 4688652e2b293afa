#ifndef QDFRAC_NUMEVAL_HPP
#define QDFRAC_NUMEVAL_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qdfrac/bigreal.hpp"
#include "qdfrac/convergents.hpp"
#include "qdfrac/errors.hpp"

namespace qdfrac::numeval {

enum class Method { Series, ContinuedFraction, Quadrature };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Series: return "series";
        case Method::ContinuedFraction: return "cf";
        case Method::Quadrature: return "quadrature";
    }
    return "?";
}

/// Result of one evaluation. est_error is an absolute error claim for value,
/// taken from the bound each method computes for itself.
struct EvalReport {
    BigReal x;
    BigReal value;
    Method method;
    long terms_or_depth;
    BigReal est_error;
};

constexpr long kMinPrecBits = 64;
constexpr long kGuardBits = 32;
constexpr long kMaxCfDepth = 1L << 16;

namespace detail {

inline void require_positive(const BigReal& x, const char* who) {
    if (!(x > 0L)) throw DomainError(std::string(who) + ": x must be > 0, got " + x.to_string(12));
}

inline void require_prec(long prec, const char* who) {
    if (prec < kMinPrecBits)
        throw DomainError(std::string(who) + ": precision must be >= " + std::to_string(kMinPrecBits) + " bits");
}

} // namespace detail

/// E1(x) = -log x - gamma + sum_{n>=1} (-1)^{n-1} x^n / (n n!).
/// The terms peak near e^x while E1(x) ~ e^{-x}/x, so the working precision
/// carries 2x/ln 2 extra bits to keep the result relatively accurate.
inline EvalReport e1_series(const BigReal& x, long prec) {
    detail::require_positive(x, "e1_series");
    detail::require_prec(prec, "e1_series");
    const double xd = x.to_double();
    const long wp = prec + kGuardBits + static_cast<long>(std::ceil(2.0 * xd / std::log(2.0))) +
                    static_cast<long>(std::ceil(std::log2(std::max(xd, 1.0))));
    const BigReal X = x.with_prec(wp);

    BigReal power(1L, wp);  // x^n / n!
    BigReal sum(wp);
    BigReal last(wp);
    long n = 0;
    const long max_terms = 16 * static_cast<long>(xd) + 4 * wp + 64;
    while (true) {
        ++n;
        power = power * X / n;
        BigReal term = power / n;
        if (n % 2 == 0) term = -term;
        sum += term;
        last = abs(term);
        if (static_cast<double>(n) > xd && last <= ldexp(abs(sum), -wp)) break;
        if (n > max_terms) throw NoConvergence("e1_series: term limit reached");
    }
    BigReal value = -log(X) - BigReal::euler_gamma(wp) + sum;
    BigReal err = last + ldexp(abs(value), -(prec + 1));
    return {x, value.with_prec(prec), Method::Series, n, err.with_prec(prec)};
}

/// The continued fraction
///   e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + 3/(1 + ...))))))
/// cut after `depth` partial denominators and evaluated backward from tail 0.
/// depth = n reproduces e^{-x} P_n(x)/Q_n(x).
inline BigReal e1_cf_truncated(const BigReal& x, long depth, long prec) {
    detail::require_positive(x, "e1_cf");
    if (depth < 1) throw DomainError("e1_cf: depth must be >= 1");
    const long wp = prec + kGuardBits;
    const BigReal X = x.with_prec(wp);
    BigReal tail(wp);
    for (long j = depth; j >= 2; --j) {
        const long a = j / 2;
        tail = (j % 2 == 1) ? BigReal(a, wp) / (X + tail) : BigReal(a, wp) / (tail + 1L);
    }
    return (exp(-X) / (X + tail)).with_prec(prec);
}

/// Continued fraction with automatic depth: doubles from `depth` until two
/// successive truncations agree to 2^{-prec+8} relative.
inline EvalReport e1_cf(const BigReal& x, long depth, long prec) {
    detail::require_positive(x, "e1_cf");
    detail::require_prec(prec, "e1_cf");
    long d = std::max(1L, depth);
    BigReal prev = e1_cf_truncated(x, d, prec + 16);
    while (true) {
        const long next = 2 * d;
        if (next > kMaxCfDepth) throw NoConvergence("e1_cf: depth cap reached at x = " + x.to_string(12));
        BigReal cur = e1_cf_truncated(x, next, prec + 16);
        BigReal diff = abs(cur - prev);
        if (diff <= ldexp(abs(cur), -(prec - 8))) {
            return {x, cur.with_prec(prec), Method::ContinuedFraction, next, diff.with_prec(prec)};
        }
        prev = std::move(cur);
        d = next;
    }
}

/// Upper limit T of the truncated integral int_1^T e^{-xy} dy/y and the
/// bound e^{-xT}/(xT) on the discarded tail. T is chosen so the bound stays
/// below 2^{-(prec+8)} e^{-x}/(x+1) < 2^{-prec} E1(x).
struct QuadratureCutoff {
    BigReal T;
    BigReal tail_bound;
    double t_span;  // x (T - 1), the length of the integration range in t
};

inline QuadratureCutoff quadrature_cutoff(const BigReal& x, long prec) {
    detail::require_positive(x, "quadrature_cutoff");
    const long wp = prec + kGuardBits;
    const double span = std::ceil(static_cast<double>(prec + 8) * std::log(2.0)) + 1.0;
    const BigReal X = x.with_prec(wp);
    const BigReal L(span, wp);
    BigReal T = 1L + L / X;
    BigReal bound = exp(-(X * T)) / (X * T);
    return {T, bound, span};
}

namespace detail {

struct PanelResult {
    BigReal value;
    BigReal error;
    long evaluations;
};

/// Tanh-sinh rule on [a, b], refined level by level until two levels agree
/// to 2^{-tol_bits} relative.
template <class Fn>
PanelResult tanh_sinh(const Fn& f, const BigReal& a, const BigReal& b, long wp, long tol_bits) {
    const BigReal half = (b - a) / 2L;
    const BigReal mid = (a + b) / 2L;
    const BigReal half_pi = BigReal::pi(wp) / 2L;

    // weights decay like exp(-pi sinh s); stop once below 2^{-wp-16}
    double s_max = 1.0;
    const double target = static_cast<double>(wp + 16) * std::log(2.0);
    while (M_PI * std::sinh(s_max) - std::log(2.0 * M_PI * std::cosh(s_max)) < target) s_max += 0.125;

    long evals = 0;
    // sum over nodes s = j h for j in the given stride pattern
    auto add_nodes = [&](double h, long start, long stride) {
        BigReal acc(wp);
        const long jmax = static_cast<long>(s_max / h) + 1;
        for (long j = start; j <= jmax; j += stride) {
            const BigReal s(static_cast<double>(j) * h, wp);
            const BigReal q = half_pi * sinh(s);
            const BigReal eq = exp(q);
            const BigReal delta = BigReal(2L, wp) / (eq * eq + 1L);  // 1 - tanh(q)
            const BigReal coshq = (eq + 1L / eq) / 2L;
            const BigReal w = half_pi * cosh(s) / (coshq * coshq);
            const BigReal off = half * delta;
            acc += w * (f(a + off) + f(b - off));
            evals += 2;
        }
        return acc;
    };

    double h = 1.0;
    BigReal sum = half_pi * f(mid) + add_nodes(h, 1, 1);
    ++evals;
    BigReal estimate = half * sum * BigReal(h, wp);
    BigReal diff(wp);
    for (int level = 1; level <= 14; ++level) {
        h /= 2.0;
        sum += add_nodes(h, 1, 2);
        BigReal next = half * sum * BigReal(h, wp);
        diff = abs(next - estimate);
        estimate = std::move(next);
        if (level >= 3 && diff <= ldexp(abs(estimate), -tol_bits)) return {estimate, diff, evals};
    }
    throw NoConvergence("tanh-sinh quadrature did not settle");
}

} // namespace detail

/// F(x) = e^x E1(x) = int_0^inf e^{-t}/(t+x) dt by panelled tanh-sinh
/// quadrature over [0, x(T-1)] with T from quadrature_cutoff.
inline EvalReport f_quadrature(const BigReal& x, long prec) {
    detail::require_positive(x, "f_quadrature");
    detail::require_prec(prec, "f_quadrature");
    const long wp = prec + kGuardBits;
    const BigReal X = x.with_prec(wp);
    const QuadratureCutoff cut = quadrature_cutoff(x, prec);
    const BigReal span(cut.t_span, wp);

    auto integrand = [&](const BigReal& t) { return exp(-t) / (t + X); };

    // panel edges 0, min(x, 1), then doubling up to the span
    std::vector<BigReal> edges{BigReal(wp)};
    BigReal edge = X < 1L ? X : BigReal(1L, wp);
    while (edge < span) {
        edges.push_back(edge);
        edge = edge * 2L;
    }
    edges.push_back(span);

    BigReal total(wp), err(wp);
    long evals = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto panel = detail::tanh_sinh(integrand, edges[i], edges[i + 1], wp, prec + 8);
        total += panel.value;
        err += panel.error;
        evals += panel.evaluations;
    }
    err += exp(X) * cut.tail_bound;
    return {x, total.with_prec(prec), Method::Quadrature, evals, err.with_prec(prec)};
}

/// E1(x) = int_1^inf e^{-xy} dy/y, via f_quadrature.
inline EvalReport e1_quadrature(const BigReal& x, long prec) {
    EvalReport r = f_quadrature(x, prec);
    const BigReal scale = exp(-x.with_prec(prec + kGuardBits));
    r.value = (r.value * scale).with_prec(prec);
    r.est_error = (r.est_error * scale).with_prec(prec);
    return r;
}

/// Series below `crossover`, continued fraction at and above it.
struct Switchover {
    double crossover = 4.0;
};

inline EvalReport e1(const BigReal& x, long prec, Switchover cfg = {}) {
    if (x.to_double() < cfg.crossover) return e1_series(x, prec);
    return e1_cf(x, 8, prec);
}

inline EvalReport e1(const BigReal& x, long prec, Method method) {
    switch (method) {
        case Method::Series: return e1_series(x, prec);
        case Method::ContinuedFraction: return e1_cf(x, 8, prec);
        case Method::Quadrature: return e1_quadrature(x, prec);
    }
    throw DomainError("unknown method");
}

/// e^{-x} P_n(x)/Q_n(x) with the convergent evaluated exactly at rational x.
inline BigReal e1_convergent(const Rational& x, long n, long prec) {
    if (x <= 0) throw DomainError("e1_convergent: x must be > 0");
    const auto [p, q] = convergent_pair(n);
    const Rational ratio = p(x) / q(x);
    const long wp = prec + kGuardBits;
    return (BigReal(ratio, wp) * exp(-BigReal(x, wp))).with_prec(prec);
}

/// Partial sum sum_{k=1}^{n} (-1)^{k-1} (k-1)! x^{-k} of the asymptotic series
/// of F and the remainder envelope n! x^{-(n+1)}.
inline std::pair<BigReal, BigReal> asymptotic_partial(const BigReal& x, long n, long prec) {
    detail::require_positive(x, "asymptotic_partial");
    if (n < 1) throw DomainError("asymptotic_partial: n must be >= 1");
    const long wp = prec + kGuardBits;
    const BigReal X = x.with_prec(wp);
    const BigReal inv = 1L / X;
    BigReal term = inv;  // (k-1)! x^{-k}
    BigReal sum(wp);
    for (long k = 1; k <= n; ++k) {
        if (k > 1) term = term * (k - 1) * inv;
        sum += (k % 2 == 1) ? term : -term;
    }
    const BigReal bound = term * n * inv;  // n! x^{-(n+1)}
    return {sum.with_prec(prec), bound.with_prec(prec)};
}

/// One step of the expansion at infinity.
struct FmEntry {
    long index;        // m in F_m
    BigReal value;     // F_m(x)
    BigReal ratio;     // F_{2j-1}/x or j F_{2j}
    long bits_left;    // significant bits surviving the cancellations so far
};

/// Working precision f_iteration uses for (x, m_max): enough to absorb the
/// ~log2(x) bits each of the 2 m_max subtractions cancels.
inline long f_iteration_precision(const BigReal& x, long m_max, long prec) {
    const double lx = std::max(1.0, std::ceil(std::log2(std::max(x.to_double(), 2.0))));
    const long needed = 64 + 2 * m_max * (static_cast<long>(lx) + 8);
    return std::max(prec, needed);
}

/// F_1 = 1/F, F_{2j} = 1/(F_{2j-1} - x), F_{2j+1} = 1/(F_{2j} - 1/j), for
/// F_1 .. F_{2 m_max}, with F = e^x E1(x) from quadrature.
inline std::vector<FmEntry> f_iteration(const BigReal& x, long m_max, long prec) {
    detail::require_positive(x, "f_iteration");
    detail::require_prec(prec, "f_iteration");
    if (m_max < 1) throw DomainError("f_iteration: m_max must be >= 1");
    const long wp = f_iteration_precision(x, m_max, prec);
    const BigReal X = x.with_prec(wp);
    const BigReal F = f_quadrature(x, wp).value;

    std::vector<FmEntry> out;
    long bits = wp - 8;
    BigReal cur = 1L / F;
    for (long idx = 1; idx <= 2 * m_max; ++idx) {
        const long j = (idx + 1) / 2;
        BigReal ratio = (idx % 2 == 1) ? cur / X : cur * j;
        out.push_back({idx, cur.with_prec(prec), ratio.with_prec(prec), bits});
        if (idx == 2 * m_max) break;
        const BigReal main = (idx % 2 == 1) ? X : BigReal(make_rational(1, j), wp);
        const BigReal diff = cur - main;
        if (diff.is_zero()) throw PrecisionExhausted("F_" + std::to_string(idx) + " cancelled completely");
        bits -= std::max(0L, cur.exponent() - diff.exponent());
        if (bits < 16)
            throw PrecisionExhausted("F_" + std::to_string(idx + 1) + ": only " + std::to_string(bits) +
                                     " significant bits left; raise the precision");
        cur = 1L / diff;
    }
    return out;
}

} // namespace qdfrac::numeval

#endif
