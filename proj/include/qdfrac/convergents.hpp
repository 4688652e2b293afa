#ifndef QDFRAC_CONVERGENTS_HPP
#define QDFRAC_CONVERGENTS_HPP

#include <string>
#include <utility>
#include <vector>

#include "qdfrac/errors.hpp"
#include "qdfrac/hankelmat.hpp"
#include "qdfrac/poly.hpp"
#include "qdfrac/rational.hpp"

namespace qdfrac {

/// A failed exact identity: which one, at which indices, both sides.
struct IdentityFailure {
    std::string identity;
    long k;
    long n;
    std::string lhs;
    std::string rhs;
};

enum class Parity { Odd, Even };

/// m_n of the unit-numerator fraction 1/(m_1 + 1/(m_2 + ...)):
/// x for odd n, 2/n for even n.
inline RatPoly partial_denominator(long n) {
    if (n < 1) throw DomainError("partial_denominator: n must be >= 1");
    if (n % 2 == 1) return RatPoly::x();
    return RatPoly(make_rational(2, n));
}

/// (P_j, Q_j) for j = 0..n from P_j = m_j P_{j-1} + P_{j-2} (same for Q),
/// P_{-1} = 1, Q_{-1} = 0, P_0 = 0, Q_0 = 1.
inline std::vector<std::pair<RatPoly, RatPoly>> convergents_upto(long n) {
    if (n < 0) throw DomainError("convergents_upto: n must be >= 0");
    std::vector<std::pair<RatPoly, RatPoly>> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    RatPoly p_prev(Rational(1)), q_prev;
    RatPoly p_cur, q_cur(Rational(1));
    out.emplace_back(p_cur, q_cur);
    for (long j = 1; j <= n; ++j) {
        const RatPoly m = partial_denominator(j);
        RatPoly p_next = m * p_cur + p_prev;
        RatPoly q_next = m * q_cur + q_prev;
        p_prev = std::move(p_cur);
        q_prev = std::move(q_cur);
        p_cur = std::move(p_next);
        q_cur = std::move(q_next);
        out.emplace_back(p_cur, q_cur);
    }
    return out;
}

inline std::pair<RatPoly, RatPoly> convergent_pair(long n) {
    return convergents_upto(n).back();
}

/// P_{2n-1} (odd) or P_{2n} (even) from the closed double sums
///   sum_{k=0}^{n-1} sum_{l=0}^{n-k-1} C(n, l+k+1) / block (-1)^l x^k
/// where block = (l+k)...(l+1) for the odd index and (l+k+1)...(l+1) for the even one.
inline RatPoly closed_form_P(long n, Parity parity) {
    if (n < 1) throw DomainError("closed_form_P: n must be >= 1");
    std::vector<Rational> c(static_cast<std::size_t>(n));
    const long extra = parity == Parity::Odd ? 0 : 1;
    for (long k = 0; k <= n - 1; ++k) {
        Rational s(0);
        for (long l = 0; l <= n - k - 1; ++l) {
            Rational term(binomial(n, l + k + 1), rising_block(l, k + extra));
            term.canonicalize();
            if (l % 2 == 1) term = -term;
            s += term;
        }
        c[static_cast<std::size_t>(k)] = s;
    }
    return RatPoly(std::move(c));
}

/// Q_{2n-1} = sum_{k=0}^{n-1} C(n, k+1)/k! x^{k+1};  Q_{2n} = sum_{k=0}^{n} C(n, k)/k! x^k.
inline RatPoly closed_form_Q(long n, Parity parity) {
    if (n < 1) throw DomainError("closed_form_Q: n must be >= 1");
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) {
        if (parity == Parity::Odd) {
            if (k == n) break;
            c[static_cast<std::size_t>(k) + 1] = Rational(binomial(n, k + 1), factorial(k));
        } else {
            c[static_cast<std::size_t>(k)] = Rational(binomial(n, k), factorial(k));
        }
    }
    for (auto& v : c) v.canonicalize();
    return RatPoly(std::move(c));
}

/// (r_j, s_j) for j = 0..k from
///   r_j = (2j-1+x)/j r_{j-1} - (j-1)/j r_{j-2},  (r_0, r_1) = (0, -1),
/// and the same rule for s with (s_0, s_1) = (1, 1+x).
inline std::vector<std::pair<RatPoly, RatPoly>> rs_upto(long k) {
    if (k < 0) throw DomainError("rs_polys: k must be >= 0");
    std::vector<std::pair<RatPoly, RatPoly>> out;
    out.emplace_back(RatPoly(), RatPoly(Rational(1)));
    if (k >= 1) out.emplace_back(RatPoly(Rational(-1)), RatPoly{Rational(1), Rational(1)});
    for (long j = 2; j <= k; ++j) {
        const RatPoly a = RatPoly{Rational(2 * j - 1), Rational(1)} * make_rational(1, j);
        const Rational b = make_rational(j - 1, j);
        const auto& [r1, s1] = out[static_cast<std::size_t>(j - 1)];
        const auto& [r2, s2] = out[static_cast<std::size_t>(j - 2)];
        RatPoly r = a * r1 - b * r2;
        RatPoly s = a * s1 - b * s2;
        out.emplace_back(std::move(r), std::move(s));
    }
    return out;
}

inline std::pair<RatPoly, RatPoly> rs_polys(long k) {
    return rs_upto(k).back();
}

/// S_l^(k) = C(k, l)/l!, checked against the coefficient of x^l in s_k.
inline Rational s_coeff(long k, long l) {
    if (k < 0 || l < 0 || l > k) throw IndexError("s_coeff: need 0 <= l <= k");
    Rational v(binomial(k, l), factorial(l));
    v.canonicalize();
    const Rational actual = rs_polys(k).second.coeff(l);
    if (v != actual)
        throw IdentityViolation("S_" + std::to_string(l) + "^(" + std::to_string(k) + ") = " +
                                to_string(actual) + ", closed form " + to_string(v));
    return v;
}

/// R_k^(n) = -sum_{l=1}^{n-k} C(n, l+k)/(l+k)! (-1)^{l-1} (l-1)!, checked
/// against the coefficient of x^k in r_n.
inline Rational r_coeff(long n, long k) {
    if (n < 1 || k < 0 || k > n - 1) throw IndexError("r_coeff: need 0 <= k <= n-1");
    Rational v(0);
    for (long l = 1; l <= n - k; ++l) {
        Rational term(binomial(n, l + k) * factorial(l - 1), factorial(l + k));
        term.canonicalize();
        if ((l - 1) % 2 == 1) term = -term;
        v += term;
    }
    v = -v;
    const Rational actual = rs_polys(n).first.coeff(k);
    if (v != actual)
        throw IdentityViolation("R_" + std::to_string(k) + "^(" + std::to_string(n) + ") = " +
                                to_string(actual) + ", closed form " + to_string(v));
    return v;
}

/// sum_{l=1}^{terms} (-1)^{l-1} (l-1)! x^{-l}: the truncated asymptotic series of e^x E1(x).
inline LaurentPoly asymptotic_series(long terms) {
    if (terms < 1) return {};
    std::vector<Rational> c(static_cast<std::size_t>(terms));
    // c[i] holds the coefficient of x^{-terms + i}
    for (long l = 1; l <= terms; ++l)
        c[static_cast<std::size_t>(terms - l)] = Rational(neg_one_pow(l - 1) * factorial(l - 1));
    return LaurentPoly(-terms, std::move(c));
}

/// x^{k+1} r_k + x^{k+1} s_k * (asymptotic series, 2k+1 terms).
/// Its polynomial part is the constant k!.
inline LaurentPoly denominator_congruence(long k) {
    if (k < 1) throw DomainError("denominator_congruence: k must be >= 1");
    const auto [r, s] = rs_polys(k);
    const LaurentPoly xr = LaurentPoly(r).shifted(k + 1);
    const LaurentPoly xs = LaurentPoly(s).shifted(k + 1);
    return xr + xs * asymptotic_series(2 * k + 1);
}

/// -k x^k (r_k - r_{k-1}) - k x^k (s_k - s_{k-1}) * (asymptotic series, 2k terms).
/// Its polynomial part is the constant k!.
inline LaurentPoly numerator_congruence(long k) {
    if (k < 1) throw DomainError("numerator_congruence: k must be >= 1");
    const auto rs = rs_upto(k);
    const auto& [rk, sk] = rs[static_cast<std::size_t>(k)];
    const auto& [rk1, sk1] = rs[static_cast<std::size_t>(k - 1)];
    const Rational mk(-k);
    const LaurentPoly a = mk * LaurentPoly(rk - rk1).shifted(k);
    const LaurentPoly b = mk * LaurentPoly(sk - sk1).shifted(k);
    return a + b * asymptotic_series(2 * k);
}

/// -x^{k+1} {(k+x) r_k - k r_{k-1} + ((k+x) s_k - k s_{k-1}) * (series, 2k+2 terms)}.
/// Its polynomial part is the constant (k+1)!.
inline LaurentPoly even_step_congruence(long k) {
    if (k < 1) throw DomainError("even_step_congruence: k must be >= 1");
    const auto rs = rs_upto(k);
    const auto& [rk, sk] = rs[static_cast<std::size_t>(k)];
    const auto& [rk1, sk1] = rs[static_cast<std::size_t>(k - 1)];
    const RatPoly kx{Rational(k), Rational(1)};
    const RatPoly rpart = kx * rk - Rational(k) * rk1;
    const RatPoly spart = kx * sk - Rational(k) * sk1;
    const LaurentPoly inner = LaurentPoly(rpart) + LaurentPoly(spart) * asymptotic_series(2 * k + 2);
    return Rational(-1) * inner.shifted(k + 1);
}

/// Exact checks, at order k, of the identities satisfied by S_l = S_l^(k):
///   s-moment-vanishing  sum_l S_l (-1)^{l+k-n} (l+k-n)! = 0,  n = 1..k
///   s-moment-top        sum_l S_l (-1)^{l+k} (l+k)! = k!
///   r-s-coupling        R_{n-k-1}^(k) + sum_{l=1}^{2k+1-n} S_{l+n-k-1} (-1)^{l-1} (l-1)! = 0,  n = k+1..2k
///   s-cramer            S_l = (-1)^{k+l} k! det A^(k)_{k+1,l+1} / det A^(k)
/// and the binomial sums
///   binomial-sum-a  sum_{l<k} C(k-1,l) (-1)^{l+k} (l+k)...(l+1) = -k k!
///   binomial-sum-b  sum_{l<k} C(k-1,l) (-1)^{l+k+1} (l+k+1)...(l+1) = (k+1) k (k+1)!/2
///   binomial-sum-c  sum_{l<k-1} C(k-2,l) (-1)^{l+k} (l+k)...(l+1) = k (k-1) k!/2
inline std::vector<IdentityFailure> check_S_identities(long k) {
    if (k < 2) throw DomainError("check_S_identities: k must be >= 2");
    std::vector<IdentityFailure> fails;
    auto expect = [&](const char* id, long n, const Rational& lhs, const Rational& rhs) {
        if (lhs != rhs) fails.push_back({id, k, n, to_string(lhs), to_string(rhs)});
    };

    std::vector<Rational> S(static_cast<std::size_t>(k) + 1);
    for (long l = 0; l <= k; ++l) S[static_cast<std::size_t>(l)] = s_coeff(k, l);
    const RatPoly r = rs_polys(k).first;

    for (long n = 1; n <= k; ++n) {
        Rational sum(0);
        for (long l = 0; l <= k; ++l)
            sum += S[static_cast<std::size_t>(l)] * Rational(neg_one_pow(l + k - n) * factorial(l + k - n));
        expect("s-moment-vanishing", n, sum, Rational(0));
    }
    {
        Rational sum(0);
        for (long l = 0; l <= k; ++l)
            sum += S[static_cast<std::size_t>(l)] * Rational(neg_one_pow(l + k) * factorial(l + k));
        expect("s-moment-top", 0, sum, Rational(factorial(k)));
    }
    for (long n = k + 1; n <= 2 * k; ++n) {
        Rational sum = r.coeff(n - k - 1);
        for (long l = 1; l <= 2 * k + 1 - n; ++l)
            sum += S[static_cast<std::size_t>(l + n - k - 1)] * Rational(neg_one_pow(l - 1) * factorial(l - 1));
        expect("r-s-coupling", n, sum, Rational(0));
    }
    {
        const Rational det = hankel::det_A(static_cast<int>(k) + 1);
        for (long l = 0; l <= k; ++l) {
            const Rational minor = hankel::minor_A(static_cast<int>(k) + 1, static_cast<int>(k) + 1,
                                                   static_cast<int>(l) + 1);
            const Rational cramer = Rational(neg_one_pow(k + l) * factorial(k)) * minor / det;
            expect("s-cramer", l, cramer, S[static_cast<std::size_t>(l)]);
        }
    }
    {
        Integer a(0), b(0), c(0);
        for (long l = 0; l <= k - 1; ++l) {
            a += binomial(k - 1, l) * neg_one_pow(l + k) * rising_block(l, k);
            b += binomial(k - 1, l) * neg_one_pow(l + k + 1) * rising_block(l, k + 1);
        }
        for (long l = 0; l <= k - 2; ++l) c += binomial(k - 2, l) * neg_one_pow(l + k) * rising_block(l, k);
        const Integer kf = factorial(k);
        expect("binomial-sum-a", 0, Rational(a), Rational(-k * kf));
        expect("binomial-sum-b", 0, Rational(b), Rational((k + 1) * k * factorial(k + 1) / 2));
        expect("binomial-sum-c", 0, Rational(c), Rational(k * (k - 1) * kf / 2));
    }
    return fails;
}

/// Q_{2n} = s_n, Q_{2n+1} = (x+n) s_n - n s_{n-1}, P_{2n} = -r_n,
/// P_{2n+1} = (n+1)(r_n - r_{n+1}).
inline std::vector<IdentityFailure> bridge_Q_s(long n) {
    if (n < 1) throw DomainError("bridge_Q_s: n must be >= 1");
    const auto conv = convergents_upto(2 * n + 1);
    const auto rs = rs_upto(n + 1);
    const auto& P2n = conv[static_cast<std::size_t>(2 * n)].first;
    const auto& Q2n = conv[static_cast<std::size_t>(2 * n)].second;
    const auto& P2n1 = conv[static_cast<std::size_t>(2 * n + 1)].first;
    const auto& Q2n1 = conv[static_cast<std::size_t>(2 * n + 1)].second;
    const auto& [rn, sn] = rs[static_cast<std::size_t>(n)];
    const auto& rn1 = rs[static_cast<std::size_t>(n + 1)].first;
    const auto& sprev = rs[static_cast<std::size_t>(n - 1)].second;

    std::vector<IdentityFailure> fails;
    auto expect = [&](const char* id, const RatPoly& lhs, const RatPoly& rhs) {
        if (!(lhs == rhs)) fails.push_back({id, 0, n, lhs.to_string(), rhs.to_string()});
    };
    expect("Q_2n = s_n", Q2n, sn);
    expect("Q_2n+1 = (x+n)s_n - n s_n-1", Q2n1, RatPoly{Rational(n), Rational(1)} * sn - Rational(n) * sprev);
    expect("P_2n = -r_n", P2n, -rn);
    expect("P_2n+1 = (n+1)(r_n - r_n+1)", P2n1, Rational(n + 1) * (rn - rn1));
    return fails;
}

/// Coefficients of u^0 .. u^order (u = 1/x) in the expansion of P/Q at infinity.
/// Requires deg P <= deg Q and Q nonzero.
inline std::vector<Rational> expansion_at_infinity(const RatPoly& p, const RatPoly& q, long order) {
    if (q.is_zero()) throw DomainError("expansion_at_infinity: zero denominator");
    const long dq = q.degree();
    if (p.degree() > dq) throw DomainError("expansion_at_infinity: improper fraction");
    // P/Q = (sum p_i u^{dq-i}) / (sum q_i u^{dq-i})
    auto num = [&](long j) { return p.coeff(dq - j); };
    auto den = [&](long j) { return q.coeff(dq - j); };
    const Rational lead = den(0);
    std::vector<Rational> out(static_cast<std::size_t>(order) + 1);
    for (long j = 0; j <= order; ++j) {
        Rational acc = num(j);
        for (long i = 1; i <= std::min(j, dq); ++i) acc -= den(i) * out[static_cast<std::size_t>(j - i)];
        out[static_cast<std::size_t>(j)] = acc / lead;
    }
    return out;
}

/// Number of leading coefficients (orders u^1, u^2, ...) in which P_n/Q_n
/// agrees with sum_{j>=1} (-1)^{j-1} (j-1)! u^j; the u^0 term must vanish.
inline long contact_order(long n) {
    const auto [p, q] = convergent_pair(n);
    const long probe = n + 4;
    const auto e = expansion_at_infinity(p, q, probe);
    if (e[0] != 0) return -1;
    long j = 1;
    while (j <= probe && e[static_cast<std::size_t>(j)] == Rational(neg_one_pow(j - 1) * factorial(j - 1))) ++j;
    return j - 1;
}

} // namespace qdfrac

#endif
