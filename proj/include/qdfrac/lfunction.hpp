#ifndef QDFRAC_LFUNCTION_HPP
#define QDFRAC_LFUNCTION_HPP

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qdfrac/bigreal.hpp"
#include "qdfrac/errors.hpp"
#include "qdfrac/numeval.hpp"
#include "qdfrac/rational.hpp"

namespace qdfrac::lfunc {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q with its conductor and
/// root number supplied by the caller.
struct CurveConfig {
    std::string label;
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    long conductor = 1;
    int eps = 1;
    Integer discriminant;
};

struct BInvariants {
    Integer b2, b4, b6, b8;
};

inline BInvariants b_invariants(long a1, long a2, long a3, long a4, long a6) {
    const Integer A1(a1), A2(a2), A3(a3), A4(a4), A6(a6);
    BInvariants b;
    b.b2 = A1 * A1 + 4 * A2;
    b.b4 = 2 * A4 + A1 * A3;
    b.b6 = A3 * A3 + 4 * A6;
    b.b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    return b;
}

inline Integer discriminant(long a1, long a2, long a3, long a4, long a6) {
    const BInvariants b = b_invariants(a1, a2, a3, a4, a6);
    return -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 + 9 * b.b2 * b.b4 * b.b6;
}

inline CurveConfig make_curve(std::string label, long a1, long a2, long a3, long a4, long a6,
                              long conductor, int eps) {
    if (conductor < 1) throw DomainError("conductor must be positive");
    if (eps != 1 && eps != -1) throw DomainError("root number must be +1 or -1");
    CurveConfig c{std::move(label), a1, a2, a3, a4, a6, conductor, eps, discriminant(a1, a2, a3, a4, a6)};
    if (c.discriminant == 0) throw SingularCurve("curve '" + c.label + "' has zero discriminant");
    return c;
}

/// Parses `key = value` lines (keys label, a1, a2, a3, a4, a6, N, eps; `#` starts a comment).
inline CurveConfig parse_curve(std::istream& in) {
    static const char* const keys[] = {"label", "a1", "a2", "a3", "a4", "a6", "N", "eps"};
    std::map<std::string, std::pair<std::string, int>> seen;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "", "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys))
            throw ParseError(lineno, key, "unknown key");
        if (value.empty()) throw ParseError(lineno, key, "missing value");
        if (!seen.emplace(key, std::make_pair(value, lineno)).second)
            throw ParseError(lineno, key, "duplicate key");
    }
    auto integer = [&](const char* key) -> long {
        auto it = seen.find(key);
        if (it == seen.end()) throw ParseError(lineno, key, "required key missing");
        const std::string& text = it->second.first;
        long v = 0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
            throw ParseError(it->second.second, key, "not a decimal integer: '" + text + "'");
        return v;
    };
    const long a1 = integer("a1"), a2 = integer("a2"), a3 = integer("a3");
    const long a4 = integer("a4"), a6 = integer("a6");
    const long N = integer("N");
    const long eps = integer("eps");
    if (N < 1) throw ParseError(seen["N"].second, "N", "conductor must be positive");
    if (eps != 1 && eps != -1) throw ParseError(seen["eps"].second, "eps", "must be +1 or -1");
    const std::string label = seen.count("label") ? seen["label"].first : std::string("unnamed");
    return make_curve(label, a1, a2, a3, a4, a6, N, static_cast<int>(eps));
}

inline CurveConfig load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "", "cannot open curve file '" + path + "'");
    return parse_curve(in);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

constexpr long kDefaultPrimeCap = 100000;

namespace detail {

inline long mod(const Integer& z, long p) {
    return static_cast<long>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p)));
}

inline long mod(long v, long p) {
    const long r = v % p;
    return r < 0 ? r + p : r;
}

struct AffineCount {
    long points = 0;
    long singular = 0;
};

/// Affine points of the reduction mod p and how many of them are singular.
inline AffineCount count_affine(const CurveConfig& c, long p) {
    AffineCount out;
    if (p == 2) {
        for (long x = 0; x < 2; ++x) {
            for (long y = 0; y < 2; ++y) {
                const long f = y * y + c.a1 * x * y + c.a3 * y - x * x * x - c.a2 * x * x - c.a4 * x - c.a6;
                if (mod(f, 2) != 0) continue;
                ++out.points;
                const long fx = c.a1 * y - 3 * x * x - 2 * c.a2 * x - c.a4;
                const long fy = 2 * y + c.a1 * x + c.a3;
                if (mod(fx, 2) == 0 && mod(fy, 2) == 0) ++out.singular;
            }
        }
        return out;
    }
    // p odd: (2y + a1 x + a3)^2 = g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6
    const BInvariants b = b_invariants(c.a1, c.a2, c.a3, c.a4, c.a6);
    const long b2 = mod(b.b2, p), b4 = mod(b.b4, p), b6 = mod(b.b6, p);
    std::vector<unsigned char> roots(static_cast<std::size_t>(p), 0);  // number of w with w^2 = r
    for (long w = 0; w < p; ++w) ++roots[static_cast<std::size_t>(w * w % p)];
    for (long x = 0; x < p; ++x) {
        const long g = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p;
        out.points += roots[static_cast<std::size_t>(g)];
        if (g == 0) {
            const long dg = ((12 * x + 2 * b2) % p * x + 2 * b4) % p;
            if (dg == 0) ++out.singular;
        }
    }
    return out;
}

} // namespace detail

/// a_p = p + 1 - #E(F_p) at good primes; at bad primes a_p = p - #E_ns(F_p),
/// counting only nonsingular points (the point at infinity included).
inline long ap(const CurveConfig& c, long p, long cap = kDefaultPrimeCap) {
    if (p > cap) throw PrimeTooLarge("p = " + std::to_string(p) + " exceeds cap " + std::to_string(cap));
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    const detail::AffineCount n = detail::count_affine(c, p);
    if (detail::mod(c.discriminant, p) != 0) return p - n.points;
    const long nonsingular = n.points - n.singular + 1;
    return p - nonsingular;
}

/// a_1 .. a_T; index 0 is unused.
struct AnTable {
    long T = 0;
    std::vector<long> a;
    long operator[](long n) const { return a.at(static_cast<std::size_t>(n)); }
};

/// a_n for n <= T: a_p by point counting, a_{p^k} = a_p a_{p^{k-1}} - chi(p) p a_{p^{k-2}}
/// with chi(p) = 0 for p | N, and multiplicativity. Primes are spread over
/// `threads` workers.
inline AnTable an_table(const CurveConfig& c, long T, unsigned threads = 1, long cap = kDefaultPrimeCap) {
    if (T < 1) throw DomainError("an_table: T must be >= 1");
    std::vector<long> spf(static_cast<std::size_t>(T) + 1, 0);
    std::vector<long> primes;
    for (long i = 2; i <= T; ++i) {
        if (spf[static_cast<std::size_t>(i)] != 0) continue;
        primes.push_back(i);
        for (long j = i; j <= T; j += i)
            if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    }
    if (!primes.empty() && primes.back() > cap)
        throw PrimeTooLarge("T = " + std::to_string(T) + " needs primes above cap " + std::to_string(cap));

    std::vector<long> apv(primes.size());
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, primes.size()))));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < primes.size(); i += threads) apv[i] = ap(c, primes[i], cap);
            });
        }
    }

    AnTable out;
    out.T = T;
    out.a.assign(static_cast<std::size_t>(T) + 1, 0);
    out.a[1] = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const long p = primes[i];
        const long chi = (c.conductor % p == 0) ? 0 : 1;
        long prev2 = 1, prev1 = apv[i];
        out.a[static_cast<std::size_t>(p)] = prev1;
        for (long q = p; q <= T / p;) {
            q *= p;
            const long next = apv[i] * prev1 - chi * p * prev2;
            out.a[static_cast<std::size_t>(q)] = next;
            prev2 = prev1;
            prev1 = next;
        }
    }
    for (long n = 2; n <= T; ++n) {
        const long p = spf[static_cast<std::size_t>(n)];
        long pk = 1, m = n;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m != 1) out.a[static_cast<std::size_t>(n)] = out.a[static_cast<std::size_t>(pk)] * out.a[static_cast<std::size_t>(m)];
    }
    return out;
}

enum class G1Route { Auto, Series, ContinuedFraction, Quadrature };

struct LPrimeResult {
    BigReal value;
    BigReal tail;
    long T;
};

/// Bound on sum_{n>T} 2 |a_n|/n E1(alpha n) with alpha = 2 pi / sqrt(N), from
/// |a_n| <= d(n) sqrt(n) <= 2n and E1(y) <= e^{-y}/y:
///   4 e^{-alpha (T+1)} / (alpha (T+1) (1 - e^{-alpha})).
inline BigReal lprime_tail(long conductor, long T, long prec) {
    const long wp = prec + numeval::kGuardBits;
    const BigReal alpha = BigReal::pi(wp) * 2L / sqrt(BigReal(conductor, wp));
    const BigReal at = alpha * (T + 1);
    return (BigReal(4L, wp) * exp(-at) / (at * (1L - exp(-alpha)))).with_prec(prec);
}

/// L'(E, 1) ~ 2 sum_{n=1}^{T} (a_n/n) E1(2 pi n / sqrt(N)); valid for root number -1.
inline LPrimeResult lprime_approx(const CurveConfig& c, long T, long prec, G1Route route = G1Route::Auto,
                                  numeval::Switchover sw = {}, unsigned threads = 1) {
    if (c.eps != -1)
        throw DomainError("lprime_approx: the first-derivative formula needs root number -1, curve '" +
                          c.label + "' has +1");
    const AnTable table = an_table(c, T, threads);
    const long wp = prec + numeval::kGuardBits;
    const BigReal alpha = BigReal::pi(wp) * 2L / sqrt(BigReal(c.conductor, wp));
    BigReal sum(wp);
    for (long n = 1; n <= T; ++n) {
        const long an = table[n];
        if (an == 0) continue;
        const BigReal x = alpha * n;
        BigReal g(wp);
        switch (route) {
            case G1Route::Auto: g = numeval::e1(x, wp, sw).value; break;
            case G1Route::Series: g = numeval::e1_series(x, wp).value; break;
            case G1Route::ContinuedFraction: g = numeval::e1_cf(x, 8, wp).value; break;
            case G1Route::Quadrature: g = numeval::e1_quadrature(x, wp).value; break;
        }
        sum += g * an / n;
    }
    return {(sum * 2L).with_prec(prec), lprime_tail(c.conductor, T, prec), T};
}

} // namespace qdfrac::lfunc

#endif
