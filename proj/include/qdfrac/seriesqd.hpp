#ifndef QDFRAC_SERIESQD_HPP
#define QDFRAC_SERIESQD_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdfrac/errors.hpp"
#include "qdfrac/matrix.hpp"
#include "qdfrac/rational.hpp"

namespace qdfrac {

/// Coefficient sequence c_n of a formal series sum c_n x^{-n}. Indices below
/// zero read as 0. Values are memoized; copies share the memo table.
class CoeffSeq {
public:
    using Generator = std::function<Rational(long)>;

    CoeffSeq(std::string name, Generator gen, bool inverse_x_prefactor = false)
        : name_(std::move(name)),
          gen_(std::move(gen)),
          inverse_x_prefactor_(inverse_x_prefactor),
          memo_(std::make_shared<Memo>()) {}

    Rational operator()(long n) const {
        if (n < 0) return Rational(0);
        {
            std::shared_lock lock(memo_->mutex);
            auto it = memo_->values.find(n);
            if (it != memo_->values.end()) return it->second;
        }
        Rational v = gen_(n);
        std::unique_lock lock(memo_->mutex);
        return memo_->values.try_emplace(n, std::move(v)).first->second;
    }

    const std::string& name() const noexcept { return name_; }

    /// True when the series stands for (1/x) * sum c_n x^{-n}, as the
    /// asymptotic expansion of e^x E1(x) does.
    bool inverse_x_prefactor() const noexcept { return inverse_x_prefactor_; }

private:
    struct Memo {
        std::shared_mutex mutex;
        std::unordered_map<long, Rational> values;
    };

    std::string name_;
    Generator gen_;
    bool inverse_x_prefactor_;
    std::shared_ptr<Memo> memo_;
};

/// c_n = (-1)^n n!, the coefficients of (1/x) sum (-1)^n n! x^{-n} ~ e^x E1(x).
inline CoeffSeq factorial_series() {
    return CoeffSeq(
        "factorial",
        [](long n) { return Rational(neg_one_pow(n) * factorial(n)); },
        true);
}

/// c_n = (n+1)!.
inline CoeffSeq shifted_factorial_series() {
    return CoeffSeq("shifted-factorial", [](long n) { return Rational(factorial(n + 1)); });
}

inline CoeffSeq constant_series(const Rational& value) {
    return CoeffSeq("constant", [value](long) { return value; });
}

/// H_k^(n) = det(c_{n+i+j})_{0<=i,j<k}; H_0 = 1 and H_1 = c_n.
inline Rational hankel_det(const CoeffSeq& c, long n, long k) {
    if (k < 0) throw DomainError("hankel_det: negative order");
    RatMatrix m(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = c(n + i + j);
    return determinant(std::move(m));
}

/// The q and e arrays of the quotient-difference algorithm,
/// q(k, n) for 0 <= k < depth and e(k, n) for 0 <= k <= depth, 0 <= n <= width.
class QDTableau {
public:
    QDTableau(int depth, int width)
        : depth_(depth),
          width_(width),
          q_(static_cast<std::size_t>(depth), std::vector<Rational>(static_cast<std::size_t>(width) + 1)),
          e_(static_cast<std::size_t>(depth) + 1, std::vector<Rational>(static_cast<std::size_t>(width) + 1)) {}

    int depth() const noexcept { return depth_; }
    int width() const noexcept { return width_; }

    const Rational& q(int k, int n) const {
        if (k < 0 || k >= depth_ || n < 0 || n > width_)
            throw IndexError("q(" + std::to_string(k) + "," + std::to_string(n) + ") outside tableau");
        return q_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
    }
    const Rational& e(int k, int n) const {
        if (k < 0 || k > depth_ || n < 0 || n > width_)
            throw IndexError("e(" + std::to_string(k) + "," + std::to_string(n) + ") outside tableau");
        return e_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
    }

private:
    friend QDTableau qd_table(const CoeffSeq&, int, int);

    int depth_;
    int width_;
    std::vector<std::vector<Rational>> q_;
    std::vector<std::vector<Rational>> e_;
};

/// Runs the rhombus rules
///   e_{k+1}^(n) = q_k^(n+1) - q_k^(n) + e_k^(n+1),
///   q_{k+1}^(n) = e_{k+1}^(n+1) / e_{k+1}^(n) * q_k^(n+1),
/// from e_0^(n) = 0, q_0^(n) = c_{n+1}/c_n. Reads c_0 .. c_{2K+N}.
inline QDTableau qd_table(const CoeffSeq& c, int depth, int width) {
    if (depth < 1) throw DomainError("qd_table: depth must be >= 1");
    if (width < 0) throw DomainError("qd_table: width must be >= 0");
    const int span = width + 2 * depth;  // q_0 has entries n = 0 .. span-1

    std::vector<Rational> q_row(static_cast<std::size_t>(span));
    for (int n = 0; n < span; ++n) {
        const Rational cn = c(n);
        if (cn == 0) throw QDBreakdown(0, n);
        q_row[static_cast<std::size_t>(n)] = c(n + 1) / cn;
    }
    std::vector<Rational> e_row(static_cast<std::size_t>(span), Rational(0));

    QDTableau t(depth, width);
    auto store = [&](std::vector<std::vector<Rational>>& dst, int k, const std::vector<Rational>& row) {
        for (int n = 0; n <= width; ++n) dst[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] = row[static_cast<std::size_t>(n)];
    };
    store(t.q_, 0, q_row);
    store(t.e_, 0, e_row);

    for (int k = 0; k < depth; ++k) {
        // e_{k+1}^(n) for n = 0 .. span - 2k - 2
        const int e_len = span - 2 * k - 1;
        std::vector<Rational> e_next(static_cast<std::size_t>(e_len));
        for (int n = 0; n < e_len; ++n) {
            const auto un = static_cast<std::size_t>(n);
            e_next[un] = q_row[un + 1] - q_row[un] + e_row[un + 1];
        }
        store(t.e_, k + 1, e_next);
        if (k + 1 == depth) break;

        // q_{k+1}^(n) for n = 0 .. span - 2k - 3
        const int q_len = e_len - 1;
        std::vector<Rational> q_next(static_cast<std::size_t>(q_len));
        for (int n = 0; n < q_len; ++n) {
            const auto un = static_cast<std::size_t>(n);
            if (e_next[un] == 0) throw QDBreakdown(k + 1, n);
            q_next[un] = e_next[un + 1] / e_next[un] * q_row[un + 1];
        }
        store(t.q_, k + 1, q_next);
        q_row = std::move(q_next);
        e_row = std::move(e_next);
    }
    return t;
}

/// One entry of the tableau that disagreed with its Hankel-determinant form.
struct QDHankelMismatch {
    int k;
    int n;
    std::string entry;  // "e" or "q"
    Rational tableau;
    Rational hankel;
    bool hankel_undefined = false;  // a denominator determinant vanished
};

/// Checks e_k^(n) = H_{k+1}^(n) H_{k-1}^(n+1) / (H_k^(n+1) H_k^(n)) and
/// q_{k-1}^(n) = H_k^(n+1) H_{k-1}^(n) / (H_k^(n) H_{k-1}^(n+1))
/// for 1 <= k <= depth, 0 <= n <= width. Empty result means all hold exactly.
inline std::vector<QDHankelMismatch> verify_qd_hankel(const CoeffSeq& c, int depth, int width) {
    const QDTableau t = qd_table(c, depth, width);
    std::map<std::pair<long, long>, Rational> cache;
    auto H = [&](long k, long n) -> const Rational& {
        auto key = std::make_pair(k, n);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, hankel_det(c, n, k)).first;
        return it->second;
    };

    std::vector<QDHankelMismatch> out;
    auto check = [&](int k, int n, const char* which, const Rational& value,
                     const Rational& num, const Rational& den) {
        if (den == 0) {
            out.push_back({k, n, which, value, Rational(0), true});
            return;
        }
        Rational expect = num / den;
        if (expect != value) out.push_back({k, n, which, value, std::move(expect), false});
    };

    for (int k = 1; k <= depth; ++k) {
        for (int n = 0; n <= width; ++n) {
            check(k, n, "e", t.e(k, n), H(k + 1, n) * H(k - 1, n + 1), H(k, n + 1) * H(k, n));
            check(k, n, "q", t.q(k - 1, n), H(k, n + 1) * H(k - 1, n), H(k, n) * H(k - 1, n + 1));
        }
    }
    return out;
}

/// Coefficients d_0 .. d_{2K} of d_0/(1 + d_1/(x + d_2/(1 + d_3/(x + ...)))).
struct CFCoeffs {
    std::vector<Rational> d;
    /// The fraction is multiplied by 1/x (series of the form (1/x) sum c_n x^{-n}).
    bool inverse_x_prefactor = false;

    int depth() const noexcept { return static_cast<int>(d.size() / 2); }

    /// Exact value of the truncated fraction (prefactor included) at x.
    Rational evaluate(const Rational& x) const {
        if (d.empty()) return Rational(0);
        // d_j sits over x + ... for odd j and over 1 + ... for even j.
        Rational tail(0);
        for (std::size_t j = d.size() - 1; j >= 1; --j) {
            const Rational base = (j % 2 == 0) ? Rational(1) : x;
            const Rational denom = base + tail;
            if (denom == 0) throw DomainError("continued fraction pole");
            tail = d[j] / denom;
        }
        const Rational denom = Rational(1) + tail;
        if (denom == 0) throw DomainError("continued fraction pole");
        Rational v = d[0] / denom;
        if (inverse_x_prefactor) v /= x;
        return v;
    }
};

/// d_0 = c_0, d_{2k-1} = -q_{k-1}^(0), d_{2k} = -e_k^(0) for k = 1..K.
inline CFCoeffs cf_coeffs(const CoeffSeq& c, int depth) {
    const QDTableau t = qd_table(c, depth, 0);
    CFCoeffs out;
    out.inverse_x_prefactor = c.inverse_x_prefactor();
    out.d.reserve(static_cast<std::size_t>(2 * depth + 1));
    out.d.push_back(c(0));
    for (int k = 1; k <= depth; ++k) {
        out.d.push_back(-t.q(k - 1, 0));
        out.d.push_back(-t.e(k, 0));
    }
    return out;
}

} // namespace qdfrac

#endif
