#ifndef QDFRAC_IDENTITIES_HPP
#define QDFRAC_IDENTITIES_HPP

#include <string>
#include <vector>

#include "qdfrac/convergents.hpp"
#include "qdfrac/hankelmat.hpp"
#include "qdfrac/seriesqd.hpp"

namespace qdfrac {

struct SuiteReport {
    std::string name;
    long checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string name) { r_.name = std::move(name); }

    void expect(bool ok, const std::string& what) {
        ++r_.checks;
        if (!ok) r_.failures.push_back(what);
    }
    void expect_eq(const Rational& lhs, const Rational& rhs, const std::string& what) {
        expect(lhs == rhs, what + ": " + to_string(lhs) + " != " + to_string(rhs));
    }
    template <class Fn>
    void guarded(const std::string& what, Fn&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            ++r_.checks;
            r_.failures.push_back(what + ": " + e.what());
        }
    }
    SuiteReport done() { return std::move(r_); }

private:
    SuiteReport r_;
};

inline std::string at(long k) { return "k=" + std::to_string(k); }
inline std::string at(long k, long m) { return "k=" + std::to_string(k) + " m=" + std::to_string(m); }

} // namespace detail

inline SuiteReport sweep_qd_closed_form(long kmax) {
    detail::SuiteBuilder s("qd tableau of n! (q = n+k, e = k up to sign)");
    s.guarded("tableau", [&] {
        const auto t = qd_table(factorial_series(), static_cast<int>(kmax), static_cast<int>(kmax));
        for (long k = 0; k < kmax; ++k)
            for (long n = 0; n < kmax; ++n)
                s.expect_eq(t.q(static_cast<int>(k), static_cast<int>(n)), Rational(-(n + k + 1)),
                            "q " + detail::at(k, n));
        for (long k = 1; k <= kmax; ++k)
            for (long n = 0; n < kmax; ++n)
                s.expect_eq(t.e(static_cast<int>(k), static_cast<int>(n)), Rational(-k), "e " + detail::at(k, n));
    });
    return s.done();
}

inline SuiteReport sweep_qd_hankel(const CoeffSeq& c, const std::string& label, long kmax) {
    detail::SuiteBuilder s("qd entries as Hankel ratios (" + label + ")");
    s.guarded("tableau", [&] {
        const auto bad = verify_qd_hankel(c, static_cast<int>(kmax), 4);
        s.expect(bad.empty(), std::to_string(bad.size()) + " mismatching entries");
        for (const auto& m : bad)
            s.expect(false, m.entry + " " + detail::at(m.k, m.n) + ": " + to_string(m.tableau) + " vs " +
                                (m.hankel_undefined ? std::string("undefined") : to_string(m.hankel)));
    });
    return s.done();
}

inline SuiteReport sweep_cf_coeffs(long kmax) {
    detail::SuiteBuilder s("continued fraction coefficients of n!");
    s.guarded("cf", [&] {
        const CFCoeffs cf = cf_coeffs(factorial_series(), static_cast<int>(kmax));
        s.expect(cf.inverse_x_prefactor, "1/x prefactor flag");
        for (long j = 0; j <= 2 * kmax; ++j)
            s.expect_eq(cf.d[static_cast<std::size_t>(j)], Rational(j == 0 ? 1 : (j + 1) / 2), "d_" + std::to_string(j));
    });
    return s.done();
}

inline SuiteReport sweep_factorial_matrix(long kmax) {
    detail::SuiteBuilder s("factorial matrix determinants and minors");
    for (int k = 1; k <= kmax + 1; ++k) {
        s.guarded("det " + detail::at(k), [&] { s.expect_eq(hankel::det_A(k), hankel::det_A_closed_form(k), "det " + detail::at(k)); });
        for (int m = 1; m <= k; ++m)
            s.guarded("minor " + detail::at(k, m), [&] {
                s.expect_eq(hankel::minor_A(k, k, m), hankel::last_row_minor_closed_form(k, m), "minor " + detail::at(k, m));
            });
    }
    for (int k = 2; k <= kmax + 1; ++k)
        s.guarded("offset " + detail::at(k), [&] {
            s.expect_eq(hankel::h1_offset_det(k), hankel::h1_offset_closed_form(k), "offset det " + detail::at(k));
        });
    return s.done();
}

inline SuiteReport sweep_inverse_column(long kmax) {
    detail::SuiteBuilder s("last column of the inverse factorial matrix");
    for (int k = 1; k <= kmax; ++k)
        for (int m = 1; m <= k; ++m)
            s.guarded("row " + detail::at(k, m), [&] {
                s.expect_eq(hankel::row_times_inverse_column(k, m), Rational(m == k ? 1 : 0), "a_m b_k " + detail::at(k, m));
            });
    for (int k = 2; k <= kmax; ++k)
        for (int m = 1; m <= k; ++m)
            s.guarded("f " + detail::at(k, m), [&] {
                s.expect_eq(hankel::f_eval(k, m), Rational(m == k ? neg_one_pow(k - 1) : 0), "f " + detail::at(k, m));
            });
    return s.done();
}

inline SuiteReport sweep_congruences(long kmax) {
    detail::SuiteBuilder s("polynomial parts of the truncated congruences");
    for (long k = 1; k <= kmax; ++k) {
        s.guarded("numerator " + detail::at(k), [&] {
            s.expect(numerator_congruence(k).polynomial_part() == LaurentPoly(RatPoly(Rational(factorial(k)))),
                     "numerator congruence " + detail::at(k));
        });
        s.guarded("denominator " + detail::at(k), [&] {
            s.expect(denominator_congruence(k).polynomial_part() == LaurentPoly(RatPoly(Rational(factorial(k)))),
                     "denominator congruence " + detail::at(k));
        });
        s.guarded("even step " + detail::at(k), [&] {
            s.expect(even_step_congruence(k).polynomial_part() == LaurentPoly(RatPoly(Rational(factorial(k + 1)))),
                     "even-step congruence " + detail::at(k));
        });
    }
    return s.done();
}

inline SuiteReport sweep_s_identities(long kmax) {
    detail::SuiteBuilder s("S and R coefficient identities");
    for (long k = 2; k <= kmax; ++k)
        s.guarded("S " + detail::at(k), [&] {
            const auto fails = check_S_identities(k);
            s.expect(fails.empty(), "S identities " + detail::at(k));
            for (const auto& f : fails)
                s.expect(false, f.identity + " " + detail::at(f.k, f.n) + ": " + f.lhs + " != " + f.rhs);
        });
    for (long k = 1; k <= kmax; ++k) {
        for (long l = 0; l <= k; ++l)
            s.guarded("S_l " + detail::at(k, l), [&] {
                (void)s_coeff(k, l);
                s.expect(true, "");
            });
        for (long n = 0; n < k; ++n)
            s.guarded("R_n " + detail::at(k, n), [&] {
                (void)r_coeff(k, n);
                s.expect(true, "");
            });
    }
    return s.done();
}

inline SuiteReport sweep_convergents(long kmax) {
    detail::SuiteBuilder s("closed-form convergents");
    s.guarded("convergents", [&] {
        const auto pq = convergents_upto(2 * kmax);
        for (long n = 1; n <= kmax; ++n) {
            const auto& odd = pq[static_cast<std::size_t>(2 * n - 1)];
            const auto& even = pq[static_cast<std::size_t>(2 * n)];
            s.expect(odd.first == closed_form_P(n, Parity::Odd), "P_" + std::to_string(2 * n - 1));
            s.expect(odd.second == closed_form_Q(n, Parity::Odd), "Q_" + std::to_string(2 * n - 1));
            s.expect(even.first == closed_form_P(n, Parity::Even), "P_" + std::to_string(2 * n));
            s.expect(even.second == closed_form_Q(n, Parity::Even), "Q_" + std::to_string(2 * n));
        }
    });
    for (long n = 1; n < kmax; ++n)
        s.guarded("bridge " + std::to_string(n), [&] {
            const auto fails = bridge_Q_s(n);
            s.expect(fails.empty(), "convergents vs r, s at n=" + std::to_string(n));
        });
    for (long n = 1; n <= kmax; ++n)
        s.guarded("contact " + std::to_string(n), [&] {
            s.expect(contact_order(n) >= n, "contact order at n=" + std::to_string(n));
        });
    return s.done();
}

/// Every exact suite, with orders up to kmax.
inline std::vector<SuiteReport> identity_sweep(long kmax) {
    if (kmax < 2) throw DomainError("identity_sweep: kmax must be >= 2");
    std::vector<SuiteReport> out;
    out.push_back(sweep_qd_closed_form(kmax));
    out.push_back(sweep_qd_hankel(factorial_series(), "n!", kmax));
    out.push_back(sweep_qd_hankel(shifted_factorial_series(), "(n+1)!", kmax));
    out.push_back(sweep_cf_coeffs(kmax));
    out.push_back(sweep_factorial_matrix(kmax));
    out.push_back(sweep_inverse_column(kmax));
    out.push_back(sweep_congruences(kmax));
    out.push_back(sweep_s_identities(kmax));
    out.push_back(sweep_convergents(kmax));
    return out;
}

} // namespace qdfrac

#endif
