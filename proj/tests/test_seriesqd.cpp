#include <gtest/gtest.h>

#include <thread>

#include "qdfrac/seriesqd.hpp"
#include "support/oracles.hpp"

using namespace qdfrac;

namespace {

std::vector<Rational> first_coeffs(const CoeffSeq& c, std::size_t len) {
    std::vector<Rational> out;
    for (std::size_t n = 0; n < len; ++n) out.push_back(c(static_cast<long>(n)));
    return out;
}

} // namespace

TEST(CoeffSeq, FactorialValues) {
    const CoeffSeq c = factorial_series();
    EXPECT_EQ(c(0), 1);
    EXPECT_EQ(c(3), -6);
    EXPECT_EQ(c(4), 24);
    EXPECT_EQ(c(-1), 0);
    EXPECT_TRUE(c.inverse_x_prefactor());
    EXPECT_FALSE(shifted_factorial_series().inverse_x_prefactor());
}

TEST(CoeffSeq, ConcurrentReadsAgree) {
    const CoeffSeq c = factorial_series();
    std::vector<std::thread> pool;
    std::vector<Rational> seen(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] {
            Rational acc(0);
            for (long n = 0; n < 60; ++n) acc += c(n);
            seen[static_cast<std::size_t>(t)] = acc;
        });
    for (auto& th : pool) th.join();
    for (const auto& v : seen) EXPECT_EQ(v, seen[0]);
}

TEST(HankelDet, SmallCases) {
    const CoeffSeq c = factorial_series();
    EXPECT_EQ(hankel_det(c, 0, 0), 1);
    EXPECT_EQ(hankel_det(c, 0, 2), 1);
    EXPECT_EQ(hankel_det(c, 0, 4), 144);
    for (long n = -3; n <= 6; ++n) {
        EXPECT_EQ(hankel_det(c, n, 0), 1);
        EXPECT_EQ(hankel_det(c, n, 1), c(n));
    }
}

TEST(HankelDet, MatchesLeibnizIncludingNegativeOffsets) {
    for (const CoeffSeq& c : {factorial_series(), shifted_factorial_series()})
        for (long n = -3; n <= 4; ++n)
            for (long k = 0; k <= 6; ++k)
                EXPECT_EQ(hankel_det(c, n, k), oracle::leibniz_det(oracle::hankel_matrix(c, n, k)))
                    << c.name() << " n=" << n << " k=" << k;
}

TEST(QDTable, FactorialClosedForm) {
    const QDTableau t = qd_table(factorial_series(), 3, 3);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(t.q(0, n), -(n + 1));
    for (int k = 0; k < 3; ++k)
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(t.q(k, n), -(n + k + 1));
    for (int k = 0; k <= 3; ++k)
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(t.e(k, n), -k);
}

TEST(QDTable, FirstColumnsByDefinition) {
    const CoeffSeq c = shifted_factorial_series();
    const QDTableau t = qd_table(c, 3, 5);
    for (int n = 0; n <= 5; ++n) {
        EXPECT_EQ(t.e(0, n), 0);
        EXPECT_EQ(t.q(0, n), c(n + 1) / c(n));
    }
}

TEST(QDTable, RecurrencesHoldForStoredEntries) {
    const QDTableau t = qd_table(shifted_factorial_series(), 4, 4);
    for (int k = 0; k < 4; ++k)
        for (int n = 0; n < 4; ++n) {
            EXPECT_EQ(t.e(k + 1, n), t.q(k, n + 1) - t.q(k, n) + t.e(k, n + 1));
            if (k + 1 < 4) {
                EXPECT_EQ(t.q(k + 1, n), t.e(k + 1, n + 1) / t.e(k + 1, n) * t.q(k, n + 1));
            }
        }
}

TEST(QDTable, OutOfRangeAccessThrows) {
    const QDTableau t = qd_table(factorial_series(), 2, 1);
    EXPECT_THROW(t.q(2, 0), IndexError);
    EXPECT_THROW(t.e(3, 0), IndexError);
    EXPECT_THROW(t.q(0, 2), IndexError);
}

TEST(QDTable, GeometricSeriesBreaksDown) {
    const CoeffSeq one = constant_series(Rational(1));
    const QDTableau t = qd_table(one, 1, 2);
    for (int n = 0; n <= 2; ++n) {
        EXPECT_EQ(t.q(0, n), 1);
        EXPECT_EQ(t.e(1, n), 0);
    }
    try {
        (void)qd_table(one, 2, 2);
        FAIL() << "expected QDBreakdown";
    } catch (const QDBreakdown& e) {
        EXPECT_EQ(e.k(), 1);
    }
}

TEST(QDTable, ZeroCoefficientBreaksDown) {
    const CoeffSeq c("gap", [](long n) { return n == 2 ? Rational(0) : Rational(1); });
    EXPECT_THROW(qd_table(c, 1, 3), QDBreakdown);
}

TEST(VerifyQDHankel, EmptyForFactorialAndShifted) {
    EXPECT_TRUE(verify_qd_hankel(factorial_series(), 6, 4).empty());
    EXPECT_TRUE(verify_qd_hankel(factorial_series(), 1, 0).empty());
    EXPECT_TRUE(verify_qd_hankel(shifted_factorial_series(), 4, 2).empty());
}

TEST(VerifyQDHankel, HoldsForGenericSequence) {
    const CoeffSeq c("bump", [](long n) { return n == 3 ? Rational(7) : Rational(n + 1); });
    EXPECT_TRUE(verify_qd_hankel(c, 2, 1).empty());
}

TEST(CFCoeffs, FactorialCoefficients) {
    const CFCoeffs three = cf_coeffs(factorial_series(), 3);
    const std::vector<Rational> expect{1, 1, 1, 2, 2, 3, 3};
    EXPECT_EQ(three.d, expect);
    EXPECT_TRUE(three.inverse_x_prefactor);
    EXPECT_EQ(cf_coeffs(factorial_series(), 1).d, (std::vector<Rational>{1, 1, 1}));
}

TEST(CFCoeffs, MatchSFractionOfTheSeries) {
    for (const CoeffSeq& c : {factorial_series(), shifted_factorial_series()}) {
        const int K = 6;
        EXPECT_EQ(oracle::s_fraction(first_coeffs(c, 2 * K + 1), 2 * K + 1), cf_coeffs(c, K).d) << c.name();
    }
}

TEST(CFCoeffs, ReexpansionReproducesSeries) {
    for (const CoeffSeq& c : {factorial_series(), shifted_factorial_series()}) {
        for (int K : {1, 2, 4}) {
            const auto d = cf_coeffs(c, K).d;
            const auto series = oracle::s_fraction_series(d, static_cast<std::size_t>(2 * K + 1));
            for (long n = 0; n <= 2 * K; ++n)
                EXPECT_EQ(series[static_cast<std::size_t>(n)], c(n)) << c.name() << " K=" << K << " n=" << n;
        }
    }
}

TEST(CFCoeffs, EvaluateMatchesSFractionAtRationalPoint) {
    const CFCoeffs cf = cf_coeffs(factorial_series(), 2);
    // 1/x * 1/(1 + 1/(x + 1/(1 + 2/(x + 2))))
    const Rational x(3);
    const Rational inner = Rational(1) + Rational(2) / (x + Rational(2));
    const Rational expect = Rational(1) / x / (Rational(1) + Rational(1) / (x + Rational(1) / inner));
    EXPECT_EQ(cf.evaluate(x), expect);
}
