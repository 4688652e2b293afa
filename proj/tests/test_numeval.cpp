#include <gtest/gtest.h>

#include <map>
#include <random>

#include "qdfrac/numeval.hpp"
#include "support/oracles.hpp"

using namespace qdfrac;
using namespace qdfrac::numeval;

namespace {

// E1(x) to 45 significant digits, computed once with an independent library.
const std::map<std::string, std::string> kE1Reference = {
    {"0.5", "0.55977359477616081174679593931508523522684689"},
    {"1", "0.219383934395520273677163775460121649031047293"},
    {"2", "0.048900510708061119567239835228049522314492185"},
    {"5", "0.00114829559127532579733056196981972207626609547"},
    {"10", "0.00000415696892968532427740285981027818038434629008"},
    {"20", "0.0000000000983552529064988169039698710889477607435632407"},
    {"50", "3.78326402955045901869896785402128578030289319e-24"},
    {"100", "3.68359776168203218023519262050811898765522014e-46"},
};

BigReal ref(const std::string& x) { return BigReal::parse(kE1Reference.at(x), 192); }

} // namespace

TEST(BigRealBasics, ParseAndPrint) {
    const BigReal a = BigReal::parse("1/3", 128);
    EXPECT_TRUE(agrees(a * 3L, BigReal(1L, 128), 126));
    EXPECT_THROW(BigReal::parse("abc", 64), DomainError);
    EXPECT_THROW(BigReal::parse("1/0", 64), DomainError);
    const BigReal b = BigReal::parse("0.25", 64);
    EXPECT_EQ(BigReal::parse(b.to_string(), 64), b);
    EXPECT_EQ(BigReal::decimal_digits(128), 38);
}

TEST(BigRealBasics, MixedPrecisionUsesMaximum) {
    const BigReal a(1L, 64), b(3L, 256);
    EXPECT_EQ((a / b).prec(), 256);
}

TEST(E1Oracles, MpfrAgreesWithFrozenReference) {
    for (const auto& [x, v] : kE1Reference)
        EXPECT_TRUE(agrees(oracle::e1_mpfr(BigReal::parse(x, 192), 192), ref(x), 140)) << x;
}

TEST(E1Series, MatchesReference) {
    for (const char* x : {"0.5", "1", "2", "5", "10"}) {
        const EvalReport r = e1_series(BigReal::parse(x, 128), 128);
        EXPECT_EQ(r.method, Method::Series);
        EXPECT_TRUE(agrees(r.value, ref(x), 120)) << x << " " << r.value;
    }
    EXPECT_THROW(e1_series(BigReal(0L, 128), 128), DomainError);
    EXPECT_THROW(e1_series(BigReal(-1L, 128), 128), DomainError);
}

TEST(E1Series, SmallArgumentLimit) {
    const BigReal x = BigReal::parse("1e-20", 128);
    const BigReal rest = e1_series(x, 128).value + log(x) + BigReal::euler_gamma(128);
    EXPECT_LT(abs(rest), BigReal::parse("1e-19", 128));
}

TEST(E1ContinuedFraction, MatchesReferenceAndReportsDepth) {
    for (const char* x : {"1", "5", "10", "50", "100"}) {
        const EvalReport r = e1_cf(BigReal::parse(x, 128), 8, 128);
        EXPECT_EQ(r.method, Method::ContinuedFraction);
        EXPECT_GE(r.terms_or_depth, 8);
        EXPECT_TRUE(agrees(r.value, ref(x), 120)) << x << " " << r.value;
    }
}

TEST(E1ContinuedFraction, DepthOneIsFirstConvergent) {
    const BigReal v = e1_cf_truncated(BigReal(1L, 128), 1, 128);
    EXPECT_TRUE(agrees(v, exp(BigReal(-1L, 128)), 120));
}

TEST(E1ContinuedFraction, TruncationMatchesConvergentPolynomials) {
    for (const Rational& x : {Rational(1), make_rational(7, 2), Rational(12)})
        for (long n : {1L, 2L, 5L, 8L, 13L}) {
            const BigReal cf = e1_cf_truncated(BigReal(x, 192), n, 160);
            const BigReal pq = e1_convergent(x, n, 160);
            EXPECT_TRUE(agrees(cf, pq, 150)) << to_string(x) << " n=" << n;
        }
}

TEST(E1ContinuedFraction, LargeArgumentWithinAsymptoticEnvelope) {
    const BigReal x(50L, 128);
    const auto [partial, bound] = asymptotic_partial(x, 10, 128);
    const BigReal F = e1_cf(x, 8, 128).value * exp(x);
    EXPECT_LE(abs(F - partial), bound);
}

TEST(E1Quadrature, MatchesReference) {
    for (const char* x : {"0.5", "1", "10", "50"}) {
        const EvalReport r = e1_quadrature(BigReal::parse(x, 128), 128);
        EXPECT_EQ(r.method, Method::Quadrature);
        EXPECT_TRUE(agrees(r.value, ref(x), 118)) << x << " " << r.value;
    }
}

TEST(E1Quadrature, TailCutoffBelowTarget) {
    for (long x : {1L, 10L, 100L}) {
        const QuadratureCutoff cut = quadrature_cutoff(BigReal(x, 128), 128);
        // the truncated tail relative to F(x) >= e^{-x}/(x+1) stays below 2^-prec
        const BigReal F_floor = 1L / BigReal(x + 1, 160);
        EXPECT_LT(cut.tail_bound / exp(BigReal(-x, 160)), ldexp(F_floor, -128)) << x;
    }
}

TEST(E1, SwitchoverPicksMethod) {
    EXPECT_EQ(e1(BigReal(1L, 128), 128).method, Method::Series);
    EXPECT_EQ(e1(BigReal(4L, 128), 128).method, Method::ContinuedFraction);
    EXPECT_EQ(e1(BigReal(3L, 128), 128, Switchover{2.0}).method, Method::ContinuedFraction);
    EXPECT_EQ(e1(BigReal(3L, 128), 128, Method::Quadrature).method, Method::Quadrature);
}

TEST(E1, RandomArgumentsThreeWaysAgree) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 60.0);
    for (int i = 0; i < 12; ++i) {
        const BigReal x(u(rng), 128);
        const BigReal s = e1_series(x, 128).value;
        const BigReal c = e1_cf(x, 8, 128).value;
        const BigReal q = e1_quadrature(x, 128).value;
        const BigReal o = oracle::e1_mpfr(x, 160);
        EXPECT_TRUE(agrees(s, o, 116)) << x;
        EXPECT_TRUE(agrees(c, o, 116)) << x;
        EXPECT_TRUE(agrees(q, o, 116)) << x;
    }
}

TEST(Asymptotic, PartialSumsAndBound) {
    const BigReal x(10L, 192);
    const auto [s1, b1] = asymptotic_partial(x, 1, 192);
    EXPECT_TRUE(agrees(s1, BigReal::parse("0.1", 192), 180));
    EXPECT_TRUE(agrees(b1, BigReal::parse("0.01", 192), 180));
    const auto [s5, b5] = asymptotic_partial(x, 5, 192);
    EXPECT_TRUE(agrees(b5, BigReal::parse("1.2e-4", 192), 180));
    const BigReal F = f_quadrature(x, 192).value;
    EXPECT_TRUE(agrees(F, BigReal::parse("0.0915633339397880818760698157664384492266773691", 192), 140));
    EXPECT_LE(abs(F - s5), b5);
    EXPECT_THROW(asymptotic_partial(x, 0, 64), DomainError);
}

TEST(FIteration, RatiosNearOneAtThousand) {
    const auto rows = f_iteration(BigReal(1000L, 256), 4, 256);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_LT(abs(rows[0].ratio - 1L), BigReal::parse("2e-3", 64));
    for (const auto& r : rows) {
        EXPECT_LT(abs(r.ratio - 1L), BigReal::parse("1e-2", 64)) << r.index;
        EXPECT_GT(r.bits_left, 16) << r.index;
    }
}

TEST(FIteration, FirstRatioMatchesDefinition) {
    const BigReal x(1000L, 256);
    const auto rows = f_iteration(x, 1, 256);
    const BigReal F = f_quadrature(x, 256).value;
    EXPECT_TRUE(agrees(rows[0].value, 1L / F, 200));
    EXPECT_TRUE(agrees(rows[1].value, 1L / (1L / F - x), 150));
}

TEST(FIteration, RejectsBadInput) {
    EXPECT_THROW(f_iteration(BigReal(-1L, 128), 2, 128), DomainError);
    EXPECT_THROW(f_iteration(BigReal(10L, 128), 0, 128), DomainError);
}
