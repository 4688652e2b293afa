// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qdfrac/convergents.hpp"
#include "qdfrac/hankelmat.hpp"
#include "qdfrac/lfunction.hpp"
#include "qdfrac/numeval.hpp"
#include "qdfrac/seriesqd.hpp"

using namespace qdfrac;

namespace {

// L'(E,1) for 37a at T = 2000, 128 bits, pinned from a converged run.
const char* const kGolden37a = "0.30599977383405230182048368332167647445";

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> body;
};

std::string sci(const BigReal& v) { return v.to_string(3); }

Outcome qd_closed_form() {
    Outcome o;
    const QDTableau t = qd_table(factorial_series(), 20, 10);
    for (int k = 1; k <= 20; ++k)
        for (int n = 0; n <= 10; ++n) {
            if (t.q(k - 1, n) != Rational(-(n + k))) o.fail("q_" + std::to_string(k - 1) + "^(" + std::to_string(n) + ")");
            if (t.e(k, n) != Rational(-k)) o.fail("e_" + std::to_string(k) + "^(" + std::to_string(n) + ")");
        }
    o.detail = o.ok ? "1 <= k <= 20, 0 <= n <= 10" : o.detail;
    return o;
}

Outcome hankel_ratios() {
    Outcome o;
    for (const CoeffSeq& c : {factorial_series(), shifted_factorial_series()}) {
        const auto bad = verify_qd_hankel(c, 8, 4);
        if (!bad.empty()) o.fail(c.name() + ": " + std::to_string(bad.size()) + " mismatches");
    }
    if (o.ok) o.detail = "n! and (n+1)!, k <= 8, n <= 4";
    return o;
}

Outcome determinants() {
    Outcome o;
    try {
        for (int k = 1; k <= 8; ++k) {
            if (hankel::det_A(k) != hankel::det_A_closed_form(k)) o.fail("det k=" + std::to_string(k));
            for (int m = 1; m <= k; ++m)
                if (hankel::minor_A(k, k, m) != hankel::last_row_minor_closed_form(k, m))
                    o.fail("minor k=" + std::to_string(k) + " m=" + std::to_string(m));
            if (k >= 2 && hankel::h1_offset_det(k) != hankel::h1_offset_closed_form(k)) o.fail("offset k=" + std::to_string(k));
        }
    } catch (const Error& e) {
        o.fail(e.what());
    }
    if (o.ok) o.detail = "1 <= m <= k <= 8";
    return o;
}

Outcome congruences() {
    Outcome o;
    try {
        for (long k = 1; k <= 12; ++k) {
            const RatPoly kf(Rational(factorial(k)));
            if (numerator_congruence(k).polynomial_part() != kf) o.fail("numerator k=" + std::to_string(k));
            if (denominator_congruence(k).polynomial_part() != kf) o.fail("denominator k=" + std::to_string(k));
            if (k >= 2) {
                const auto fails = check_S_identities(k);
                if (!fails.empty()) o.fail(fails.front().identity + " k=" + std::to_string(k));
            }
        }
    } catch (const Error& e) {
        o.fail(e.what());
    }
    if (o.ok) o.detail = "k <= 12";
    return o;
}

Outcome closed_forms() {
    Outcome o;
    const auto pq = convergents_upto(60);
    for (long n = 1; n <= 30; ++n) {
        const auto& odd = pq[static_cast<std::size_t>(2 * n - 1)];
        const auto& even = pq[static_cast<std::size_t>(2 * n)];
        if (!(odd.first == closed_form_P(n, Parity::Odd) && odd.second == closed_form_Q(n, Parity::Odd)))
            o.fail("index " + std::to_string(2 * n - 1));
        if (!(even.first == closed_form_P(n, Parity::Even) && even.second == closed_form_Q(n, Parity::Even)))
            o.fail("index " + std::to_string(2 * n));
    }
    for (long n = 1; n <= 14; ++n)
        if (!bridge_Q_s(n).empty()) o.fail("bridge n=" + std::to_string(n));
    if (o.ok) o.detail = "indices 1..60, bridge n <= 14";
    return o;
}

Outcome tri_method() {
    Outcome o;
    const long prec = 128;
    BigReal worst(0L, prec);
    for (const char* xs : {"0.5", "1", "2", "5", "10", "20", "50"}) {
        const BigReal x = BigReal::parse(xs, prec);
        const BigReal v[] = {numeval::e1_series(x, prec).value, numeval::e1_cf(x, 8, prec).value,
                             numeval::e1_quadrature(x, prec).value};
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const BigReal d = relative_difference(v[i], v[j]);
                if (d > worst) worst = d;
                if (!agrees(v[i], v[j], 112)) o.fail("x=" + std::string(xs) + " rel diff " + sci(d));
            }
    }
    if (o.ok) o.detail = "worst relative difference " + sci(worst) + " <= 2^-112";
    return o;
}

Outcome envelope() {
    Outcome o;
    const long prec = 192;
    for (long xv : {5L, 10L, 20L}) {
        const BigReal x(xv, prec);
        const BigReal F = numeval::f_quadrature(x, prec).value;
        for (long n = 1; n <= 12; ++n) {
            const auto [sum, bound] = numeval::asymptotic_partial(x, n, prec);
            const BigReal r = F - sum;
            if (abs(r) > bound) o.fail("x=" + std::to_string(xv) + " n=" + std::to_string(n) + " outside bound");
            if (r.sign() != neg_one_pow(n)) o.fail("x=" + std::to_string(xv) + " n=" + std::to_string(n) + " sign");
        }
    }
    if (o.ok) o.detail = "x in {5,10,20}, n <= 12, signs alternate";
    return o;
}

Outcome ratio_limit() {
    Outcome o;
    const long prec = 512;
    const auto lo = numeval::f_iteration(BigReal(1000L, prec), 8, prec);
    const auto hi = numeval::f_iteration(BigReal(10000L, prec), 8, prec);
    const BigReal tol_lo = BigReal::parse("1e-2", 64), tol_hi = BigReal::parse("1e-3", 64);
    BigReal worst_lo(0L, 64), worst_hi(0L, 64);
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const BigReal dl = abs(lo[i].ratio - 1L), dh = abs(hi[i].ratio - 1L);
        if (lo[i].index <= 8) {
            if (dl > tol_lo) o.fail("x=1e3 index " + std::to_string(lo[i].index) + " deviation " + sci(dl));
            if (dh > tol_hi) o.fail("x=1e4 index " + std::to_string(hi[i].index) + " deviation " + sci(dh));
            if (dl > worst_lo) worst_lo = dl;
            if (dh > worst_hi) worst_hi = dh;
        }
        if (!(dh < dl)) o.fail("index " + std::to_string(lo[i].index) + " does not improve");
    }
    if (o.ok) o.detail = "max deviation " + sci(worst_lo) + " at 1e3, " + sci(worst_hi) + " at 1e4; m <= 8 improves";
    return o;
}

Outcome contact() {
    Outcome o;
    for (long n = 1; n <= 10; ++n)
        if (contact_order(n) < n) o.fail("n=" + std::to_string(n) + " contact " + std::to_string(contact_order(n)));
    if (o.ok) o.detail = "n <= 10";
    return o;
}

Outcome lseries() {
    Outcome o;
    const long prec = 128;
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    const lfunc::CurveConfig c = lfunc::load_curve(std::string(QDFRAC_DATA_DIR) + "/curves/37a.curve");
    const auto v1 = lfunc::lprime_approx(c, 1000, prec, lfunc::G1Route::Auto, {}, threads);
    const auto v2 = lfunc::lprime_approx(c, 2000, prec, lfunc::G1Route::Auto, {}, threads);
    const BigReal step = abs(v2.value - v1.value);
    if (step > BigReal::parse("1e-6", 64)) o.fail("T=1000 vs 2000 differ by " + sci(step));
    if (step > v1.tail) o.fail("increment " + sci(step) + " exceeds tail " + sci(v1.tail));
    const auto s = lfunc::lprime_approx(c, 500, prec, lfunc::G1Route::Series, {}, threads);
    const auto f = lfunc::lprime_approx(c, 500, prec, lfunc::G1Route::ContinuedFraction, {}, threads);
    const BigReal swap = abs(s.value - f.value);
    if (swap > BigReal::parse("1e-20", 64)) o.fail("series vs cf differ by " + sci(swap));
    const BigReal golden = BigReal::parse(kGolden37a, prec);
    const BigReal miss = abs(v2.value - golden);
    if (miss > BigReal::parse("1e-30", 64)) o.fail("value " + v2.value.to_string() + " off golden by " + sci(miss));
    if (o.ok) o.detail = "L'(E,1) = " + v2.value.to_string(20) + ", swap diff " + sci(swap) + ", step " + sci(step);
    return o;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "qd closed form for n!", 5, qd_closed_form},
        {2, "qd entries as Hankel ratios", 10, hankel_ratios},
        {3, "factorial matrix determinants and minors", 5, determinants},
        {4, "congruences and S identities", 10, congruences},
        {5, "closed-form convergents and bridge", 10, closed_forms},
        {6, "three-way E1 agreement", 30, tri_method},
        {7, "asymptotic remainder envelope", 30, envelope},
        {8, "expansion-at-infinity ratios", 60, ratio_limit},
        {9, "order of contact", 10, contact},
        {10, "L'(E,1) for 37a", 60, lseries},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) o.fail("took " + std::to_string(secs) + " s");
        if (!o.ok) ++failed;
        std::ostringstream time;
        time << std::fixed << std::setprecision(2) << secs << "s/" << c.limit_seconds << "s";
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << c.name << " (" << time.str()
                  << "): " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
