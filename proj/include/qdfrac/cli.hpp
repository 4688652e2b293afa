#ifndef QDFRAC_CLI_HPP
#define QDFRAC_CLI_HPP

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdfrac/convergents.hpp"
#include "qdfrac/hankelmat.hpp"
#include "qdfrac/identities.hpp"
#include "qdfrac/lfunction.hpp"
#include "qdfrac/numeval.hpp"
#include "qdfrac/seriesqd.hpp"

namespace qdfrac::cli {

enum ExitCode : int { kOk = 0, kIdentityFailure = 1, kUsage = 2, kNumerical = 3 };

inline constexpr long kDefaultPrecBits = 128;
inline constexpr const char* kPrecEnv = "QDFRAC_PREC_BITS";

using Json = nlohmann::ordered_json;

namespace detail {

class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& out) const {
        std::vector<std::size_t> w(header_.size(), 0);
        auto widen = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
        };
        widen(header_);
        for (const auto& r : rows_) widen(r);
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t i = 0; i < r.size(); ++i) {
                s += r[i];
                if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
            }
            out << s << '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Globals {
    std::string output = "table";
    long prec = 0;
    bool json() const { return output == "json"; }
};

inline long resolve_prec(long flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv(kPrecEnv); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v <= 0) throw DomainError(std::string(kPrecEnv) + " must be a positive integer");
        return v;
    }
    return kDefaultPrecBits;
}

inline std::string fmt(const BigReal& v) { return v.to_string(); }
inline std::string fmt_short(const BigReal& v) { return v.to_string(6); }

// qd ------------------------------------------------------------------------

inline int cmd_qd(const Globals& g, int depth, int width, const std::string& series, std::ostream& out) {
    const CoeffSeq c = series == "shifted" ? shifted_factorial_series() : factorial_series();
    const QDTableau t = qd_table(c, depth, width);
    TextTable tab({"entry", "k", "n", "value"});
    auto emit = [&](const char* entry, int k, int n, const Rational& v) {
        if (g.json())
            out << Json{{"entry", entry}, {"k", k}, {"n", n}, {"value", to_string(v)}}.dump() << '\n';
        else
            tab.add({entry, std::to_string(k), std::to_string(n), to_string(v)});
    };
    for (int k = 0; k < depth; ++k)
        for (int n = 0; n < width; ++n) emit("q", k, n, t.q(k, n));
    for (int k = 1; k <= depth; ++k)
        for (int n = 0; n < width; ++n) emit("e", k, n, t.e(k, n));
    if (!g.json()) tab.print(out);
    return kOk;
}

// cfcoeffs ------------------------------------------------------------------

inline int cmd_cfcoeffs(const Globals& g, int k, const std::string& series, std::ostream& out) {
    const CoeffSeq c = series == "shifted" ? shifted_factorial_series() : factorial_series();
    const CFCoeffs cf = cf_coeffs(c, k);
    if (g.json()) {
        Json d = Json::array();
        for (const auto& v : cf.d) d.push_back(to_string(v));
        out << Json{{"k", k}, {"inverse_x_prefactor", cf.inverse_x_prefactor}, {"d", d}}.dump() << '\n';
        return kOk;
    }
    out << "d =";
    for (const auto& v : cf.d) out << ' ' << to_string(v);
    out << '\n';
    return kOk;
}

// hankel --------------------------------------------------------------------

inline int cmd_hankel(const Globals& g, int kmax, std::ostream& out) {
    TextTable dets({"k", "det", "closed_form", "offset_det"});
    TextTable minors({"k", "m", "minor", "closed_form"});
    for (int k = 1; k <= kmax; ++k) {
        const Rational det = determinant(hankel::factorial_matrix(k));
        const Rational closed = hankel::det_A_closed_form(k);
        const std::string offset = k >= 2 ? to_string(hankel::h1_offset_det(k)) : std::string("-");
        if (g.json())
            out << Json{{"kind", "det"}, {"k", k}, {"det", to_string(det)}, {"closed_form", to_string(closed)},
                        {"offset_det", offset}}.dump()
                << '\n';
        else
            dets.add({std::to_string(k), to_string(det), to_string(closed), offset});
    }
    for (int k = 1; k <= kmax; ++k)
        for (int m = 1; m <= k; ++m) {
            const Rational minor = determinant(hankel::factorial_matrix(k).without(static_cast<std::size_t>(k - 1),
                                                                                   static_cast<std::size_t>(m - 1)));
            const Rational closed = hankel::last_row_minor_closed_form(k, m);
            if (g.json())
                out << Json{{"kind", "minor"}, {"k", k}, {"m", m}, {"minor", to_string(minor)},
                            {"closed_form", to_string(closed)}}.dump()
                    << '\n';
            else
                minors.add({std::to_string(k), std::to_string(m), to_string(minor), to_string(closed)});
        }
    if (!g.json()) {
        dets.print(out);
        out << '\n';
        minors.print(out);
    }
    return kOk;
}

// convergents ---------------------------------------------------------------

inline int cmd_convergents(const Globals& g, long n, std::ostream& out) {
    const auto pq = convergents_upto(n);
    TextTable tab({"n", "P_n", "Q_n", "closed_P", "closed_Q", "match"});
    bool all = true;
    for (long j = 1; j <= n; ++j) {
        const Parity parity = j % 2 == 1 ? Parity::Odd : Parity::Even;
        const long half = (j + 1) / 2;
        const RatPoly cp = closed_form_P(half, parity);
        const RatPoly cq = closed_form_Q(half, parity);
        const auto& [p, q] = pq[static_cast<std::size_t>(j)];
        const bool match = p == cp && q == cq;
        all = all && match;
        if (g.json())
            out << Json{{"n", j}, {"P", p.to_string()}, {"Q", q.to_string()}, {"closed_P", cp.to_string()},
                        {"closed_Q", cq.to_string()}, {"match", match}}.dump()
                << '\n';
        else
            tab.add({std::to_string(j), p.to_string(), q.to_string(), cp.to_string(), cq.to_string(), match ? "yes" : "NO"});
    }
    if (!g.json()) tab.print(out);
    return all ? kOk : kIdentityFailure;
}

// identities ----------------------------------------------------------------

inline int cmd_identities(const Globals& g, long kmax, std::ostream& out) {
    const auto reports = identity_sweep(kmax);
    long failed = 0;
    TextTable tab({"status", "checks", "suite"});
    for (const auto& r : reports) {
        failed += static_cast<long>(r.failures.size());
        if (g.json()) {
            Json f = Json::array();
            for (const auto& s : r.failures) f.push_back(s);
            out << Json{{"suite", r.name}, {"checks", r.checks}, {"ok", r.ok()}, {"failures", f}}.dump() << '\n';
        } else {
            tab.add({r.ok() ? "PASS" : "FAIL", std::to_string(r.checks), r.name});
        }
    }
    if (!g.json()) {
        tab.print(out);
        for (const auto& r : reports)
            for (const auto& s : r.failures) out << "  " << r.name << ": " << s << '\n';
        if (failed == 0)
            out << "all identities hold exactly (kmax = " << kmax << ")\n";
        else
            out << failed << " identity checks failed\n";
    }
    return failed == 0 ? kOk : kIdentityFailure;
}

// e1 ------------------------------------------------------------------------

inline int cmd_e1(const Globals& g, const std::string& xtext, long depth, std::ostream& out) {
    const BigReal x = BigReal::parse(xtext, g.prec);
    const numeval::EvalReport reports[] = {
        numeval::e1_series(x, g.prec),
        numeval::e1_cf(x, depth, g.prec),
        numeval::e1_quadrature(x, g.prec),
    };
    for (const auto& r : reports) {
        if (g.json())
            out << Json{{"x", fmt(r.x)}, {"value", fmt(r.value)}, {"method", numeval::method_name(r.method)},
                        {"terms", r.terms_or_depth}, {"est_err", fmt_short(r.est_error)}}.dump()
                << '\n';
        else
            out << "x=" << fmt(r.x) << " value=" << fmt(r.value) << " method=" << std::left << std::setw(10)
                << numeval::method_name(r.method) << " terms=" << std::setw(6) << r.terms_or_depth
                << " est_err=" << fmt_short(r.est_error) << std::right << '\n';
    }
    return kOk;
}

// fm ------------------------------------------------------------------------

inline int cmd_fm(const Globals& g, const std::string& xtext, long m_max, std::ostream& out) {
    const BigReal x = BigReal::parse(xtext, g.prec);
    const auto rows = numeval::f_iteration(x, m_max, g.prec);
    TextTable tab({"m", "F_m", "ratio", "ratio-1", "bits"});
    for (const auto& e : rows) {
        const BigReal dev = e.ratio - 1L;
        if (g.json())
            out << Json{{"m", e.index}, {"F_m", fmt(e.value)}, {"ratio", fmt(e.ratio)}, {"ratio_minus_1", fmt_short(dev)},
                        {"bits_left", e.bits_left}}.dump()
                << '\n';
        else
            tab.add({std::to_string(e.index), e.value.to_string(20), e.ratio.to_string(20), fmt_short(dev),
                     std::to_string(e.bits_left)});
    }
    if (!g.json()) tab.print(out);
    return kOk;
}

// lprime --------------------------------------------------------------------

inline lfunc::G1Route parse_route(const std::string& s) {
    if (s == "series") return lfunc::G1Route::Series;
    if (s == "cf") return lfunc::G1Route::ContinuedFraction;
    if (s == "quadrature") return lfunc::G1Route::Quadrature;
    return lfunc::G1Route::Auto;
}

inline int cmd_lprime(const Globals& g, const std::string& path, long T, const std::string& method, unsigned threads,
                      std::ostream& out) {
    const lfunc::CurveConfig c = lfunc::load_curve(path);
    const auto t0 = std::chrono::steady_clock::now();
    const lfunc::LPrimeResult r = lfunc::lprime_approx(c, T, g.prec, parse_route(method), numeval::Switchover{}, threads);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream wall;
    wall << std::fixed << std::setprecision(3) << secs;
    if (g.json()) {
        out << Json{{"curve", c.label}, {"N", c.conductor}, {"T", r.T}, {"value", fmt(r.value)},
                    {"tail_bound", fmt_short(r.tail)}, {"seconds", wall.str()}}.dump()
            << '\n';
        return kOk;
    }
    TextTable tab({"field", "value"});
    tab.add({"curve", c.label});
    tab.add({"N", std::to_string(c.conductor)});
    tab.add({"T", std::to_string(r.T)});
    tab.add({"L'(E,1)", fmt(r.value)});
    tab.add({"tail_bound", fmt_short(r.tail)});
    tab.add({"wall_seconds", wall.str()});
    tab.print(out);
    return kOk;
}

} // namespace detail

/// Runs the command line `args` (without the program name) and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Continued fractions of e^x E1(x) via the qd algorithm", "qdfrac"};
    app.require_subcommand(1);
    app.fallthrough();

    detail::Globals g;
    long prec_flag = 0;
    app.add_option("--output", g.output, "table or json")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--prec", prec_flag, "working precision in bits (default $QDFRAC_PREC_BITS or 128)")
        ->check(CLI::PositiveNumber);

    int qd_depth = 4, qd_width = 6;
    std::string series = "factorial";
    auto* qd = app.add_subcommand("qd", "dump the qd tableau of the factorial series");
    qd->add_option("--depth", qd_depth)->check(CLI::Range(1, 200));
    qd->add_option("--width", qd_width)->check(CLI::Range(1, 200));
    qd->add_option("--series", series)->check(CLI::IsMember({"factorial", "shifted"}));

    int cf_k = 3;
    auto* cfc = app.add_subcommand("cfcoeffs", "continued fraction coefficients d_0 .. d_2k");
    cfc->add_option("--k", cf_k)->check(CLI::Range(0, 200));
    cfc->add_option("--series", series)->check(CLI::IsMember({"factorial", "shifted"}));

    int hk_kmax = 6;
    auto* hk = app.add_subcommand("hankel", "factorial-matrix determinants and last-row minors");
    hk->add_option("--kmax", hk_kmax)->check(CLI::Range(1, 60));

    long cv_n = 6;
    auto* cv = app.add_subcommand("convergents", "convergents by recurrence and in closed form");
    cv->add_option("--n", cv_n)->check(CLI::Range(1L, 200L));

    long id_kmax = 8;
    auto* id = app.add_subcommand("identities", "sweep every exact identity up to kmax");
    id->add_option("--kmax", id_kmax)->check(CLI::Range(2L, 60L));

    std::string e1_x;
    long e1_depth = 8;
    auto* e1 = app.add_subcommand("e1", "evaluate E1(x) by series, continued fraction and quadrature");
    e1->add_option("--x", e1_x, "decimal or p/q")->required();
    e1->add_option("--depth", e1_depth, "starting continued fraction depth")->check(CLI::Range(1L, numeval::kMaxCfDepth));

    std::string fm_x = "1000";
    long fm_kmax = 4;
    auto* fm = app.add_subcommand("fm", "ratios F_{2j-1}/x and j F_{2j} of the expansion at infinity");
    fm->add_option("--x", fm_x);
    fm->add_option("--kmax", fm_kmax, "number of steps j")->check(CLI::Range(1L, 200L));

    std::string curve;
    long terms = 1000;
    std::string method = "auto";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    auto* lp = app.add_subcommand("lprime", "L'(E,1) of a rank-odd elliptic curve");
    lp->add_option("--curve", curve, "curve file")->required();
    lp->add_option("--terms", terms, "number of terms T")->check(CLI::Range(1L, 10000000L));
    lp->add_option("--method", method)->check(CLI::IsMember({"auto", "series", "cf", "quadrature"}));
    lp->add_option("--threads", threads)->check(CLI::Range(1u, 1024u));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        g.prec = detail::resolve_prec(prec_flag);
        if (*qd) return detail::cmd_qd(g, qd_depth, qd_width, series, out);
        if (*cfc) return detail::cmd_cfcoeffs(g, cf_k, series, out);
        if (*hk) return detail::cmd_hankel(g, hk_kmax, out);
        if (*cv) return detail::cmd_convergents(g, cv_n, out);
        if (*id) return detail::cmd_identities(g, id_kmax, out);
        if (*e1) return detail::cmd_e1(g, e1_x, e1_depth, out);
        if (*fm) return detail::cmd_fm(g, fm_x, fm_kmax, out);
        if (*lp) return detail::cmd_lprime(g, curve, terms, method, threads, out);
    } catch (const IdentityViolation& e) {
        err << "identity violated: " << e.what() << '\n';
        return kIdentityFailure;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const PrecisionExhausted& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const QDBreakdown& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace qdfrac::cli

#endif
