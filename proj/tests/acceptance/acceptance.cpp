// Acceptance run: one PASS/FAIL line per criterion, with the individual
// checks listed above it.  Usage: ldl_acceptance [--criterion N]...
//
// Exit status is nonzero when a check fails that is not in the list of
// known deviations below.  Known deviations still print FAIL.

#include <nlohmann/json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "ldl/constants.hpp"
#include "ldl/explicit_formula.hpp"
#include "ldl/family.hpp"
#include "ldl/lower_order.hpp"
#include "ldl/moments.hpp"
#include "ldl/parallel.hpp"
#include "ldl/primes.hpp"
#include "ldl/series.hpp"
#include "oracles.hpp"

using ldl::u64;

namespace {

// Checks that cannot pass with the published numbers; see the notes file
// kept with the project decisions.
const std::map<std::string, std::string> kKnown = {
    {"5.noncm_fresh_total",
     "printed gamma_0 formula evaluates to 0.6694, not the quoted 0.3315; fresh pieces sum to about -3.04"},
    {"6.noncm_3x12t_vs_published",
     "the published -2.703 is not the value of the expansion for this family (about -2.54)"},
};

class Criterion {
public:
    explicit Criterion(int n) : n_(n), t0_(std::chrono::steady_clock::now()) {}

    void check(const std::string& key, bool ok, const std::string& detail) {
        const std::string id = std::to_string(n_) + "." + key;
        const bool known = kKnown.count(id) > 0;
        const char* tag = ok ? (known ? "xpass" : "ok") : (known ? "KNOWN" : "FAIL");
        std::printf("  [%-5s] %-34s %s\n", tag, id.c_str(), detail.c_str());
        if (!ok) {
            ++failed_;
            if (!known) ++unexpected_;
        }
        std::fflush(stdout);
    }

    // |got - want| <= tol
    void near(const std::string& key, double got, double want, double tol, const std::string& what = "") {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s%.12g vs %.12g (|d| = %.3g, tol %.3g)", what.c_str(), got, want,
                      std::fabs(got - want), tol);
        check(key, std::fabs(got - want) <= tol, buf);
    }

    int finish(const char* title) {
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        std::printf("criterion %d: %s  %s  (%.1f s%s)\n\n", n_, failed_ ? "FAIL" : "PASS", title, s,
                    failed_ && !unexpected_ ? ", known deviations only" : "");
        std::fflush(stdout);
        return unexpected_;
    }

private:
    int n_;
    int failed_ = 0, unexpected_ = 0;
    std::chrono::steady_clock::time_point t0_;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

struct PrimeLists {
    std::vector<u64> first_1m, first_4m;
    PrimeLists() {
        first_4m = oracle::first_primes(4'000'000);
        first_1m.assign(first_4m.begin(), first_4m.begin() + 1'000'000);
    }
};

const PrimeLists& lists() {
    static PrimeLists l;
    return l;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// ---------------------------------------------------------------------------

int criterion1() {
    Criterion c(1);
    const auto& L = lists();
    auto lg = [](u64 p) { return std::log((long double)p); };
    auto lib = [&](const char* name, std::optional<ldl::Method> m = std::nullopt) {
        auto t = std::chrono::steady_clock::now();
        auto r = ldl::compute_constant(name, std::nullopt, m);
        std::printf("           %s: %.12f, %s, tail %.2e, %.1f s\n", name, r.value, r.truncation.label().c_str(),
                    r.tail_bound, seconds_since(t));
        return r;
    };
    auto rel = [](double v) { return 1e-12 * std::max(1.0, std::fabs(v)); };

    auto st0 = lib("gamma_st_0");
    c.near("st0_published", st0.value, 0.7691106216, 2e-8);
    c.near("st0_oracle", st0.value,
           (double)oracle::prime_sum(L.first_1m, [&](u64 p) { long double P = p; return 2 * lg(p) / (P * (P + 1)); }),
           rel(st0.value));

    auto sta_d = lib("gamma_st_atilde", ldl::Method::direct_sum);
    auto sta_s = lib("gamma_st_atilde", ldl::Method::moment_series);
    c.near("sta_published", sta_d.value, 0.4160714430, 1e-7);
    c.near("sta_series_vs_direct", sta_s.value, sta_d.value, 1e-10);
    c.near("sta_oracle", sta_d.value, (double)oracle::prime_sum(L.first_1m, [&](u64 p) {
               long double P = p;
               return (2 * P + 1) * (P - 1) * lg(p) / (P * (P + 1) * (P + 1) * (P + 1));
           }),
           rel(sta_d.value));

    auto st2 = lib("gamma_st_2");
    c.near("st2_published", st2.value, 1.1851820642, 1e-6);
    c.near("st2_oracle", st2.value, (double)oracle::prime_sum(L.first_4m, [&](u64 p) {
               long double P = p, q = P + 1;
               return (4 * P * P + 3 * P + 1) * lg(p) / (P * q * q * q);
           }),
           rel(st2.value));

    auto pnt = lib("gamma_pnt", ldl::Method::closed_form);
    auto pnt_i = lib("gamma_pnt", ldl::Method::integral);
    c.near("pnt_published", pnt.value, -1.33258, 5e-6);
    c.near("pnt_oracle", pnt.value, (double)oracle::gamma_pnt(L.first_1m), rel(pnt.value));
    c.near("pnt_integral_vs_closed", pnt_i.value, pnt.value, pnt_i.tail_bound + pnt.tail_bound);

    for (u64 b : {3ULL, 4ULL}) {
        const std::string name = "gamma_pnt_1" + std::to_string(b);
        auto cl = lib(name.c_str(), ldl::Method::closed_form);
        auto in = lib(name.c_str(), ldl::Method::integral);
        c.near(name + "_published", cl.value, b == 3 ? -2.375494 : -2.224837, 1e-5);
        c.near(name + "_integral_vs_closed", in.value, cl.value, in.tail_bound + cl.tail_bound);
        // 2 (1/phi(b) + sum_{p = 1 (b)} log p (1/p - 1/X) - log X/phi(b)), X the last prime
        const long double X = (long double)L.first_1m.back();
        long double s = oracle::prime_sum(L.first_1m, [&](u64 p) {
            return p % b == 1 ? lg(p) * (1.0L / p - 1.0L / X) : 0.0L;
        });
        c.near(name + "_oracle_integral", in.value, (double)(2 * (0.5L + s - std::log(X) / 2)), 1e-9);
    }

    for (u64 b : {3ULL, 4ULL}) {
        const std::string name = "gamma_cm_1" + std::to_string(b);
        auto r = lib(name.c_str());
        c.near(name + "_published", r.value, b == 3 ? 0.38184489 : 0.46633061, 1e-6);
        c.near(name + "_oracle", r.value, (double)oracle::prime_sum(L.first_1m, [&](u64 p) {
                   if (p % b != 1) return 0.0L;
                   long double q = (long double)p + 1;
                   return 2 * (3 * (long double)p + 1) * lg(p) / (q * q * q);
               }),
               rel(r.value));
    }

    auto cm0 = lib("gamma_cm0_ge5");
    c.near("cm0_ge5_published", cm0.value, 0.709919, 1e-4);
    c.near("cm0_ge5_oracle", cm0.value, (double)oracle::prime_sum(L.first_1m, [&](u64 p) {
               if (p < 5) return 0.0L;
               long double P = p;
               return 4 * lg(p) / (P * (P + 1));
           }),
           rel(cm0.value));

    auto g23 = lib("gamma_23");
    c.near("gamma23_published", g23.value, 1.4255554, 1e-6);
    c.near("gamma23_exact", g23.value, (double)(std::log(2.0L) + 2 * std::log(3.0L) / 3), 1e-15);

    auto cm2 = lib("gamma_cm2_13");
    c.near("cm2_13_published", cm2.value, 0.6412881898, 1e-6);
    c.near("cm2_13_oracle", cm2.value, (double)oracle::prime_sum(L.first_4m, [&](u64 p) {
               if (p % 3 != 1) return 0.0L;
               long double P = p, q = P + 1;
               return 2 * (5 * P * P + 2 * P + 1) * lg(p) / (P * q * q * q);
           }),
           rel(cm2.value));
    return c.finish("constants at the published truncations");
}

// ---------------------------------------------------------------------------

int criterion2() {
    Criterion c(2);
    auto rep = ldl::exact_cancellation_check(10000);
    c.check("symbolic_zero", rep.symbolic_zero, "numerator polynomial is identically zero");
    // independent per-prime evaluation of the numerator
    bool all = true;
    for (u64 p : oracle::primes_up_to(10000)) {
        mpz_class P = (unsigned long)p;
        mpz_class v = -2 * (P + 1) * (P + 1) + (4 * P * P + 3 * P + 1) - (2 * P + 1) * (P - 1);
        all = all && v == 0 && ldl::st_combination_summand(p).is_zero();
    }
    c.check("per_prime_zero", all && rep.all_primes_zero, "p <= 10^4, library and direct numerator");
    auto neg = ldl::exact_cancellation_check(100, 1);
    c.check("perturbed_nonzero", !neg.symbolic_zero && !neg.all_primes_zero, "perturbed combination is caught");

    int gmis = 0, gn = 0;
    for (u64 p : oracle::primes_up_to(500)) {
        gmis += ldl::g_moment_at_prime(ldl::MomentKind::sato_tate, p).q() != oracle::g_st(p);
        gmis += ldl::g_moment_at_prime(ldl::MomentKind::cm, p).q() != oracle::g_cm(p);
        gn += 2;
    }
    c.check("g_closed_forms", gmis == 0, std::to_string(gn - gmis) + "/" + std::to_string(gn) + " exact");

    int pl = 0, pn = 0, ctrl = 0;
    for (unsigned l = 1; l <= 4; ++l)
        for (long i = 1; i <= 10; ++i) {
            auto x = ldl::RationalValue::of(i, 11 + 2 * i);
            pl += ldl::polylog_identity_check(l, x);
            ctrl += !ldl::polylog_identity_check(l, x, ldl::RationalValue::of(2, 1));
            ++pn;
        }
    c.check("polylog_identities", pl == pn, std::to_string(pl) + "/" + std::to_string(pn) + " exact");
    c.check("polylog_negative_control", ctrl == pn, "scaled right side rejected " + std::to_string(ctrl) + " times");
    int em = 0;
    for (unsigned r = 1; r <= 8; ++r) {
        auto got = ldl::eulerian_row(r);
        auto want = oracle::eulerian(r);
        for (unsigned j = 0; j < want.size(); ++j) em += got[j] != want[j];
    }
    c.check("eulerian_rows", em == 0, "rows 1..8 against the recurrence");

    int bm = 0;
    for (unsigned l = 0; l <= 12; ++l) bm += ldl::hecke_power_expansion(2 * l).back() != oracle::catalan(l);
    c.check("b2l0_catalan", bm == 0, "l = 0..12");
    return c.finish("exact identities");
}

// ---------------------------------------------------------------------------

u64 horner(const ldl::IntPoly& f, u64 t, u64 p) {
    const auto& co = f.coeffs();
    long long r = 0;
    for (auto it = co.rbegin(); it != co.rend(); ++it) {
        long long k = *it % (long long)p;
        if (k < 0) k += (long long)p;
        r = (long long)(((unsigned long long)r * t + (unsigned long long)k) % p);
    }
    return (u64)r;
}

int criterion3() {
    Criterion c(3);
    long eq = 0, total = 0;
    for (auto& name : ldl::builtin_family_names()) {
        auto fam = ldl::builtin_family(name);
        const int mmax = name == "noncm_3x12t" ? 6 : 2;
        long fam_bad = 0, fam_total = 0;
        for (u64 p : oracle::primes_up_to(300)) {
            if (p < 5) continue;
            auto A = [&](u64 t) { return horner(fam.A, t, p); };
            auto B = [&](u64 t) { return horner(fam.B, t, p); };
            for (int r = 0; r <= 2; ++r) {
                ++fam_total;
                fam_bad += ldl::closed_form_moment(fam, p, r, ldl::Side::good) != oracle::moment(p, r, true, A, B);
            }
            for (int m = 0; m <= mmax; ++m) {
                ++fam_total;
                fam_bad += ldl::closed_form_moment(fam, p, m, ldl::Side::bad) != oracle::moment(p, m, false, A, B);
            }
        }
        c.check("moments_" + name, fam_bad == 0,
                std::to_string(fam_total - fam_bad) + "/" + std::to_string(fam_total) + " equal");
        eq += fam_total - fam_bad;
        total += fam_total;
    }
    std::mt19937_64 rng(20070521);
    auto ps = oracle::primes_up_to(200);
    int qb = 0, qn = 0;
    while (qn < 500) {
        u64 p = ps[1 + rng() % (ps.size() - 1)];
        long long a = (long long)(rng() % 2001) - 1000, b = (long long)(rng() % 2001) - 1000,
                  cc = (long long)(rng() % 2001) - 1000;
        if (a % (long long)p == 0 && b % (long long)p == 0) continue;
        ++qn;
        qb += ldl::quadratic_legendre_sum(a, b, cc, p) != oracle::quadratic_sum(a, b, cc, p);
    }
    c.check("quadratic_legendre", qb == 0, std::to_string(qn - qb) + "/500 equal");
    std::printf("           %ld exact moment equalities in total\n", eq);
    return c.finish("closed-form moments against point counts");
}

// ---------------------------------------------------------------------------

int criterion4() {
    Criterion c(4);
    struct Row { const char* key; double main, sieve; };
    const Row rows[] = {{"1_1", .3437, .000446}, {"1_2", .4203, .000699}, {"2_2", .5670, .000761},
                        {"3_2", .1413, .000125}, {"6_2", .2620, .000199}};
    for (auto& r : rows) {
        auto m = ldl::compute_constant(std::string("gamma_cm_atilde_") + r.key);
        auto s = ldl::compute_constant(std::string("gamma_cm_sieve_") + r.key);
        c.near(std::string("atilde_main_") + r.key, m.value, r.main, .0367);
        c.near(std::string("atilde_sieve_") + r.key, s.value, r.sieve, 1e-4);
    }
    auto s012 = ldl::compute_constant("gamma_cm_sieve_012");
    c.near("sieve_012", s012.value, -.004288, 1e-4);
    auto r1 = ldl::compute_constant("gamma_rank1_atilde");
    auto r0 = ldl::compute_constant("gamma_rank0_atilde");
    c.near("rank1_atilde", r1.value, -0.1109, .05);
    c.near("rank0_atilde", r0.value, 0.6279, .05);
    c.check("rank1_below_rank0", r1.value < r0.value, fmt("%.6f < %.6f", r1.value, r0.value));

    // per-prime A-tilde from point counts, first 150 primes
    auto fam = ldl::builtin_family("cm_b1_kappa2_b2");
    auto lib = ldl::family_constant_Atilde(fam, 150);
    const ldl::IntPoly D = fam.D();
    long double om = 0, os = 0;
    for (u64 p : oracle::first_primes(150)) {
        if (p < 5 || fam.forced_zero(p)) continue;
        long double P = p, sp = std::sqrt(P), at = 0;
        for (u64 t = 0; t < p; ++t) {
            u64 a = horner(fam.A, t, p), b = horner(fam.B, t, p);
            if ((4 * (a * a % p * a % p) + 27 * (b * b % p)) % p == 0) continue;
            long double lam = oracle::trace(a, b, p) / sp;
            at += lam * lam * lam / (P + 1 - lam * sp);
        }
        long double w = at * P * sp * (P - 1) * std::log(P) / (P * (P + 1) * (P + 1) * (P + 1));
        om += w;
        // H_sieve = nu/(p^3 - nu), nu = roots of D mod p^3 (simple roots lift uniquely)
        u64 nu = 0;
        for (u64 t = 0; t < p; ++t) nu += horner(D, t, p) == 0;
        long double pk = P * P * P;
        os += w * nu / (pk - nu);
    }
    c.near("atilde_oracle_main", lib.main, (double)om, 1e-12);
    c.near("atilde_oracle_sieve", lib.sieve, (double)os, 1e-15);
    return c.finish("family A-tilde constants");
}

// ---------------------------------------------------------------------------

int criterion5() {
    Criterion c(5);
    const std::pair<const char*, double> cm[] = {{"cm_b1_kappa1", -2.124}, {"cm_b1_kappa2", -2.201},
                                                 {"cm_b1_kappa2_b2", -2.347}, {"cm_b1_kappa2_b3", -1.921},
                                                 {"cm_b1_kappa2_b6", -2.042}};
    for (auto& [name, want] : cm) {
        auto a = ldl::aggregate_lower_order(name);
        c.near(std::string(name) + "_total", a.total, want, 0.05);
    }
    auto fresh = ldl::aggregate_lower_order("noncm_3x12t");
    c.near("noncm_fresh_total", fresh.total, -2.703, 0.01);
    ldl::AggregateOptions co;
    co.mode = ldl::AggregateMode::cited;
    auto cited = ldl::aggregate_lower_order("noncm_3x12t", co);
    double s = 0;
    for (auto& p : cited.pieces) s += p.weight * p.cited_value.value_or(p.value);
    c.near("noncm_cited_total", cited.total, -2.703, 0.01);
    c.near("noncm_equals_cited_pieces", -2.703, s, 5e-4);

    auto cusp = ldl::aggregate_lower_order("cusp_model");
    auto g = ldl::compute_constant("gamma_pnt");
    c.check("cusp_equals_gamma_pnt", cusp.total == g.value && ldl::st_combination_numerator().empty(),
            fmt("%.15g == %.15g", cusp.total, g.value));
    return c.finish("aggregated lower-order coefficients");
}

// ---------------------------------------------------------------------------

int criterion6() {
    Criterion c(6);
    const auto phi = ldl::builtin_test_pair("gaussian_truncated:2");
    const std::vector<double> Ls = {50, 100, 200};
    const std::size_t atilde_primes = 2000;
    std::map<std::string, double> published;
    for (auto& f : ldl::aggregate_families()) {
        if (f == "cusp_model") continue;
        ldl::AggregateOptions o;
        o.mode = ldl::AggregateMode::cited;
        published[f] = *ldl::aggregate_lower_order(f, o).paper_value;
    }
    ldl::EvaluateOptions eo;
    eo.prime_limit = 100'000'000;
    eo.tail = ldl::TailModel::pnt;

    auto run = [&](const std::string& name, const ldl::MomentModel& m, double expansion,
                   std::optional<double> published_c) {
        auto t = std::chrono::steady_clock::now();
        auto runs = ldl::evaluate_S_batch(m, phi, Ls, eo);
        auto fit = ldl::fit_residuals(runs, phi, expansion);
        std::printf("           %s: c_L = %.5f %.5f %.5f, expansion %.5f, %.1f s\n", name.c_str(),
                    runs[0].lower_order_coefficient, runs[1].lower_order_coefficient,
                    runs[2].lower_order_coefficient, expansion, seconds_since(t));
        const double cL = runs.back().lower_order_coefficient;
        c.near(name + "_vs_expansion", cL, expansion, 0.1, "c_200 ");
        if (published_c) c.near(name + "_vs_published", cL, *published_c, 0.1, "c_200 ");
        bool shrink = std::fabs(fit.residual[1]) < std::fabs(fit.residual[0]) &&
                      std::fabs(fit.residual[2]) < std::fabs(fit.residual[1]);
        c.check(name + "_residual", shrink && fit.exponent >= 1.5,
                fmt("|res| %.2e %.2e %.2e", std::fabs(fit.residual[0]), std::fabs(fit.residual[1]),
                    std::fabs(fit.residual[2])) + fmt(" (fit exponent %.3f)", fit.exponent));
    };

    for (auto& name : ldl::builtin_family_names()) {
        auto fam = ldl::builtin_family(name);
        auto ex = ldl::expansion_coefficients(fam, 1'000'000, atilde_primes);
        std::optional<double> published_c;
        if (published.count(name)) published_c = published[name];
        run(name, ldl::family_model(fam, atilde_primes), ex.total, published_c);
    }
    run("cusp_model", ldl::cusp_model(1'000'000), ldl::compute_constant("gamma_pnt").value, std::nullopt);

    const double b1 = ldl::rank_bias(ldl::builtin_family("rank1_36t"), 1e5);
    const double b0 = ldl::rank_bias(ldl::builtin_family("rank0_36t"), 1e5);
    c.near("rank_bias_rank1", b1, 1.0, 0.2);
    c.near("rank_bias_rank0", b0, 0.0, 0.2);
    return c.finish("explicit-formula asymptotics");
}

// ---------------------------------------------------------------------------

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(LDL_CLI) + " " + args;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return {};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    pclose(f);
    return out;
}

std::string strip_wall_time(const std::string& s) {
    static const std::regex re("\"wall_time_s\": *[^,}\\n]*");
    return std::regex_replace(s, re, "\"wall_time_s\": -");
}

template <class T>
bool same_bits(const T& a, const T& b) {
    return std::memcmp(&a, &b, sizeof(T)) == 0;
}

int criterion7() {
    Criterion c(7);
    auto at_threads = [](unsigned n, auto fn) {
        ldl::set_thread_count(n);
        auto r = fn();
        ldl::set_thread_count(1);
        return r;
    };
    auto st = [] { return ldl::compute_constant("gamma_st_0").value; };
    c.check("constant_threads", same_bits(at_threads(1, st), at_threads(4, st)), "gamma_st_0, 1 vs 4 threads");

    auto at = [] { return ldl::family_constant_Atilde(ldl::builtin_family("rank1_36t"), 1500); };
    auto a1 = at_threads(1, at), a4 = at_threads(4, at);
    c.check("atilde_threads", same_bits(a1.main, a4.main) && same_bits(a1.sieve, a4.sieve), "rank1 A-tilde, 1 vs 4 threads");

    auto es = [] {
        ldl::EvaluateOptions o;
        o.prime_limit = 10'000'000;
        o.tail = ldl::TailModel::pnt;
        auto r = ldl::evaluate_S_batch(ldl::family_model(ldl::builtin_family("cm_b1_kappa2_b3"), 300),
                                       ldl::builtin_test_pair("gaussian_truncated:2"), {60, 120}, o);
        return std::make_pair(r[0].total, r[1].total);
    };
    auto e1 = at_threads(1, es), e4 = at_threads(4, es);
    c.check("explicit_threads", same_bits(e1.first, e4.first) && same_bits(e1.second, e4.second),
            "evaluate_S, 1 vs 4 threads");

    const std::string cmds[] = {
        "constants --name gamma_st_atilde --first-primes 200000 --method both",
        "family --family rank0_36t --prime-limit 200 --moments 3",
        "explicit --family cm_b1_kappa1 --phi fejer:0.5 --logR 30 --logR 60 --atilde-primes 500",
    };
    for (auto& cmd : cmds) {
        auto r1 = run_cli(cmd + " --threads 1");
        auto r1b = run_cli(cmd + " --threads 1");
        auto r3 = run_cli(cmd + " --threads 3");
        const std::string tag = cmd.substr(0, cmd.find(' '));
        bool parsed = !r1.empty() && nlohmann::json::accept(r1);
        c.check("cli_rerun_" + tag, parsed && strip_wall_time(r1) == strip_wall_time(r1b),
                "two runs byte-identical apart from wall_time_s");
        bool same_results = false;
        if (parsed && nlohmann::json::accept(r3)) {
            auto j1 = nlohmann::json::parse(r1), j3 = nlohmann::json::parse(r3);
            same_results = j1["results"].dump() == j3["results"].dump() &&
                           j1["manifest"]["output_sha256"] == j3["manifest"]["output_sha256"];
        }
        c.check("cli_threads_" + tag, same_results, "results and output digest equal for 1 vs 3 threads");
    }
    return c.finish("determinism");
}

} // namespace

int main(int argc, char** argv) {
    setvbuf(stdout, nullptr, _IOLBF, 0);
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
            pick.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
            return 2;
        }
    }
    int (*const all[])() = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7};
    int unexpected = 0;
    for (int n = 1; n <= 7; ++n)
        if (pick.empty() || pick.count(n)) unexpected += all[n - 1]();
    if (unexpected) std::printf("%d unexpected failure(s)\n", unexpected);
    return unexpected ? 1 : 0;
}
