#include "verify.hpp"

#include <cmath>
#include <random>

#include "ldl/error.hpp"
#include "ldl/family.hpp"
#include "ldl/moments.hpp"
#include "ldl/primes.hpp"
#include "ldl/series.hpp"
#include "ldl/sieve_window.hpp"

namespace ldl::cli {

namespace {

constexpr std::size_t kMaxListed = 20;

struct Recorder {
    SuiteResult r;
    explicit Recorder(std::string name) { r.name = std::move(name); }
    void check(bool ok, const std::string& what) {
        ++r.checks;
        if (ok) return;
        ++r.failure_count;
        if (r.failures.size() < kMaxListed) r.failures.push_back(what);
    }
};

SuiteResult appendix_b(const VerifyOptions& opt) {
    Recorder rec("appendixB");
    const auto primes = sieve_primes(std::max<u64>(opt.prime_limit, 5));
    for (auto& name : builtin_family_names()) {
        FamilySpec fam = builtin_family(name);
        if (fam.closed_form == ClosedForm::none) continue;
        const int bad_max = fam.closed_form == ClosedForm::noncm_3x12t ? 6 : 2;
        for (u64 p : primes) {
            if (p < 5) continue;
            MomentHistogram h(fiber_values(fam, p, Strategy::naive));
            for (int r = 0; r <= 2; ++r) {
                mpz_class want = closed_form_moment(fam, p, r, Side::good);
                if (opt.inject_fault && r == 1) want += 1;
                rec.check(h.moment(r, true) == want,
                          name + " p=" + std::to_string(p) + " r=" + std::to_string(r) + " good: brute " +
                              h.moment(r, true).get_str() + " closed " + want.get_str());
            }
            for (int m = 0; m <= bad_max; ++m) {
                mpz_class want = closed_form_moment(fam, p, m, Side::bad);
                rec.check(h.moment(m, false) == want,
                          name + " p=" + std::to_string(p) + " m=" + std::to_string(m) + " bad: brute " +
                              h.moment(m, false).get_str() + " closed " + want.get_str());
            }
        }
    }
    std::mt19937_64 rng(20070521);
    const auto small = sieve_primes(200);
    std::uniform_int_distribution<std::size_t> pick(1, small.size() - 1);   // odd primes
    std::uniform_int_distribution<i64> coef(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        u64 p = small[pick(rng)];
        i64 a = coef(rng), b = coef(rng), c = coef(rng);
        if (a % (i64)p == 0 && b % (i64)p == 0) {   // constant polynomial: no closed form
            --i;
            continue;
        }
        i64 fast = quadratic_legendre_sum(a, b, c, p), slow = quadratic_legendre_sum_brute(a, b, c, p);
        rec.check(fast == slow, "legendre sum a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" +
                                    std::to_string(c) + " p=" + std::to_string(p));
    }
    return rec.r;
}

SuiteResult identities(const VerifyOptions& opt) {
    Recorder rec("identities");
    const long perturb = opt.inject_fault ? 1 : 0;
    rec.check(st_combination_numerator(perturb).empty(), "cancellation numerator is not the zero polynomial");
    for (u64 p : sieve_primes(10'000))
        rec.check(st_combination_summand(p, perturb).is_zero(), "cancellation summand nonzero at p=" + std::to_string(p));

    for (u64 p : sieve_primes(500)) {
        const RationalValue x = RationalValue::of((long)p, (long)((p + 1) * (p + 1)));
        // sqrt(1 - 4x) = (p-1)/(p+1): sum_{l>=2} C_l x^l = 1/p - x, sum_{l>=2} D_l x^l = 2/(p-1) - 2x
        const RationalValue st = RationalValue::of(1, (long)p) - x;
        const RationalValue cm = RationalValue::of(2, (long)p - 1) - x * RationalValue(2);
        rec.check(g_moment_at_prime(MomentKind::sato_tate, p) == st, "g_ST closed form p=" + std::to_string(p));
        rec.check(g_moment_at_prime(MomentKind::cm, p) == cm, "g_CM closed form p=" + std::to_string(p));
    }

    const RationalValue scale = opt.inject_fault ? RationalValue::of(3, 2) : RationalValue(1);
    for (unsigned l = 1; l <= 4; ++l)
        for (long i = 1; i <= 10; ++i) {
            const RationalValue x = RationalValue::of(i, 11 + 2 * i);
            rec.check(polylog_identity_check(l, x, scale),
                      "polylog identity l=" + std::to_string(l) + " x=" + x.str());
        }

    for (unsigned l = 0; l <= 12; ++l) {
        auto b = hecke_power_expansion(2 * l);
        rec.check(!b.empty() && b.back() == catalan(l), "b_{2l,0} != C_l at l=" + std::to_string(l));
    }
    return rec.r;
}

SuiteResult sieve(const VerifyOptions&) {
    Recorder rec("sieve");
    for (auto& name : builtin_family_names()) {
        FamilySpec fam = builtin_family(name);
        if (fam.k_infinite()) continue;
        // multiplicativity of nu_D across coprime prime powers
        const u64 qs[] = {5, 7, 11};
        for (u64 a : qs)
            for (u64 b : qs) {
                if (a >= b) continue;
                u64 da = a * a, db = b * b;
                rec.check(nu_D(fam, da * db) == nu_D(fam, da) * nu_D(fam, db),
                          name + " nu_D not multiplicative at " + std::to_string(da) + "*" + std::to_string(db));
            }
        // window density against the Euler product
        const u64 N = 200'000;
        auto w = sieve_window(fam, N);
        double kept = 0;
        for (auto g : w.good_t) kept += g;
        const double emp = kept / (double)w.good_t.size();
        const double dens = sieve_density(fam, 10'000);
        rec.check(std::fabs(emp - dens) < 0.01, name + " window density " + std::to_string(emp) +
                                                    " vs Euler product " + std::to_string(dens));
    }
    return rec.r;
}

SuiteResult bias(const VerifyOptions&) {
    Recorder rec("bias");
    const double X = 100'000;
    const double r1 = rank_bias(builtin_family("rank1_36t"), X);
    const double r0 = rank_bias(builtin_family("rank0_36t"), X);
    rec.check(std::fabs(r1 - 1) < 0.2, "rank1_36t average " + std::to_string(r1) + " not within 0.2 of 1");
    rec.check(std::fabs(r0) < 0.2, "rank0_36t average " + std::to_string(r0) + " not within 0.2 of 0");
    rec.check(r1 > r0, "rank bias ordering");
    return rec.r;
}

} // namespace

std::vector<std::string> verify_suite_names() { return {"appendixB", "identities", "sieve", "bias"}; }

std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyOptions& opt) {
    std::vector<SuiteResult> out;
    auto want = [&](const char* n) { return suite == "all" || suite == n; };
    if (want("appendixB")) out.push_back(appendix_b(opt));
    if (want("identities")) out.push_back(identities(opt));
    if (want("sieve")) out.push_back(sieve(opt));
    if (want("bias")) out.push_back(bias(opt));
    if (out.empty()) {
        std::string known = " all";
        for (auto& n : verify_suite_names()) known += " " + n;
        throw Error(ErrorKind::config, "unknown suite '" + suite + "'; known:" + known);
    }
    return out;
}

nlohmann::json suite_to_json(const SuiteResult& r) {
    return {{"suite", r.name},
            {"checks", r.checks},
            {"failures", r.failure_count},
            {"passed", r.passed()},
            {"failure_samples", r.failures},
            {"truncation", "exact"},
            {"tail_bound", 0}};
}

} // namespace ldl::cli
