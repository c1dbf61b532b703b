#include <doctest.h>

#include <cmath>
#include <complex>

#include "ldl/error.hpp"
#include "ldl/primes.hpp"
#include "ldl/series.hpp"

using namespace ldl;

TEST_CASE("catalan and binomials against recurrences") {
    std::vector<mpz_class> c{1};
    for (unsigned n = 0; n < 30; ++n) {
        mpz_class s = 0;
        for (unsigned i = 0; i <= n; ++i) s += c[i] * c[n - i];
        c.push_back(s);
    }
    for (unsigned l = 0; l <= 30; ++l) CHECK(catalan(l) == c[l]);
    std::vector<mpz_class> row{1};
    for (unsigned n = 1; n <= 40; ++n) {
        std::vector<mpz_class> next(n + 1, 1);
        for (unsigned k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
        row = next;
    }
    for (unsigned k = 0; k <= 40; ++k) CHECK(binomial(40, k) == row[k]);
    CHECK(central_binomial(4) == 70);
    CHECK(moment_value(MomentKind::sato_tate, 3) == 5);
    CHECK(moment_value(MomentKind::cm, 3) == 20);
}

TEST_CASE("g functions against their moment series") {
    for (double x : {0.01, 0.05, 0.1, 0.2}) {
        for (auto k : {MomentKind::sato_tate, MomentKind::cm}) {
            double s = 0, xl = x;
            for (unsigned l = 1; l < 400; ++l) {
                xl *= x;
                s += moment_value(k, l + 1).get_d() * xl;
            }
            CHECK(g_moment(k, x) == doctest::Approx(s).epsilon(1e-12));
            CHECK(g_series(k, x, 400) == doctest::Approx(s).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact g at x = p/(p+1)^2") {
    for (u64 p : {2ULL, 3ULL, 5ULL, 101ULL}) {
        const double x = (double)p / ((double)(p + 1) * (double)(p + 1));
        auto st = g_moment_at_prime(MomentKind::sato_tate, p);
        auto cm = g_moment_at_prime(MomentKind::cm, p);
        CHECK(st.to_double() == doctest::Approx(g_moment(MomentKind::sato_tate, x)).epsilon(1e-13));
        CHECK(cm.to_double() == doctest::Approx(g_moment(MomentKind::cm, x)).epsilon(1e-13));
        // sqrt(1 - 4x) = (p-1)/(p+1): (1 - s)/(2x) - 1 - x
        RationalValue X = RationalValue::of((long)p, (long)((p + 1) * (p + 1)));
        RationalValue s = RationalValue::of((long)p - 1, (long)p + 1);
        CHECK(st == (RationalValue(1) - s) / (RationalValue(2) * X) - RationalValue(1) - X);
    }
    CHECK_THROWS_AS(g_moment(MomentKind::sato_tate, RationalValue::of(1, 7)), Error);
}

TEST_CASE("eulerian numbers and polylogs") {
    std::vector<std::vector<mpz_class>> E{{1}};
    for (unsigned n = 1; n <= 10; ++n) {
        std::vector<mpz_class> r(n, 0);
        for (unsigned k = 0; k < n; ++k) {
            if (k < E[n - 1].size()) r[k] += (k + 1) * E[n - 1][k];
            if (k >= 1 && k - 1 < E[n - 1].size()) r[k] += (n - k) * E[n - 1][k - 1];
        }
        E.push_back(r);
    }
    for (unsigned n = 1; n <= 10; ++n) {
        auto got = eulerian_row(n);
        for (unsigned k = 0; k < n; ++k) CHECK(got[k] == E[n][k]);
    }
    for (unsigned r = 0; r <= 6; ++r)
        for (double x : {0.1, 0.3, 0.5}) {
            double s = 0, xk = 1;
            for (int k = 1; k < 2000; ++k) {
                xk *= x;
                s += std::pow((double)k, (double)r) * xk;
            }
            CHECK(polylog_neg(r, x) == doctest::Approx(s).epsilon(1e-11));
        }
    CHECK(polylog_neg(2, RationalValue::of(1, 2)) == RationalValue(6));
}

TEST_CASE("polylog identities hold exactly and fail when perturbed") {
    for (unsigned l = 1; l <= 4; ++l)
        for (long i = 1; i <= 10; ++i) {
            RationalValue x = RationalValue::of(i, 11 + 2 * i);
            CHECK(polylog_identity_check(l, x));
            CHECK_FALSE(polylog_identity_check(l, x, RationalValue::of(3, 2)));
        }
}

TEST_CASE("hecke expansion reproduces lambda^r") {
    for (unsigned r = 0; r <= 12; ++r) {
        auto b = hecke_power_expansion(r);
        for (double th : {0.3, 1.1, 2.5}) {
            double lam = 2 * std::cos(th), s = 0;
            for (unsigned k = 0; k <= r / 2; ++k) {
                unsigned m = r - 2 * k;
                s += b[k].get_d() * std::sin((m + 1) * th) / std::sin(th);
            }
            CHECK(s == doctest::Approx(std::pow(lam, (double)r)).epsilon(1e-10));
        }
    }
}

TEST_CASE("ST cancellation numerator") {
    CHECK(st_combination_numerator().empty());
    CHECK_FALSE(st_combination_numerator(1).empty());
    for (u64 p : sieve_primes(1000)) CHECK(st_combination_summand(p).is_zero());
    CHECK_FALSE(st_combination_summand(7, 1).is_zero());
}

TEST_CASE("prime sums P(l)") {
    auto t = first_primes(20000);
    for (unsigned l : {2u, 5u}) {
        double s = 0;
        for (u64 p : t) {
            double P = (double)p, x = P / ((P + 1) * (P + 1));
            s += (P - 1) * std::log(P) / (P + 1) * std::pow(x, (double)l);
        }
        auto got = p_ell_sum(l, t.view());
        CHECK(got.value == doctest::Approx(s).epsilon(1e-12));
        CHECK(got.tail_bound >= 0);
    }
    // sum_l C_l P(l) converges to sum_p (p-1) log p/(p+1) g_ST(p/(p+1)^2)
    double g = 0;
    for (u64 p : t) {
        double P = (double)p;
        g += (P - 1) * std::log(P) / (P + 1) * g_moment(MomentKind::sato_tate, P / ((P + 1) * (P + 1)));
    }
    CHECK(moment_weighted_p_sum(MomentKind::sato_tate, 200, t.view()).value == doctest::Approx(g).epsilon(1e-10));
}
