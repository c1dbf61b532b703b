#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ldl/arith.hpp"
#include "ldl/error.hpp"
#include "ldl/parallel.hpp"
#include "ldl/primes.hpp"

using namespace ldl;

namespace {
bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
int euler_criterion(i64 a, u64 p) {
    u64 r = powmod(mod(a, p), (p - 1) / 2, p);
    return r == 0 ? 0 : r == 1 ? 1 : -1;
}
} // namespace

TEST_CASE("sieve agrees with trial division") {
    auto t = sieve_primes(20000);
    std::size_t k = 0;
    for (u64 n = 0; n <= 20000; ++n)
        if (trial_prime(n)) {
            REQUIRE(k < t.size());
            CHECK(t[k++] == n);
        }
    CHECK(k == t.size());
    CHECK(t.size() == 2262);
}

TEST_CASE("first_primes and prime counts") {
    auto t = first_primes(1000);
    CHECK(t.size() == 1000);
    CHECK(t.back() == 7919);
    CHECK(sieve_primes(1'000'000).size() == 78498);
    CHECK_THROWS_AS(first_primes(0), Error);
}

TEST_CASE("streamed blocks match the table") {
    auto t = sieve_primes(3'000'000);
    std::vector<u64> got;
    for_each_prime_block(1'000'000, 3'000'000, [&](std::span<const u64> b) { got.insert(got.end(), b.begin(), b.end()); });
    auto lo = std::lower_bound(t.begin(), t.end(), 1'000'000);
    CHECK(std::equal(lo, t.end(), got.begin(), got.end()));
}

TEST_CASE("is_prime, legendre, jacobi") {
    for (u64 n = 0; n < 5000; ++n) CHECK(is_prime(n) == trial_prime(n));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(18446744073709551615ULL));
    CHECK_FALSE(is_prime(3215031751ULL));
    for (u64 p : sieve_primes(200)) {
        if (p == 2) continue;
        for (i64 a = -30; a < 30; ++a) CHECK(legendre_symbol(a, p) == euler_criterion(a, p));
    }
    CHECK(jacobi_symbol(2, 15) == 1);
    CHECK(jacobi_symbol(7, 15) == -1);
}

TEST_CASE("two squares and primitive roots") {
    for (u64 p : sieve_primes(5000)) {
        if (p % 4 != 1) continue;
        auto [a, b] = two_squares(p);
        CHECK(a * a + b * b == p);
        CHECK(a % 2 == 1);
    }
    for (u64 p : sieve_primes(500)) {
        if (p == 2) continue;
        u64 g = primitive_root(p);
        for (auto [q, e] : factorize(p - 1)) CHECK(powmod(g, (p - 1) / q, p) != 1);
    }
}

TEST_CASE("euler phi and factorization") {
    for (u64 n = 1; n < 300; ++n) {
        u64 c = 0;
        for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == c);
        u64 prod = 1;
        for (auto [q, e] : factorize(n))
            for (int i = 0; i < e; ++i) prod *= q;
        CHECK(prod == n);
    }
}

TEST_CASE("theta error integral matches a direct Stieltjes sum") {
    auto t = sieve_primes(100000);
    const double X = 100000;
    double s = 0;
    for (u64 p : t) s += std::log((double)p) * (1.0 / (double)p - 1.0 / X);
    CHECK(theta_error_integral(t, {0, 1}, X) == doctest::Approx(s - std::log(X)).epsilon(1e-12));
}

TEST_CASE("gamma_pnt methods agree within the reported bounds") {
    auto t = first_primes(200000);
    auto c = gamma_pnt(Method::closed_form, t);
    auto i = gamma_pnt(Method::integral, t);
    CHECK(std::fabs(c.value - i.value) <= c.tail_bound + i.tail_bound);
    CHECK(c.value == doctest::Approx(-1.33258).epsilon(1e-5));
    for (u64 b : {3ULL, 4ULL}) {
        auto cc = gamma_pnt_ab(1, b, Method::closed_form, t);
        auto ii = gamma_pnt_ab(1, b, Method::integral, t);
        CHECK(std::fabs(cc.value - ii.value) <= cc.tail_bound + ii.tail_bound);
    }
}

TEST_CASE("class constants sum to gamma_pnt") {
    auto t = first_primes(100000);
    double s = 0;
    for (u64 a = 0; a < 8; ++a) s += class_log_constant(a, 8, t).value;
    // the p = 2 class enters at its limit log 2/2; the truncated integral has log 2 (1/2 - 1/X)
    const double X = (double)t.back();
    CHECK(s == doctest::Approx(gamma_pnt(Method::integral, t).value + std::log(2.0) / X).epsilon(1e-12));
}

TEST_CASE("reductions are independent of the thread count") {
    struct Acc {
        CompensatedSum s;
        void merge(const Acc& o) { s.add(o.s); }
    };
    auto run = [] {
        return reduce_primes<Acc>(5'000'000, [](std::span<const u64> ps, Acc& a) {
                   for (u64 p : ps) a.s.add(std::log((double)p) / (double)p);
               })
            .s.value();
    };
    set_thread_count(1);
    double one = run();
    set_thread_count(4);
    double four = run();
    set_thread_count(1);
    CHECK(one == four);
}

TEST_CASE("stream cap is enforced") {
    SieveLimits caps;
    caps.stream_cap = 1000;
    CHECK_THROWS_AS(for_each_prime_block(2, 5000, [](std::span<const u64>) {}, caps), Error);
}
