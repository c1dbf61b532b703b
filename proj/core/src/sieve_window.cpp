#include "ldl/sieve_window.hpp"

#include <cmath>

#include "ldl/error.hpp"
#include "ldl/moments.hpp"
#include "ldl/primes.hpp"

namespace ldl {

namespace {

// Largest |f(t)| on [lo, hi], with overflow detection.
long double max_abs(const IntPoly& f, u64 lo, u64 hi) {
    long double m = 0;
    for (u64 t : {lo, hi}) {
        long double v = 0, x = 1;
        for (i64 c : f.coeffs()) {
            v += (long double)c * x;
            x *= (long double)t;
        }
        m = std::max(m, std::fabs(v));
    }
    // interior extremum of a quadratic
    if (f.degree() == 2 && f[2] != 0) {
        long double tv = -(long double)f[1] / (2.0L * f[2]);
        if (tv > lo && tv < hi)
            m = std::max(m, std::fabs((long double)f[0] - (long double)f[1] * f[1] / (4.0L * f[2])));
    }
    return m;
}

} // namespace

SieveWindow sieve_window(const FamilySpec& fam, u64 N, double logR) {
    if (N < 1) throw Error(ErrorKind::domain, "sieve_window: N must be >= 1");
    if (N > 100'000'000) throw Error(ErrorKind::resource, "sieve_window: N above 1e8");
    SieveWindow w;
    w.N = N;
    w.logR = logR;
    const u64 lo = N, hi = 2 * N;
    w.good_t.assign(hi - lo + 1, 1);
    if (!fam.k_infinite()) {
        for (const auto& f : fam.D_factors) {
            for (u64 t : {lo, hi}) (void)f.eval((i64)t);  // width check
            long double m = max_abs(f, lo, hi);
            u64 pmax = (u64)std::floor(std::pow(m, 1.0L / fam.k)) + 1;
            auto primes = sieve_primes(std::max<u64>(pmax, 2));
            for (u64 p : primes) {
                long double pk = std::pow((long double)p, fam.k);
                if (pk > m) break;
                const u64 q = (u64)pk;
                for (u64 r : roots_mod_prime_power(f, p, fam.k)) {
                    u64 first = lo + (r + q - lo % q) % q;
                    for (u64 t = first; t <= hi; t += q) w.good_t[t - lo] = 0;
                }
            }
        }
    }
    for (auto g : w.good_t) w.W += g;
    return w;
}

double sieve_density(const FamilySpec& fam, u64 P) {
    if (fam.k_infinite()) return 1.0;
    double d = 1.0;
    for (u64 p : sieve_primes(std::max<u64>(P, 2))) {
        u64 nu = count_roots_mod_prime_power(fam.D(), p, fam.k);
        d *= 1.0 - (double)nu / std::pow((double)p, fam.k);
    }
    return d;
}

} // namespace ldl
