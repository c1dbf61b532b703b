#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

// Reference computations for the acceptance run.  Nothing here calls into
// the library: primes come from a plain odd-only sieve, sums are long double
// with Kahan compensation, point counts enumerate (x, y) pairs.
namespace oracle {

using u64 = std::uint64_t;

std::vector<u64> primes_up_to(u64 n);
std::vector<u64> first_primes(std::size_t n);

// sum over the list of f(p), long double Kahan
long double prime_sum(const std::vector<u64>& ps, const std::function<long double(u64)>& f);

// -gamma - sum_p log p/(p(p-1)) over the list
long double gamma_pnt(const std::vector<u64>& ps);

// p - #{(x, y) in F_p^2 : y^2 = x^3 + A x + B}
int trace(u64 A, u64 B, u64 p);

// sum over t mod p with p | disc(t) (bad) or not (good) of a_t(p)^r, where
// A(t), B(t) are evaluated by the callbacks (already reduced mod p)
mpz_class moment(u64 p, int r, bool good, const std::function<u64(u64)>& A, const std::function<u64(u64)>& B);

long long quadratic_sum(long long a, long long b, long long c, u64 p);

mpz_class catalan(unsigned l);                  // by the convolution recurrence
std::vector<mpz_class> eulerian(unsigned n);    // by the two-term recurrence

// g_ST and g_CM at x = p/(p+1)^2, sqrt(1-4x) = (p-1)/(p+1)
mpq_class g_st(u64 p);
mpq_class g_cm(u64 p);

} // namespace oracle
