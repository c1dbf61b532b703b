#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "ldl/family.hpp"

namespace ldl {

enum class Reduction { good, additive, split, nonsplit };
const char* to_string(Reduction r);

// a_t(p) = -sum_x (x^3 + A(t) x + B(t) / p), for every t, including t where
// the model is not minimal.  Returns 0 on forced-zero primes.
int a_t_p(const FamilySpec& fam, i64 t, u64 p);

Reduction reduction_type(const FamilySpec& fam, i64 t, u64 p);

// How the full vector a_0(p), ..., a_{p-1}(p) is produced.
enum class Strategy {
    automatic,
    naive,        // O(p^2) Legendre sums; the oracle
    sextic,       // A = 0: a depends on the class of B(t) in F_p^*/(F_p^*)^6
    quartic,      // B = 0: a depends on the class of A(t) in F_p^*/(F_p^*)^4
    fft,          // A constant: cyclic correlation of a cubic histogram with chi
};
const char* to_string(Strategy s);

struct FiberValues {
    u64 p = 0;
    std::vector<int32_t> a;     // a_t(p), t = 0..p-1
    std::vector<uint8_t> bad;   // 1 iff p | Delta(t)
};

FiberValues fiber_values(const FamilySpec& fam, u64 p, Strategy s = Strategy::automatic);

// Histogram of a_t(p) over good and bad t; all moments and A-tilde derive
// from it exactly.
class MomentHistogram {
public:
    explicit MomentHistogram(const FiberValues& fv);
    u64 p() const { return p_; }
    u64 good_count() const { return ngood_; }
    u64 bad_count() const { return nbad_; }
    mpz_class moment(int r, bool good_side = true) const;
    // sum over good t of lambda^3 / (p + 1 - lambda sqrt p), lambda = a / sqrt p
    double a_tilde() const;
    // sum over good t of a^3 / (p + 1 - a): equal to a_tilde() * p^{3/2}
    int amax() const { return amax_; }
    u64 count(int a, bool good_side) const;

private:
    u64 p_ = 0;
    int amax_ = 0;
    u64 ngood_ = 0, nbad_ = 0;
    std::vector<u64> good_, bad_;   // index a + amax_
};

// Per-prime record.
struct MomentTable {
    u64 p = 0;
    std::vector<mpz_class> moments;       // r = 0..r_max over good t
    std::vector<mpz_class> bad_moments;   // m = 0..r_max over bad t
    double a_tilde = 0.0;
    u64 nu = 0;                           // nu_D(p^k); 0 when k = infinity
    double h = 1.0;                       // H_{D,k}(p)
    double h_sieve = 0.0;
};

MomentTable moment_table(const FamilySpec& fam, u64 p, int r_max = 8,
                         Strategy s = Strategy::automatic);

enum class Side { good, bad };

mpz_class complete_moment(const FamilySpec& fam, u64 p, int r, Side side,
                          Strategy s = Strategy::automatic);

// Closed-form moments.  Throws ErrorKind::unsupported when (family, r, side)
// has none registered.
bool has_closed_form(const FamilySpec& fam, int r, Side side);
mpz_class closed_form_moment(const FamilySpec& fam, u64 p, int r, Side side);

// a_E(p)^2 for E: y^2 = x^3 - x, via p = a^2 + b^2 (a odd) when p = 1 mod 4.
u64 a_e_squared_x3_minus_x(u64 p);

double a_tilde(const FamilySpec& fam, u64 p, Strategy s = Strategy::automatic);

// nu_D(d) = #{t mod d : D(t) = 0 mod d}.
u64 nu_D(const FamilySpec& fam, u64 d);
// Solutions of f = 0 mod p^e counted with Hensel shortcuts for simple roots;
// works when p^e exceeds 64 bits as long as every root mod p is simple.
u64 count_roots_mod_prime_power(const IntPoly& f, u64 p, int e);

struct HFactor {
    double main = 1.0;
    double sieve = 0.0;
    double total() const { return main + sieve; }
};
HFactor h_factor(const FamilySpec& fam, u64 p);

// sum_{t mod p} (a t^2 + b t + c / p), closed form and brute force.
i64 quadratic_legendre_sum(i64 a, i64 b, i64 c, u64 p);
i64 quadratic_legendre_sum_brute(i64 a, i64 b, i64 c, u64 p);

// (1/X) sum_{p <= X} -(A_1(p)/p) log p.
double rank_bias(const FamilySpec& fam, double X, bool use_closed_forms = true);

} // namespace ldl
