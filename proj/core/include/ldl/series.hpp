#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ldl/arith.hpp"
#include "ldl/primes.hpp"

namespace ldl {

// Reduced rational with positive denominator.
class RationalValue {
public:
    RationalValue() = default;
    RationalValue(long n) : q_(n) {}
    RationalValue(const mpz_class& n, const mpz_class& d);
    explicit RationalValue(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    static RationalValue of(long n, long d) { return RationalValue(mpz_class(n), mpz_class(d)); }

    const mpq_class& q() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    double to_double() const { return q_.get_d(); }
    bool is_zero() const { return sgn(q_) == 0; }
    std::string str() const { return q_.get_str(); }

    friend RationalValue operator+(const RationalValue& a, const RationalValue& b) { return RationalValue(mpq_class(a.q_ + b.q_)); }
    friend RationalValue operator-(const RationalValue& a, const RationalValue& b) { return RationalValue(mpq_class(a.q_ - b.q_)); }
    friend RationalValue operator*(const RationalValue& a, const RationalValue& b) { return RationalValue(mpq_class(a.q_ * b.q_)); }
    friend RationalValue operator/(const RationalValue& a, const RationalValue& b);
    friend bool operator==(const RationalValue& a, const RationalValue& b) { return a.q_ == b.q_; }
    friend bool operator<(const RationalValue& a, const RationalValue& b) { return a.q_ < b.q_; }

private:
    mpq_class q_;
};

RationalValue pow(const RationalValue& x, unsigned e);

// ---------------------------------------------------------------------------
// moment sequences

enum class MomentKind { sato_tate, cm };
const char* to_string(MomentKind k);

mpz_class binomial(unsigned n, unsigned k);
mpz_class catalan(unsigned l);             // C_l = binom(2l, l)/(l+1)
mpz_class central_binomial(unsigned l);    // D_l = binom(2l, l)
mpz_class moment_value(MomentKind k, unsigned l);

// g_ST(x) = (1 - sqrt(1-4x))/(2x) - 1 - x, g_CM(x) = (1 - sqrt(1-4x))/sqrt(1-4x) - 2x.
double g_moment(MomentKind k, double x);
// Exact when 1 - 4x is a rational square (e.g. x = p/(p+1)^2); otherwise
// ErrorKind::unsupported.
RationalValue g_moment(MomentKind k, const RationalValue& x);
RationalValue g_moment_at_prime(MomentKind k, u64 p);   // x = p/(p+1)^2
// sum_{l=2}^{L} M_l x^l
double g_series(MomentKind k, double x, unsigned L);

// P(l) = sum_p (p-1) log p/(p+1) * (p/(p+1)^2)^l over the table, with a tail bound.
struct PrimeSumValue {
    double value = 0.0;
    double tail_bound = 0.0;
    u64 largest_prime = 0;
};
PrimeSumValue p_ell_sum(unsigned l, std::span<const u64> primes);
// sum_{l=2}^{L} M_l P(l), each P(l) a separate prime sum.
PrimeSumValue moment_weighted_p_sum(MomentKind k, unsigned L, std::span<const u64> primes);

// ---------------------------------------------------------------------------
// polylogarithms at negative integers

std::vector<mpz_class> eulerian_row(unsigned r);   // <r j>, j = 0..r (r >= 1; row 0 is {1})
double polylog_neg(unsigned r, double x);
RationalValue polylog_neg(unsigned r, const RationalValue& x);

// Integer polynomial in k, ascending.
using ZPoly = std::vector<mpz_class>;
ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b);
ZPoly polylog_a_coeffs(unsigned l);   // prod_{j<l} (k^2 - j^2)
ZPoly polylog_b_coeffs(unsigned l);   // (2k+1) prod_{j<l} (k-j)(k+1+j)

// Both identities
//   sum_i a_{l,i} Li_{-i}(x) = (2l)!/2 x^l (1+x)/(1-x)^{2l+1}
//   sum_i b_{l,i} Li_{-i}(x) = (2l+1)! x^l (1+x)/(1-x)^{2l+2}
// in exact arithmetic.  rhs_scale multiplies the right sides (negative controls).
bool polylog_identity_check(unsigned l, const RationalValue& x,
                            const RationalValue& rhs_scale = RationalValue(1));

// lambda^r = sum_k b_{r,r-2k} lambda(p^{r-2k}), k = 0..floor(r/2).
std::vector<mpz_class> hecke_power_expansion(unsigned r);

// Per-prime summand of -gamma_ST;0 + gamma_ST;2 - gamma_ST;A without the log p:
// -2/(p(p+1)) + (4p^2+3p+1)/(p(p+1)^3) - (2p+1)(p-1)/(p(p+1)^3).
RationalValue st_combination_summand(u64 p, long perturb = 0);
// The numerator -2(p+1)^2 + (4p^2+3p+1) - (2p+1)(p-1) as a polynomial in p.
ZPoly st_combination_numerator(long perturb = 0);

} // namespace ldl
