#include "ldl/series.hpp"

#include <cmath>

#include "ldl/error.hpp"
#include "ldl/summation.hpp"

namespace ldl {

RationalValue::RationalValue(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw Error(ErrorKind::domain, "RationalValue: zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

RationalValue operator/(const RationalValue& a, const RationalValue& b) {
    if (b.is_zero()) throw Error(ErrorKind::domain, "RationalValue: division by zero");
    return RationalValue(mpq_class(a.q_ / b.q_));
}

RationalValue pow(const RationalValue& x, unsigned e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), x.den().get_mpz_t(), e);
    return RationalValue(n, d);
}

const char* to_string(MomentKind k) { return k == MomentKind::cm ? "cm" : "sato_tate"; }

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class catalan(unsigned l) { return binomial(2 * l, l) / (l + 1); }
mpz_class central_binomial(unsigned l) { return binomial(2 * l, l); }
mpz_class moment_value(MomentKind k, unsigned l) {
    return k == MomentKind::cm ? central_binomial(l) : catalan(l);
}

double g_moment(MomentKind k, double x) {
    if (x < 0) throw Error(ErrorKind::domain, "g_moment: x < 0");
    if (x >= 0.25) throw Error(ErrorKind::divergence, "g_moment: x >= 1/4");
    const double s = std::sqrt(1 - 4 * x);
    if (k == MomentKind::sato_tate) return 2 / (1 + s) - 1 - x;
    return 4 * x / ((1 + s) * s) - 2 * x;
}

RationalValue g_moment(MomentKind k, const RationalValue& x) {
    if (x < RationalValue(0)) throw Error(ErrorKind::domain, "g_moment: x < 0");
    if (!(x < RationalValue::of(1, 4))) throw Error(ErrorKind::divergence, "g_moment: x >= 1/4");
    if (x.is_zero()) return RationalValue(0);
    const RationalValue d = RationalValue(1) - RationalValue(4) * x;
    mpz_class n = d.num(), m = d.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(m.get_mpz_t()))
        throw Error(ErrorKind::unsupported, "g_moment: 1 - 4x = " + d.str() + " is not a rational square");
    mpz_class rn, rm;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rm.get_mpz_t(), m.get_mpz_t());
    const RationalValue s(rn, rm), one(1);
    if (k == MomentKind::sato_tate) return (one - s) / (RationalValue(2) * x) - one - x;
    return (one - s) / s - RationalValue(2) * x;
}

RationalValue g_moment_at_prime(MomentKind k, u64 p) {
    mpz_class P((unsigned long)p);
    return g_moment(k, RationalValue(P, (P + 1) * (P + 1)));
}

double g_series(MomentKind k, double x, unsigned L) {
    CompensatedSum s;
    double xl = x;
    for (unsigned l = 2; l <= L; ++l) {
        xl *= x;
        s.add(moment_value(k, l).get_d() * xl);
    }
    return s.value();
}

namespace {

// P(l) for l = 2..L in one pass over the primes.
std::vector<CompensatedSum> p_sums(unsigned L, std::span<const u64> primes) {
    std::vector<CompensatedSum> P(L + 1);
    for (u64 p : primes) {
        const double pd = (double)p;
        const double x = pd / ((pd + 1) * (pd + 1));
        const double w = (pd - 1) * std::log(pd) / (pd + 1);
        double t = w * x;
        for (unsigned l = 2; l <= L; ++l) {
            t *= x;
            if (t < 1e-300) break;
            P[l].add(t);
        }
    }
    return P;
}

} // namespace

PrimeSumValue p_ell_sum(unsigned l, std::span<const u64> primes) {
    if (l < 2) throw Error(ErrorKind::domain, "p_ell_sum: l must be >= 2");
    PrimeSumValue r;
    r.value = p_sums(l, primes)[l].value();
    r.largest_prime = primes.empty() ? 0 : primes.back();
    r.tail_bound = power_tail_bound((double)std::max<u64>(r.largest_prime, 2), (double)l);
    return r;
}

PrimeSumValue moment_weighted_p_sum(MomentKind k, unsigned L, std::span<const u64> primes) {
    if (L < 2) throw Error(ErrorKind::domain, "moment_weighted_p_sum: L must be >= 2");
    auto P = p_sums(L, primes);
    PrimeSumValue r;
    r.largest_prime = primes.empty() ? 0 : primes.back();
    const double X = (double)std::max<u64>(r.largest_prime, 2);
    CompensatedSum s;
    double tail = 0, last = 0;
    for (unsigned l = 2; l <= L; ++l) {
        const double M = moment_value(k, l).get_d();
        last = M * P[l].value();
        s.add(last);
        tail += M * power_tail_bound(X, (double)l);
    }
    r.value = s.value();
    // the l-terms decay at least geometrically with ratio 8/9 (p = 2 dominates)
    r.tail_bound = tail + 9 * std::fabs(last);
    return r;
}

std::vector<mpz_class> eulerian_row(unsigned r) {
    std::vector<mpz_class> row{1};
    for (unsigned n = 1; n <= r; ++n) {
        std::vector<mpz_class> next(n + 1, 0);
        for (unsigned j = 0; j <= n; ++j) {
            if (j < row.size()) next[j] += (j + 1) * row[j];
            if (j >= 1 && j - 1 < row.size()) next[j] += (n - j) * row[j - 1];
        }
        row.swap(next);
    }
    return row;
}

RationalValue polylog_neg(unsigned r, const RationalValue& x) {
    if (!(RationalValue(-1) < x && x < RationalValue(1)))
        throw Error(ErrorKind::divergence, "polylog_neg: |x| >= 1");
    const RationalValue one(1);
    if (r == 0) return x / (one - x);
    auto row = eulerian_row(r);
    RationalValue num(0);
    for (unsigned j = 0; j <= r; ++j) num = num + RationalValue(mpq_class(row[j])) * pow(x, r - j);
    return num / pow(one - x, r + 1);
}

double polylog_neg(unsigned r, double x) {
    if (!(std::fabs(x) < 1)) throw Error(ErrorKind::divergence, "polylog_neg: |x| >= 1");
    if (r == 0) return x / (1 - x);
    auto row = eulerian_row(r);
    double num = 0;
    for (unsigned j = 0; j <= r; ++j) num += row[j].get_d() * std::pow(x, (double)(r - j));
    return num / std::pow(1 - x, (double)(r + 1));
}

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

ZPoly polylog_a_coeffs(unsigned l) {
    ZPoly f{1};
    for (unsigned j = 0; j < l; ++j) f = zpoly_mul(f, ZPoly{-mpz_class(j * j), 0, 1});
    return f;
}

ZPoly polylog_b_coeffs(unsigned l) {
    ZPoly f{1, 2};
    for (unsigned j = 0; j < l; ++j) {
        f = zpoly_mul(f, ZPoly{-mpz_class(j), 1});
        f = zpoly_mul(f, ZPoly{mpz_class(j + 1), 1});
    }
    return f;
}

namespace {

RationalValue li_combination(const ZPoly& c, const RationalValue& x) {
    RationalValue s(0);
    for (unsigned i = 0; i < c.size(); ++i)
        if (c[i] != 0) s = s + RationalValue(mpq_class(c[i])) * polylog_neg(i, x);
    return s;
}

mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace

bool polylog_identity_check(unsigned l, const RationalValue& x, const RationalValue& rhs_scale) {
    if (l < 1) throw Error(ErrorKind::domain, "polylog_identity_check: l must be >= 1");
    const RationalValue one(1);
    const RationalValue base = pow(x, l) * (one + x);
    const RationalValue ra = rhs_scale * RationalValue(mpq_class(factorial(2 * l) / 2)) * base / pow(one - x, 2 * l + 1);
    const RationalValue rb = rhs_scale * RationalValue(mpq_class(factorial(2 * l + 1))) * base / pow(one - x, 2 * l + 2);
    return li_combination(polylog_a_coeffs(l), x) == ra && li_combination(polylog_b_coeffs(l), x) == rb;
}

std::vector<mpz_class> hecke_power_expansion(unsigned r) {
    // c[m] = coefficient of lambda(p^m) in lambda^n
    std::vector<mpz_class> c{1};
    for (unsigned n = 1; n <= r; ++n) {
        std::vector<mpz_class> next(n + 1, 0);
        for (unsigned m = 0; m < c.size(); ++m) {
            if (c[m] == 0) continue;
            next[m + 1] += c[m];
            if (m >= 1) next[m - 1] += c[m];
        }
        c.swap(next);
    }
    std::vector<mpz_class> out;
    for (unsigned k = 0; 2 * k <= r; ++k) out.push_back(c[r - 2 * k]);
    return out;
}

RationalValue st_combination_summand(u64 p, long perturb) {
    const mpz_class P((unsigned long)p);
    const mpz_class q = P + 1;
    const RationalValue a(mpz_class(-2), P * q);
    const RationalValue b(4 * P * P + 3 * P + 1 + perturb, P * q * q * q);
    const RationalValue c((2 * P + 1) * (P - 1), P * q * q * q);
    return a + b - c;
}

ZPoly st_combination_numerator(long perturb) {
    // -2(p+1)^2 + (4p^2+3p+1) - (2p+1)(p-1)
    ZPoly a = zpoly_mul(ZPoly{1, 1}, ZPoly{1, 1});
    for (auto& v : a) v *= -2;
    ZPoly b{1 + perturb, 3, 4};
    ZPoly c = zpoly_mul(ZPoly{1, 2}, ZPoly{-1, 1});
    ZPoly s(3, 0);
    for (int i = 0; i < 3; ++i) s[i] = a[i] + b[i] - c[i];
    while (!s.empty() && s.back() == 0) s.pop_back();
    return s;
}

} // namespace ldl
