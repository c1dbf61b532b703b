#include "ldl/moments.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <numeric>

#include "ldl/error.hpp"
#include "ldl/primes.hpp"
#include "ldl/summation.hpp"

namespace ldl {

const char* to_string(Reduction r) {
    switch (r) {
    case Reduction::good: return "good";
    case Reduction::additive: return "additive";
    case Reduction::split: return "split";
    case Reduction::nonsplit: return "nonsplit";
    }
    return "?";
}

const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::automatic: return "automatic";
    case Strategy::naive: return "naive";
    case Strategy::sextic: return "sextic";
    case Strategy::quartic: return "quartic";
    case Strategy::fft: return "fft";
    }
    return "?";
}

namespace {

void require_odd(const FamilySpec& fam, u64 p) {
    if (p == 2 && !fam.forced_zero(2))
        throw Error(ErrorKind::unsupported, "a_t(2) needs a forced-zero designation for family " + fam.name);
}

// chi[x] = (x / p) for x in [0, p)
std::vector<int8_t> chi_table(u64 p) {
    std::vector<int8_t> chi(p, -1);
    chi[0] = 0;
    for (u64 x = 1; x <= p / 2; ++x) chi[x * x % p] = 1;
    return chi;
}

int legendre_cubic_sum(const std::vector<int8_t>& chi, u64 p, u64 A, u64 B) {
    i64 s = 0;
    for (u64 x = 0; x < p; ++x) {
        u64 v = (x * x % p * x + A * x + B) % p;
        s += chi[v];
    }
    return (int)-s;
}

bool is_bad(const IntPoly& disc, u64 t, u64 p) { return disc.eval_mod(t, p) == 0; }

// cls[x] = dlog_g(x) mod m for x in F_p^*, via the powers of a primitive root.
std::vector<uint8_t> class_table(u64 p, u64 m, u64& g0) {
    g0 = primitive_root(p);
    std::vector<uint8_t> cls(p, 0);
    u64 cur = 1;
    for (u64 i = 0; i + 1 < p; ++i) {
        cls[cur] = (uint8_t)(i % m);
        cur = cur * g0 % p;
    }
    return cls;
}

std::mutex g_fftw_mu;

struct FftPlans {
    fftw_plan fwd, bwd;
};

// Plans per padded length, executed on fresh arrays through the new-array interface.
const FftPlans& plans_for(int n) {
    static std::map<int, FftPlans> cache;
    std::lock_guard lk(g_fftw_mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    double* r = fftw_alloc_real(n);
    fftw_complex* c = fftw_alloc_complex(n / 2 + 1);
    FftPlans pl{fftw_plan_dft_r2c_1d(n, r, c, FFTW_ESTIMATE), fftw_plan_dft_c2r_1d(n, c, r, FFTW_ESTIMATE)};
    fftw_free(r);
    fftw_free(c);
    return cache.emplace(n, pl).first->second;
}

// a(c) for y^2 = x^3 + A x + c, every c mod p. Linear correlation of the
// value histogram of x^3 + A x against chi on [0, 2p), zero padded to a power of two.
std::vector<int32_t> fft_all_c(u64 p, u64 A, const std::vector<int8_t>& chi) {
    int n = 1;
    while ((u64)n < 2 * p) n <<= 1;
    const int nc = n / 2 + 1;
    const FftPlans& pl = plans_for(n);
    double* h = fftw_alloc_real(n);
    double* x = fftw_alloc_real(n);
    fftw_complex* H = fftw_alloc_complex(nc);
    fftw_complex* X = fftw_alloc_complex(nc);
    std::fill(h, h + n, 0.0);
    std::fill(x, x + n, 0.0);
    for (u64 u = 0; u < p; ++u) h[(u * u % p * u + A * u) % p] += 1.0;
    for (u64 u = 0; u < 2 * p; ++u) x[u] = chi[u % p];
    fftw_execute_dft_r2c(pl.fwd, h, H);
    fftw_execute_dft_r2c(pl.fwd, x, X);
    for (int k = 0; k < nc; ++k) {
        double ar = H[k][0], ai = -H[k][1];  // conj(H)
        double br = X[k][0], bi = X[k][1];
        X[k][0] = ar * br - ai * bi;
        X[k][1] = ar * bi + ai * br;
    }
    fftw_execute_dft_c2r(pl.bwd, X, h);
    std::vector<int32_t> a(p);
    for (u64 c = 0; c < p; ++c) a[c] = -(int32_t)std::llround(h[c] / n);
    fftw_free(h);
    fftw_free(x);
    fftw_free(H);
    fftw_free(X);
    return a;
}

Strategy choose(const FamilySpec& fam, u64 p) {
    if (p < 64) return Strategy::naive;
    if (fam.A.is_zero()) return Strategy::sextic;
    if (fam.B.is_zero()) return Strategy::quartic;
    if (fam.A.is_constant()) return Strategy::fft;
    return Strategy::naive;
}

} // namespace

int a_t_p(const FamilySpec& fam, i64 t, u64 p) {
    require_odd(fam, p);
    if (fam.forced_zero(p)) return 0;
    u64 tr = mod(t, p);
    auto chi = chi_table(p);
    return legendre_cubic_sum(chi, p, fam.A.eval_mod(tr, p), fam.B.eval_mod(tr, p));
}

Reduction reduction_type(const FamilySpec& fam, i64 t, u64 p) {
    if (p < 5) throw Error(ErrorKind::precondition, "reduction_type: p must be >= 5");
    u64 tr = mod(t, p);
    if (!is_bad(fam.discriminant(), tr, p)) return Reduction::good;
    int a = a_t_p(fam, t, p);
    if (a == 0) return Reduction::additive;
    if (a == 1) return Reduction::split;
    if (a == -1) return Reduction::nonsplit;
    throw Error(ErrorKind::consistency, "reduction_type: a_t(p) = " + std::to_string(a) +
                                            " at a bad fibre (non-minimal model at t=" +
                                            std::to_string(t) + ", p=" + std::to_string(p) + ")");
}

FiberValues fiber_values(const FamilySpec& fam, u64 p, Strategy s) {
    require_odd(fam, p);
    FiberValues fv;
    fv.p = p;
    fv.a.assign(p, 0);
    fv.bad.assign(p, 0);
    const IntPoly disc = fam.discriminant();
    for (u64 t = 0; t < p; ++t) fv.bad[t] = is_bad(disc, t, p);
    if (fam.forced_zero(p)) return fv;
    if (s == Strategy::automatic) s = choose(fam, p);
    auto chi = chi_table(p);
    switch (s) {
    case Strategy::naive:
    case Strategy::automatic:
        for (u64 t = 0; t < p; ++t)
            fv.a[t] = legendre_cubic_sum(chi, p, fam.A.eval_mod(t, p), fam.B.eval_mod(t, p));
        break;
    case Strategy::sextic:
    case Strategy::quartic: {
        const bool sext = s == Strategy::sextic;
        if (sext ? !fam.A.is_zero() : !fam.B.is_zero())
            throw Error(ErrorKind::unsupported, std::string("strategy ") + to_string(s) +
                                                    " does not apply to " + fam.name);
        if (p < 5) throw Error(ErrorKind::precondition, "twist strategies need p >= 5");
        const u64 m = std::gcd<u64>(sext ? 6 : 4, p - 1);
        u64 g0 = 0;
        auto cls = class_table(p, m, g0);
        std::vector<int32_t> rep(m);
        u64 c = 1;
        for (u64 j = 0; j < m; ++j) {
            rep[j] = sext ? legendre_cubic_sum(chi, p, 0, c) : legendre_cubic_sum(chi, p, c, 0);
            c = c * g0 % p;
        }
        const IntPoly& poly = sext ? fam.B : fam.A;
        for (u64 t = 0; t < p; ++t) {
            u64 v = poly.eval_mod(t, p);
            fv.a[t] = v == 0 ? 0 : rep[cls[v]];
        }
        break;
    }
    case Strategy::fft: {
        if (!fam.A.is_constant())
            throw Error(ErrorKind::unsupported, "fft strategy needs constant A(T) for " + fam.name);
        auto all = fft_all_c(p, fam.A.eval_mod(0, p), chi);
        for (u64 t = 0; t < p; ++t) fv.a[t] = all[fam.B.eval_mod(t, p)];
        break;
    }
    }
    return fv;
}

// ---------------------------------------------------------------------------

MomentHistogram::MomentHistogram(const FiberValues& fv) : p_(fv.p) {
    amax_ = (int)std::ceil(2 * std::sqrt((double)p_)) + 2;
    good_.assign(2 * amax_ + 1, 0);
    bad_.assign(2 * amax_ + 1, 0);
    for (u64 t = 0; t < p_; ++t) {
        int a = fv.a[t];
        if (a < -amax_ || a > amax_)
            throw Error(ErrorKind::consistency, "Hasse bound violated at p=" + std::to_string(p_) +
                                                    " t=" + std::to_string(t));
        if (fv.bad[t]) {
            ++bad_[a + amax_];
            ++nbad_;
        } else {
            ++good_[a + amax_];
            ++ngood_;
        }
    }
}

u64 MomentHistogram::count(int a, bool good_side) const {
    if (a < -amax_ || a > amax_) return 0;
    return (good_side ? good_ : bad_)[a + amax_];
}

mpz_class MomentHistogram::moment(int r, bool good_side) const {
    const auto& h = good_side ? good_ : bad_;
    mpz_class s = 0, pw;
    for (int i = 0; i < (int)h.size(); ++i) {
        if (!h[i]) continue;
        mpz_class a = i - amax_;
        mpz_pow_ui(pw.get_mpz_t(), a.get_mpz_t(), (unsigned long)r);
        s += pw * mpz_class((unsigned long)h[i]);
    }
    return s;
}

double MomentHistogram::a_tilde() const {
    CompensatedSum s;
    const double p = (double)p_, sp = std::sqrt(p);
    for (int i = 0; i < (int)good_.size(); ++i) {
        if (!good_[i]) continue;
        double lam = (i - amax_) / sp;
        s.add((double)good_[i] * lam * lam * lam / (p + 1 - lam * sp));
    }
    return s.value();
}

MomentTable moment_table(const FamilySpec& fam, u64 p, int r_max, Strategy s) {
    MomentHistogram h(fiber_values(fam, p, s));
    MomentTable m;
    m.p = p;
    for (int r = 0; r <= r_max; ++r) {
        m.moments.push_back(h.moment(r, true));
        m.bad_moments.push_back(h.moment(r, false));
    }
    m.a_tilde = h.a_tilde();
    auto hf = h_factor(fam, p);
    m.h = hf.total();
    m.h_sieve = hf.sieve;
    if (!fam.k_infinite()) m.nu = count_roots_mod_prime_power(fam.D(), p, fam.k);
    return m;
}

mpz_class complete_moment(const FamilySpec& fam, u64 p, int r, Side side, Strategy s) {
    if (r < 0) throw Error(ErrorKind::domain, "complete_moment: r < 0");
    MomentHistogram h(fiber_values(fam, p, s));
    return h.moment(r, side == Side::good);
}

double a_tilde(const FamilySpec& fam, u64 p, Strategy s) {
    if (p < 5) throw Error(ErrorKind::precondition, "a_tilde: p must be >= 5");
    return MomentHistogram(fiber_values(fam, p, s)).a_tilde();
}

// ---------------------------------------------------------------------------
// closed forms

u64 a_e_squared_x3_minus_x(u64 p) {
    if (p % 4 != 1) return 0;
    auto [a, b] = two_squares(p);
    (void)b;
    return 4 * a * a;
}

bool has_closed_form(const FamilySpec& fam, int r, Side side) {
    switch (fam.closed_form) {
    case ClosedForm::none: return false;
    case ClosedForm::cm_sextic:
    case ClosedForm::cm_quartic_36t:
        return side == Side::good ? (r >= 0 && r <= 2) : r >= 0;
    case ClosedForm::noncm_3x12t:
        return side == Side::good ? (r >= 0 && r <= 2) : r >= 0;
    }
    return false;
}

mpz_class closed_form_moment(const FamilySpec& fam, u64 p, int r, Side side) {
    if (!has_closed_form(fam, r, side))
        throw Error(ErrorKind::unsupported, "no closed form for family " + fam.name + " r=" +
                                                std::to_string(r) +
                                                (side == Side::good ? " (good)" : " (bad)"));
    const mpz_class P((unsigned long)p);
    if (fam.forced_zero(p)) {
        // every fibre is bad and a_t(p) = 0
        if (side == Side::good) return 0;
        return r == 0 ? P : mpz_class(0);
    }
    if (p < 5) throw Error(ErrorKind::precondition, "closed forms are stated for p >= 5");
    switch (fam.closed_form) {
    case ClosedForm::cm_sextic:
        if (side == Side::bad) return r == 0 ? 1 : 0;
        if (r == 0) return P - 1;
        if (r == 1) return 0;
        return p % 3 == 1 ? mpz_class(2 * P * P - 2 * P) : mpz_class(0);
    case ClosedForm::cm_quartic_36t: {
        if (side == Side::bad) return r == 0 ? 2 : 0;
        if (r == 0) return P - 2;
        if (p % 4 == 3) return 0;
        if (r == 1) {
            if (fam.quartic_coeff == -1) return -2 * P;
            if (fam.quartic_coeff == -4) return -2 * P * legendre_symbol(2, p, false);
            throw Error(ErrorKind::unsupported, "closed form A_1 only for coefficients -1, -4");
        }
        return 2 * P * (P - 1) - mpz_class((unsigned long)a_e_squared_x3_minus_x(p));
    }
    case ClosedForm::noncm_3x12t: {
        const int e3 = legendre_symbol(3, p, false);
        const int em3 = legendre_symbol(-3, p, false);
        if (side == Side::bad) {
            if (r == 0) return 2;
            return r % 2 == 0 ? mpz_class(2) : mpz_class(e3 + em3);
        }
        if (r == 0) return P - 2;
        if (r == 1) return -(e3 + em3);
        return P * P - 2 * P - 2 - P * em3;
    }
    case ClosedForm::none: break;
    }
    throw Error(ErrorKind::unsupported, "closed_form_moment");
}

// ---------------------------------------------------------------------------
// nu_D and H

namespace {

// Roots mod p of a polynomial of degree <= 2, or nullopt when some root is
// repeated (needs full lifting) or f vanishes identically mod p.
std::optional<u64> simple_root_count_deg2(const IntPoly& f, u64 p) {
    if (f.degree() > 2 || p == 2) return std::nullopt;
    u64 a2 = mod(f[2], p), a1 = mod(f[1], p), a0 = mod(f[0], p);
    if (a2 == 0) {
        if (a1 != 0) return 1;
        if (a0 != 0) return 0;
        return std::nullopt;
    }
    u64 d = mod128((i128)a1 * a1 - (i128)4 * a2 * a0, p);
    if (d == 0) return std::nullopt;
    return (u64)(1 + legendre_symbol((i64)d, p, false));
}

} // namespace

u64 count_roots_mod_prime_power(const IntPoly& f, u64 p, int e) {
    if (auto c = simple_root_count_deg2(f, p)) return *c;
    u64 simple = 0;
    bool singular = false;
    const IntPoly df = f.derivative();
    for (u64 t = 0; t < p && !singular; ++t) {
        if (f.eval_mod(t, p) != 0) continue;
        if (df.eval_mod(t, p) != 0) ++simple;  // Hensel: unique lift
        else singular = true;
    }
    if (!singular) return simple;
    long double pe = std::pow((long double)p, e);
    if (pe > 9.0e18L)
        throw Error(ErrorKind::width, "count_roots_mod_prime_power: singular root and p^e beyond 64 bits");
    return roots_mod_prime_power(f, p, e).size();
}

u64 nu_D(const FamilySpec& fam, u64 d) {
    if (d == 0) throw Error(ErrorKind::domain, "nu_D: d must be >= 1");
    const IntPoly D = fam.D();
    if (d <= 1'000'000) {
        u64 c = 0;
        for (u64 t = 0; t < d; ++t)
            if (D.eval_mod(t, d) == 0) ++c;
        return c;
    }
    u64 n = 1;
    for (auto [p, e] : factorize(d)) n *= count_roots_mod_prime_power(D, p, e);
    return n;
}

HFactor h_factor(const FamilySpec& fam, u64 p) {
    HFactor h;
    if (fam.k_infinite()) return h;
    u64 nu = 0;
    if (p >= 5 && fam.D_factors.size() >= 1) {
        // no two factors share a root mod p (load-time hypothesis), so the
        // solution sets are disjoint
        for (auto& f : fam.D_factors) nu += count_roots_mod_prime_power(f, p, fam.k);
    } else {
        nu = count_roots_mod_prime_power(fam.D(), p, fam.k);
    }
    if (nu == 0) return h;
    long double pk = std::pow((long double)p, fam.k);
    long double x = (long double)nu / pk;
    if (x >= 1) throw Error(ErrorKind::degenerate_sieve, "h_factor: nu_D(p^k) >= p^k at p=" + std::to_string(p));
    h.sieve = (double)(x / (1 - x));
    return h;
}

// ---------------------------------------------------------------------------

i64 quadratic_legendre_sum(i64 a, i64 b, i64 c, u64 p) {
    if (p <= 2 || !is_prime(p)) throw Error(ErrorKind::domain, "quadratic_legendre_sum: p must be an odd prime");
    u64 am = mod(a, p), bm = mod(b, p);
    if (am == 0 && bm == 0) throw Error(ErrorKind::domain, "quadratic_legendre_sum: a = b = 0 mod p");
    if (am == 0) return 0;  // linear: t -> bt + c runs over all residues
    int la = legendre_symbol(a, p, false);
    u64 disc = mod128((i128)b * b - (i128)4 * a * c, p);
    return disc == 0 ? (i64)(p - 1) * la : -la;
}

i64 quadratic_legendre_sum_brute(i64 a, i64 b, i64 c, u64 p) {
    auto chi = chi_table(p);
    i64 s = 0;
    for (u64 t = 0; t < p; ++t) {
        u64 v = mod128((i128)a * t * t + (i128)b * t + c, p);
        s += chi[v];
    }
    return s;
}

double rank_bias(const FamilySpec& fam, double X, bool use_closed_forms) {
    auto table = sieve_primes((u64)X);
    const bool cf = use_closed_forms && has_closed_form(fam, 1, Side::good);
    auto acc = reduce_table<SumAcc>(table.view(), [&](std::span<const u64> ps, SumAcc& a) {
        for (u64 p : ps) {
            if (p == 2 && !fam.forced_zero(2)) continue;
            mpz_class A1 = cf ? closed_form_moment(fam, p, 1, Side::good)
                              : complete_moment(fam, p, 1, Side::good);
            a.s.add(-A1.get_d() / (double)p * std::log((double)p));
        }
    });
    return acc.value() / X;
}

} // namespace ldl
