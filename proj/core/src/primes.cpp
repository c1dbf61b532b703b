#include "ldl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include "ldl/error.hpp"
#include "ldl/hiprec.hpp"

namespace ldl {

std::string ResidueClass::label() const {
    if (b == 1) return "all";
    return std::to_string(a % b) + " mod " + std::to_string(b);
}

std::string Truncation::label() const {
    return (kind == prime_count ? "first " : "p <= ") + std::to_string(value) +
           (kind == prime_count ? " primes" : "");
}

const char* to_string(Method m) {
    switch (m) {
    case Method::direct_sum: return "direct_sum";
    case Method::closed_form: return "closed_form";
    case Method::integral: return "integral";
    case Method::moment_series: return "moment_series";
    }
    return "?";
}

std::span<const u64> PrimeTable::up_to(u64 x) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
    return std::span<const u64>(primes_.data(), (std::size_t)(it - primes_.begin()));
}

std::vector<u64> PrimeTable::residue_class(u64 a, u64 b) const {
    std::vector<u64> out;
    for (u64 p : primes_)
        if (p % b == a % b) out.push_back(p);
    return out;
}

namespace detail {

std::vector<u64> base_primes(u64 hi) {
    u64 r = iroot(hi, 2) + 1;
    std::vector<char> mark(r + 1, 1);
    std::vector<u64> out;
    for (u64 i = 2; i <= r; ++i) {
        if (!mark[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= r; j += i) mark[j] = 0;
    }
    return out;
}

// Odd-only segmented sieve of [lo, hi].
void sieve_block(u64 lo, u64 hi, std::span<const u64> base, std::vector<u64>& out) {
    if (hi < 2 || lo > hi) return;
    if (lo <= 2) out.push_back(2);
    u64 start = std::max<u64>(lo, 3) | 1;  // first odd >= max(lo,3)
    if (start > hi) return;
    const u64 n = (hi - start) / 2 + 1;    // odd numbers start, start+2, ...
    constexpr u64 kSeg = 1 << 18;
    std::vector<unsigned char> seg(kSeg);
    for (u64 s0 = 0; s0 < n; s0 += kSeg) {
        const u64 len = std::min(kSeg, n - s0);
        std::fill(seg.begin(), seg.begin() + len, 1);
        const u64 first = start + 2 * s0;
        const u64 last = first + 2 * (len - 1);
        for (u64 p : base) {
            if (p == 2) continue;
            if (p * p > last) break;
            u64 m = std::max(p * p, (first + p - 1) / p * p);
            if ((m & 1) == 0) m += p;
            for (u64 j = (m - first) / 2; j < len; j += p) seg[j] = 0;
        }
        for (u64 j = 0; j < len; ++j)
            if (seg[j]) out.push_back(first + 2 * j);
    }
    // 1 is odd and unmarked when lo <= 1; drop it.
    if (!out.empty() && out.front() == 1) out.erase(out.begin());
}

void check_stream_cap(u64 hi, const SieveLimits& caps) {
    if (hi > caps.stream_cap)
        throw Error(ErrorKind::resource,
                    "prime bound " + std::to_string(hi) + " exceeds stream cap " +
                        std::to_string(caps.stream_cap));
}

} // namespace detail

PrimeTable sieve_primes(u64 limit, const SieveLimits& caps) {
    if (limit < 2) throw Error(ErrorKind::empty_table, "sieve_primes: limit < 2 gives no primes");
    if (limit > caps.table_cap)
        throw Error(ErrorKind::resource, "sieve_primes: limit " + std::to_string(limit) +
                                             " exceeds table cap " + std::to_string(caps.table_cap));
    const auto base = detail::base_primes(limit);
    std::vector<u64> out;
    double est = limit / std::max(1.0, std::log((double)limit) - 1.1);
    out.reserve((std::size_t)(est * 1.02) + 16);
    constexpr u64 kChunk = u64(1) << 24;
    for (u64 lo = 0; lo <= limit; lo += kChunk) {
        u64 hi = std::min(limit, lo + kChunk - 1);
        detail::sieve_block(lo, hi, base, out);
        if (hi == limit) break;
    }
    return PrimeTable(limit, std::move(out));
}

PrimeTable first_primes(std::size_t n, const SieveLimits& caps) {
    if (n == 0) throw Error(ErrorKind::empty_table, "first_primes: n = 0");
    double x = (double)std::max<std::size_t>(n, 6);
    // p_n < n (log n + log log n) for n >= 6.
    u64 bound = (u64)(x * (std::log(x) + std::log(std::log(x)))) + 16;
    PrimeTable t = sieve_primes(bound, caps);
    std::vector<u64> v(t.begin(), t.begin() + (std::ptrdiff_t)n);
    const u64 last = v.back();
    return PrimeTable(last, std::move(v));
}

void for_each_prime_block(u64 lo, u64 hi, const std::function<void(std::span<const u64>)>& fn,
                          const SieveLimits& caps) {
    detail::check_stream_cap(hi, caps);
    if (hi < 2 || lo > hi) return;
    const auto base = detail::base_primes(hi);
    std::vector<u64> buf;
    constexpr u64 kChunk = u64(1) << 22;
    for (u64 a = lo; a <= hi;) {
        u64 b = std::min(hi, a + kChunk - 1);
        buf.clear();
        detail::sieve_block(a, b, base, buf);
        if (!buf.empty()) fn(buf);
        if (b == hi) break;
        a = b + 1;
    }
}

PrimeTable primes_for(const Truncation& t, const SieveLimits& caps) {
    if (t.kind == Truncation::prime_count) return first_primes(t.value, caps);
    return sieve_primes(t.value, caps);
}

// ---------------------------------------------------------------------------

ThetaAccumulator::ThetaAccumulator(std::span<const u64> primes, ResidueClass cls) : cls_(cls) {
    CompensatedSum s;
    for (u64 p : primes) {
        if (!cls.contains(p)) continue;
        s.add(std::log((double)p));
        cuts_.push_back(p);
        partial_.push_back(s.value());
    }
}

double ThetaAccumulator::theta(double t) const {
    auto it = std::upper_bound(cuts_.begin(), cuts_.end(), t,
                               [](double v, u64 p) { return v < (double)p; });
    if (it == cuts_.begin()) return 0.0;
    return partial_[(std::size_t)(it - cuts_.begin()) - 1];
}

double ThetaAccumulator::error(double t) const {
    return theta(t) - t / (double)euler_phi(cls_.b);
}

double theta_error_integral(const PrimeTable& table, ResidueClass cls, double X) {
    if (X < 1.0) throw Error(ErrorKind::precondition, "theta_error_integral: X < 1");
    if (X > (double)table.limit() + 1e-9 && !(table.size() && X < (double)table.back() + 1))
        throw Error(ErrorKind::precondition, "theta_error_integral: X exceeds prime table");
    CompensatedSum s;
    for (u64 p : table) {
        if ((double)p > X) break;
        if (!cls.contains(p)) continue;
        double lp = std::log((double)p);
        s.add(lp / (double)p);
        s.add(-lp / X);
    }
    s.add(-std::log(X) / (double)euler_phi(cls.b));
    return s.value();
}

double power_tail_bound(double X, double s, double c, u64 phi_b) {
    // int_X^inf log t / t^s dt = X^{1-s} ((s-1) log X + 1) / (s-1)^2
    double sm1 = s - 1.0;
    return std::fabs(c) / (double)phi_b * std::pow(X, -sm1) * (sm1 * std::log(X) + 1.0) / (sm1 * sm1);
}

double theta_integral_tail_bound(double X) {
    // int_X^inf sqrt(t) log^2 t / (8 pi t^2) dt
    double L = std::log(X);
    return 2.0 / std::sqrt(X) * (L * L + 4 * L + 8) / (8 * std::numbers::pi);
}

namespace {

ConstantResult make(std::string name, double v, const PrimeTable& t, double tail, Method m) {
    ConstantResult r;
    r.name = std::move(name);
    r.value = v;
    r.truncation = Truncation::count(t.size());
    r.largest_prime = t.size() ? t.back() : 0;
    r.tail_bound = tail;
    r.method = m;
    return r;
}

// sum over primes in class of log p / (p^2 - p^delta), delta = 1 iff p = 1 mod b
double remark_sum(const PrimeTable& t, u64 b) {
    CompensatedSum s;
    for (u64 p : t) {
        u64 r = p % b;
        if (std::gcd(r, b) != 1) continue;
        double pd = (double)p;
        double den = (r == 1) ? pd * pd - pd : pd * pd - 1.0;
        s.add(std::log(pd) / den);
    }
    return s.value();
}

} // namespace

ConstantResult gamma_pnt(Method method, const PrimeTable& table) {
    const double X = (double)table.back();
    if (method == Method::closed_form) {
        CompensatedSum s;
        s.add(-hp::euler_gamma);
        for (u64 p : table) {
            double pd = (double)p;
            s.add(-std::log(pd) / (pd * pd - pd));
        }
        return make("gamma_pnt", s.value(), table, power_tail_bound(X, 2.0), method);
    }
    if (method != Method::integral && method != Method::direct_sum)
        throw Error(ErrorKind::unsupported, "gamma_pnt: method");
    double v = 1.0 + theta_error_integral(table, {}, X);
    return make("gamma_pnt", v, table, theta_integral_tail_bound(X), Method::integral);
}

ConstantResult gamma_pnt(Method method, const Truncation& t) {
    auto table = primes_for(t);
    if (table.size() < 10000)
        throw Error(ErrorKind::precondition, "gamma_pnt: truncation must cover 10^4 primes");
    auto r = gamma_pnt(method, table);
    r.truncation = t;
    return r;
}

ConstantResult gamma_pnt_ab(u64 a, u64 b, Method method, const PrimeTable& table) {
    if (a != 1 || (b != 3 && b != 4))
        throw Error(ErrorKind::domain, "gamma_pnt_ab: only (1,3) and (1,4) are supported");
    const double X = (double)table.back();
    std::string name = b == 3 ? "gamma_pnt_13" : "gamma_pnt_14";
    ConstantResult r;
    if (method == Method::closed_form) {
        double c;
        if (b == 3)
            c = -2 * hp::euler_gamma - 4 * hp::log_2pi + hp::log_3 + 6 * hp::log_gamma_1_3;
        else
            c = -2 * hp::euler_gamma - 3 * hp::log_2pi + 4 * hp::log_gamma_1_4;
        double v = c - 2 * remark_sum(table, b);
        r = make(name, v, table, 2 * power_tail_bound(X, 2.0), method);
    } else {
        double v = 1.0 + 2 * theta_error_integral(table, {1, b}, X);
        r = make(name, v, table, 2 * theta_integral_tail_bound(X), Method::integral);
    }
    return r;
}

ConstantResult gamma_pnt_ab(u64 a, u64 b, Method method, const Truncation& t) {
    auto table = primes_for(t);
    auto r = gamma_pnt_ab(a, b, method, table);
    r.truncation = t;
    return r;
}

ConstantResult class_log_constant(u64 a, u64 b, const PrimeTable& table) {
    const double X = (double)table.back();
    u64 g = std::gcd(a % b, b);
    ConstantResult r;
    r.name = "Gamma_" + std::to_string(a % b) + "_" + std::to_string(b);
    r.truncation = Truncation::count(table.size());
    r.largest_prime = table.back();
    r.method = Method::integral;
    if (b > 1 && g != 1) {
        // at most one prime in a non-coprime class
        CompensatedSum s;
        for (u64 p : table)
            if (p % b == a % b) s.add(std::log((double)p) / (double)p);
        r.value = s.value();
        r.tail_bound = 0.0;
        return r;
    }
    u64 ph = euler_phi(b);
    r.value = 1.0 / (double)ph + theta_error_integral(table, {a, b}, X);
    r.tail_bound = theta_integral_tail_bound(X);
    return r;
}

} // namespace ldl
