#include "ldl/arith.hpp"

#include <cmath>

#include "ldl/error.hpp"

namespace ldl {

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::resource: return "resource";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::incomplete_support: return "incomplete_support";
    case ErrorKind::catalog: return "catalog";
    case ErrorKind::config: return "config";
    case ErrorKind::dependency: return "dependency";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::empty_table: return "empty_table";
    case ErrorKind::degenerate_sieve: return "degenerate_sieve";
    case ErrorKind::width: return "width";
    }
    return "unknown";
}

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr) {
        i128 q = r / nr;
        i128 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw Error(ErrorKind::domain, "invmod: not invertible");
    if (t < 0) t += m;
    return (u64)t;
}

static bool mr_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // First twelve primes as witnesses: deterministic for n < 3.3e24.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (mr_witness(n, a, d, s)) return false;
    return true;
}

int jacobi_symbol(i64 a_in, u64 n) {
    if (n == 0 || (n & 1) == 0) throw Error(ErrorKind::domain, "jacobi: n must be odd positive");
    u64 a = mod(a_in, n);
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

int legendre_symbol(i64 a, u64 p, bool validate) {
    if (p == 2 || (p & 1) == 0)
        throw Error(ErrorKind::domain, "legendre: p must be an odd prime");
    if (validate && !is_prime(p))
        throw Error(ErrorKind::domain, "legendre: p must be an odd prime");
    return jacobi_symbol(a, p);
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> f;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        f.emplace_back(d, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    auto f = factorize(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : f)
            if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw Error(ErrorKind::domain, "primitive_root: none found");
}

u64 iroot(u64 n, int k) {
    if (k == 1 || n < 2) return n;
    u64 r = (u64)std::pow((long double)n, 1.0L / k);
    auto pw = [&](u64 x) {
        u128 v = 1;
        for (int i = 0; i < k; ++i) {
            v *= x;
            if (v > n) return (u128)n + 1;
        }
        return v;
    };
    while (r > 0 && pw(r) > n) --r;
    while (pw(r + 1) <= n) ++r;
    return r;
}

static u64 sqrt_mod_minus_one(u64 p) {
    // x^2 = -1 mod p, p = 1 mod 4: c^((p-1)/4) for a non-residue c.
    for (u64 c = 2;; ++c)
        if (jacobi_symbol((i64)c, p) == -1) return powmod(c, (p - 1) / 4, p);
}

std::pair<u64, u64> two_squares(u64 p) {
    if (p % 4 != 1) throw Error(ErrorKind::domain, "two_squares: p must be 1 mod 4");
    u64 r0 = p, r1 = sqrt_mod_minus_one(p);
    if (r1 > p / 2) r1 = p - r1;
    u64 lim = iroot(p, 2);
    while (r1 > lim) {
        u64 t = r0 % r1;
        r0 = r1;
        r1 = t;
    }
    u64 a = r1, b = iroot(p - a * a, 2);
    if (a % 2 == 0) std::swap(a, b);
    return {a, b};
}

} // namespace ldl
