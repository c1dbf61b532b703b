#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    out.push_back(2);
    std::vector<bool> comp(n / 2 + 1, false);   // index i <-> 2i+1
    for (u64 i = 1; 2 * i + 1 <= n; ++i) {
        if (comp[i]) continue;
        const u64 q = 2 * i + 1;
        out.push_back(q);
        for (u64 m = q * q; m <= n; m += 2 * q) comp[m / 2] = true;
    }
    return out;
}

std::vector<u64> first_primes(std::size_t n) {
    double x = n < 6 ? 15 : n * (std::log((double)n) + std::log(std::log((double)n))) + 10;
    auto ps = primes_up_to((u64)x);
    if (ps.size() < n) throw std::logic_error("oracle::first_primes: bound too small");
    ps.resize(n);
    return ps;
}

long double prime_sum(const std::vector<u64>& ps, const std::function<long double(u64)>& f) {
    long double s = 0, c = 0;
    for (u64 p : ps) {
        long double y = f(p) - c;
        long double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

long double gamma_pnt(const std::vector<u64>& ps) {
    const long double euler = 0.5772156649015328606065120900824024L;
    return -euler - prime_sum(ps, [](u64 p) {
        long double P = p;
        return std::log(P) / (P * (P - 1));
    });
}

int trace(u64 A, u64 B, u64 p) {
    std::vector<int> roots(p, 0);
    for (u64 y = 0; y < p; ++y) ++roots[y * y % p];
    long n = 0;
    for (u64 x = 0; x < p; ++x) n += roots[(x * x % p * x + A * x + B) % p];
    return (int)((long)p - n);
}

mpz_class moment(u64 p, int r, bool good, const std::function<u64(u64)>& A, const std::function<u64(u64)>& B) {
    mpz_class s = 0;
    for (u64 t = 0; t < p; ++t) {
        const u64 a = A(t), b = B(t);
        // -16 (4a^3 + 27b^2) = 0 mod p, p >= 5
        const bool bad = (4 * (a * a % p * a % p) + 27 * (b * b % p)) % p == 0;
        if (bad == good) continue;
        mpz_class v = trace(a, b, p), pw;
        mpz_pow_ui(pw.get_mpz_t(), v.get_mpz_t(), (unsigned long)r);
        s += pw;
    }
    return s;
}

long long quadratic_sum(long long a, long long b, long long c, u64 p) {
    std::vector<int> chi(p, -1);
    chi[0] = 0;
    for (u64 x = 1; x < p; ++x) chi[x * x % p] = 1;
    auto md = [p](long long v) { long long r = v % (long long)p; return (u64)(r < 0 ? r + (long long)p : r); };
    long long s = 0;
    for (u64 t = 0; t < p; ++t) s += chi[md(md(a) * (long long)(t * t % p) + md(b) * (long long)t + md(c))];
    return s;
}

mpz_class catalan(unsigned l) {
    std::vector<mpz_class> c{1};
    for (unsigned n = 0; n < l; ++n) {
        mpz_class s = 0;
        for (unsigned i = 0; i <= n; ++i) s += c[i] * c[n - i];
        c.push_back(s);
    }
    return c[l];
}

std::vector<mpz_class> eulerian(unsigned n) {
    std::vector<mpz_class> row{1};
    for (unsigned m = 1; m <= n; ++m) {
        std::vector<mpz_class> next(m, 0);
        for (unsigned k = 0; k < m; ++k) {
            if (k < row.size()) next[k] += (k + 1) * row[k];
            if (k >= 1 && k - 1 < row.size()) next[k] += (m - k) * row[k - 1];
        }
        row = next;
    }
    return row;
}

mpq_class g_st(u64 p) {
    mpq_class x(mpz_class((unsigned long)p), mpz_class((unsigned long)((p + 1) * (p + 1))));
    mpq_class s(mpz_class((unsigned long)(p - 1)), mpz_class((unsigned long)(p + 1)));
    x.canonicalize();
    s.canonicalize();
    mpq_class r = (1 - s) / (2 * x) - 1 - x;
    r.canonicalize();
    return r;
}

mpq_class g_cm(u64 p) {
    mpq_class x(mpz_class((unsigned long)p), mpz_class((unsigned long)((p + 1) * (p + 1))));
    mpq_class s(mpz_class((unsigned long)(p - 1)), mpz_class((unsigned long)(p + 1)));
    x.canonicalize();
    s.canonicalize();
    mpq_class r = (1 - s) / s - 2 * x;
    r.canonicalize();
    return r;
}

} // namespace oracle
