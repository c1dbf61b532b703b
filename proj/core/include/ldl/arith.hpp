#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ldl {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }
u64 powmod(u64 b, u64 e, u64 m);
u64 invmod(u64 a, u64 m); // requires gcd(a, m) = 1

// Least non-negative residue of a (possibly negative) mod m.
inline u64 mod(i64 a, u64 m) {
    i64 r = a % (i64)m;
    return r < 0 ? (u64)(r + (i64)m) : (u64)r;
}
inline u64 mod128(i128 a, u64 m) {
    i128 r = a % (i128)m;
    return r < 0 ? (u64)(r + (i128)m) : (u64)r;
}

bool is_prime(u64 n);                 // deterministic Miller-Rabin
int jacobi_symbol(i64 a, u64 n);      // n odd positive
int legendre_symbol(i64 a, u64 p, bool validate = true);

u64 euler_phi(u64 n);
std::vector<std::pair<u64, int>> factorize(u64 n); // trial division
u64 primitive_root(u64 p);

// Writes p = a^2 + b^2 with a odd (p = 1 mod 4).  Cornacchia.
std::pair<u64, u64> two_squares(u64 p);

// Integer k-th root floor.
u64 iroot(u64 n, int k);

} // namespace ldl
