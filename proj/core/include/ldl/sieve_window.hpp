#pragma once

#include <vector>

#include "ldl/family.hpp"

namespace ldl {

// t in [N, 2N] with every D_i(t) k-th power free.
struct SieveWindow {
    u64 N = 0;
    std::vector<uint8_t> good_t;   // index t - N, 1 = kept
    u64 W = 0;
    double logR = 0.0;             // supplied by the caller

    bool good(u64 t) const { return good_t.at(t - N) != 0; }
};

SieveWindow sieve_window(const FamilySpec& fam, u64 N, double logR = 0.0);

// prod_{p <= P} (1 - nu_D(p^k)/p^k): the limiting density of sieve_window.
double sieve_density(const FamilySpec& fam, u64 P);

} // namespace ldl
