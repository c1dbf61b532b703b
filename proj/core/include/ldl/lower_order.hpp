#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldl/family.hpp"
#include "ldl/primes.hpp"

namespace ldl {

// Per-prime inputs of the sieved expansion, in floating point.
struct PrimeMoments {
    double A0 = 0, A1 = 0, A2 = 0;
    double bad_geometric = 0;   // sum_{m>=1} A'_m(p)/p^{m+1} = sum_{bad t} a/(p(p-a))
    double h_sieve = 0;         // H = 1 + h_sieve
};

// Closed-form families evaluate in O(log p); others fall back to point counts.
PrimeMoments prime_moments(const FamilySpec& fam, u64 p);

// Limit density of K_p along the coprime classes mod b, where
//   S_0: K = 2 A_0 H/p,  S_1: K = A_1 H/p,  S_2: K = A_2 H/p^2.
struct ClassDensity {
    u64 b = 1;
    std::vector<std::pair<u64, double>> w;   // (class a, density); absent classes have 0
    double at(u64 p) const;
};

struct ExpansionShape {
    ClassDensity s0, s1, s2;
    // |A_1(p)| grows like p (the S_1 sum needs the full support)
    bool a1_linear = true;
    bool a1_zero = false;
};
bool has_expansion_shape(const FamilySpec& fam);
ExpansionShape expansion_shape(const FamilySpec& fam);   // ErrorKind::unsupported

// One phihat-weighted piece: factor * sum_p K_p log p/(p log R) phihat(j log p/log R).
struct WeightedPiece {
    const char* name;
    double factor;
    int j;
    const ClassDensity* density;
};
std::vector<WeightedPiece> weighted_pieces(const ExpansionShape& s);
double piece_kernel(const char* piece, const PrimeMoments& m, u64 p, bool sieve_part);

// lim_X ( sum_{p <= X, p = a mod b} log p/p - log X/phi(b) ).
struct ClassConstants {
    explicit ClassConstants(std::size_t prime_count = 1'000'000);
    double gamma(u64 a, u64 b) const;
    double tail_bound() const { return tail_; }
    const PrimeTable& table() const { return table_; }

private:
    PrimeTable table_;
    double g_all_, g13_, g14_, tail_;
    mutable std::vector<std::pair<std::pair<u64, u64>, double>> cache_;
};

// Coefficients of the expansion as log R -> infinity:
//   S = main * phi(0) + c * 2 phihat(0)/log R + O(log^-2 R).
struct ExpansionPiece {
    std::string name;
    double value = 0, main = 0, sieve = 0;
    double tail_bound = 0;
};
struct ExpansionCoefficients {
    std::string family;
    double main = 0;                 // coefficient of phi(0)
    std::vector<ExpansionPiece> pieces;   // S_A', S_0, S_1, S_2, S_Atilde
    double total = 0;
    double tail_bound = 0;
    std::size_t closed_form_primes = 0;
    std::size_t atilde_primes = 0;
    u64 atilde_largest_prime = 0;
};
ExpansionCoefficients expansion_coefficients(const FamilySpec& fam,
                                             std::size_t closed_form_primes = 1'000'000,
                                             std::size_t atilde_primes = 10'000);

} // namespace ldl
