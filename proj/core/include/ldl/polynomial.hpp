#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldl/arith.hpp"

namespace ldl {

// Integer polynomial, ascending coefficients: c[0] + c[1] T + ...
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::vector<i64> c);
    IntPoly(std::initializer_list<i64> c) : IntPoly(std::vector<i64>(c)) {}

    int degree() const { return (int)c_.size() - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<i64>& coeffs() const { return c_; }
    i64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

    u64 eval_mod(u64 t, u64 m) const;     // t already reduced mod m
    i128 eval(i64 t) const;               // throws on 128-bit overflow
    IntPoly derivative() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(i64 k, const IntPoly& a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

    std::string str(const char* var = "T") const;

private:
    void trim();
    std::vector<i64> c_;
};

// Solutions of f(t) = 0 mod p^e, as residues mod p^e, by lifting the
// solutions mod p^j one digit at a time.  Exact for any f.  Throws when the
// solution set exceeds max_solutions (e.g. f = 0 mod p identically).
std::vector<u64> roots_mod_prime_power(const IntPoly& f, u64 p, int e,
                                       std::size_t max_solutions = 1u << 22);

} // namespace ldl
