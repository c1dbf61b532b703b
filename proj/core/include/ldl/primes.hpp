#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldl/arith.hpp"
#include "ldl/summation.hpp"

namespace ldl {

struct SieveLimits {
    u64 table_cap = 10'000'000'000ULL;      // largest PrimeTable we agree to build
    u64 stream_cap = 100'000'000'000ULL;    // largest bound for streamed sums
};

// Residue class p = a mod b.  b == 1 means every prime.
struct ResidueClass {
    u64 a = 0;
    u64 b = 1;
    bool all() const { return b == 1; }
    bool contains(u64 p) const { return b == 1 || p % b == a % b; }
    std::string label() const;
};

class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(u64 limit, std::vector<u64> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    u64 limit() const { return limit_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    u64 operator[](std::size_t i) const { return primes_[i]; }
    u64 back() const { return primes_.back(); }
    std::span<const u64> view() const { return primes_; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    // Primes <= x (prefix view).
    std::span<const u64> up_to(u64 x) const;
    std::vector<u64> residue_class(u64 a, u64 b) const;

private:
    u64 limit_ = 0;
    std::vector<u64> primes_;
};

PrimeTable sieve_primes(u64 limit, const SieveLimits& caps = {});
PrimeTable first_primes(std::size_t n, const SieveLimits& caps = {});

// Primes in [lo, hi], ascending, delivered block by block.  Single pass,
// memory bounded by the block size.
void for_each_prime_block(u64 lo, u64 hi,
                          const std::function<void(std::span<const u64>)>& fn,
                          const SieveLimits& caps = {});

// Deterministic parallel reduction over the primes in [2, hi].  The range is
// cut into fixed blocks independent of the thread count; each block gets a
// fresh Acc and the block results are merged in ascending order.
// Acc must provide merge(const Acc&).
template <class Acc>
Acc reduce_primes(u64 hi, const std::function<void(std::span<const u64>, Acc&)>& fn,
                  const SieveLimits& caps = {});

// Same contract over an explicit table.
template <class Acc>
Acc reduce_table(std::span<const u64> primes,
                 const std::function<void(std::span<const u64>, Acc&)>& fn);

// ---------------------------------------------------------------------------
// theta and its error term

// theta(t) = sum_{p <= t, p in class} log p; E(t) = theta(t) - t/phi(b).
class ThetaAccumulator {
public:
    ThetaAccumulator(std::span<const u64> primes, ResidueClass cls);
    double theta(double t) const;
    double error(double t) const;
    std::span<const u64> cuts() const { return cuts_; }
    std::span<const double> partial() const { return partial_; }
    ResidueClass residue() const { return cls_; }

private:
    ResidueClass cls_;
    std::vector<u64> cuts_;
    std::vector<double> partial_;
};

enum class Method { direct_sum, closed_form, integral, moment_series };
const char* to_string(Method m);

struct Truncation {
    enum Kind { prime_count, prime_limit } kind = prime_limit;
    u64 value = 0;
    static Truncation count(u64 n) { return {prime_count, n}; }
    static Truncation limit(u64 x) { return {prime_limit, x}; }
    std::string label() const;
};

struct ConstantResult {
    std::string name;
    double value = 0.0;
    Truncation truncation;
    u64 largest_prime = 0;   // last prime actually summed
    double tail_bound = 0.0;
    Method method = Method::direct_sum;
    std::optional<double> paper_value;
    std::string paper_citation;
};

// Resolves a truncation into the table it denotes.
PrimeTable primes_for(const Truncation& t, const SieveLimits& caps = {});

// int_1^X E(t)/t^2 dt, evaluated exactly on the step function theta:
// sum_{p<=X} log p (1/p - 1/X) - log(X)/phi(b).
double theta_error_integral(const PrimeTable& table, ResidueClass cls, double X);

// Tail bound for sum_{p > X} c log p / p^s with class density 1/phi(b):
// (c/phi(b)) int_X^inf log t / t^s dt.
double power_tail_bound(double X, double s, double c = 1.0, u64 phi_b = 1);

// Heuristic bound on |int_X^inf E(t)/t^2 dt| from |E(t)| < sqrt(t) log^2 t / (8 pi).
double theta_integral_tail_bound(double X);

ConstantResult gamma_pnt(Method method, const Truncation& t);
ConstantResult gamma_pnt(Method method, const PrimeTable& table);
ConstantResult gamma_pnt_ab(u64 a, u64 b, Method method, const Truncation& t);
ConstantResult gamma_pnt_ab(u64 a, u64 b, Method method, const PrimeTable& table);

// Gamma_{a,b} = lim_X ( sum_{p<=X, p=a(b)} log p / p - log X / phi(b) ), computed
// as 1/phi(b) + int_1^X E_{a,b}(t)/t^2 dt (+ the p | b contribution when
// gcd(a,b) > 1).  gamma_pnt = Gamma_{0,1}; gamma_pnt_{1,b} = 2 Gamma_{1,b}
// for b in {3,4}.
ConstantResult class_log_constant(u64 a, u64 b, const PrimeTable& table);

} // namespace ldl

#include "ldl/primes_impl.hpp"
