#pragma once

// Template definitions for primes.hpp.

#include <algorithm>

#include "ldl/parallel.hpp"

namespace ldl {

namespace detail {
inline constexpr u64 kReduceBlock = u64(1) << 22;  // numbers per block
inline constexpr std::size_t kTableBlock = 1 << 15; // primes per block

std::vector<u64> base_primes(u64 hi);
// Primes in [lo, hi] using base primes covering sqrt(hi).
void sieve_block(u64 lo, u64 hi, std::span<const u64> base, std::vector<u64>& out);
void check_stream_cap(u64 hi, const SieveLimits& caps);
} // namespace detail

template <class Acc>
Acc reduce_primes(u64 hi, const std::function<void(std::span<const u64>, Acc&)>& fn,
                  const SieveLimits& caps) {
    detail::check_stream_cap(hi, caps);
    Acc total{};
    if (hi < 2) return total;
    const auto base = detail::base_primes(hi);
    const std::size_t nblocks = (hi / detail::kReduceBlock) + 1;
    // Process in waves so memory stays bounded when nblocks is large.
    const std::size_t wave = std::max<std::size_t>(thread_count() * 4, 1);
    for (std::size_t w0 = 0; w0 < nblocks; w0 += wave) {
        std::size_t w1 = std::min(nblocks, w0 + wave);
        std::vector<Acc> part(w1 - w0);
        run_indexed(w1 - w0, [&](std::size_t i) {
            u64 lo = (w0 + i) * detail::kReduceBlock;
            u64 up = std::min<u64>(hi, lo + detail::kReduceBlock - 1);
            std::vector<u64> ps;
            detail::sieve_block(lo, up, base, ps);
            fn(ps, part[i]);
        });
        for (auto& a : part) total.merge(a);
    }
    return total;
}

template <class Acc>
Acc reduce_table(std::span<const u64> primes,
                 const std::function<void(std::span<const u64>, Acc&)>& fn) {
    const std::size_t n = primes.size();
    const std::size_t nblocks = (n + detail::kTableBlock - 1) / detail::kTableBlock;
    std::vector<Acc> part(nblocks);
    run_indexed(nblocks, [&](std::size_t i) {
        std::size_t lo = i * detail::kTableBlock;
        std::size_t len = std::min(detail::kTableBlock, n - lo);
        fn(primes.subspan(lo, len), part[i]);
    });
    Acc total{};
    for (auto& a : part) total.merge(a);
    return total;
}

// Common accumulator: one compensated sum.
struct SumAcc {
    CompensatedSum s;
    void merge(const SumAcc& o) { s.add(o.s); }
    double value() const { return s.value(); }
};

} // namespace ldl
