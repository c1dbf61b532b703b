#include <benchmark/benchmark.h>

#include <cmath>

#include "ldl/constants.hpp"
#include "ldl/primes.hpp"

static void BM_SievePrimes(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(ldl::sieve_primes((ldl::u64)st.range(0)).size());
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_SievePrimes)->RangeMultiplier(10)->Range(100'000, 10'000'000)->Unit(benchmark::kMillisecond);

static void BM_StreamedThetaSum(benchmark::State& st) {
    for (auto _ : st) {
        double s = 0;
        ldl::for_each_prime_block(2, (ldl::u64)st.range(0), [&](std::span<const ldl::u64> b) {
            for (auto p : b) s += std::log((double)p);
        });
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_StreamedThetaSum)->Arg(10'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_GammaPnt(benchmark::State& st) {
    auto t = ldl::first_primes((std::size_t)st.range(0));
    for (auto _ : st) {
        benchmark::DoNotOptimize(ldl::gamma_pnt(ldl::Method::closed_form, t).value);
        benchmark::DoNotOptimize(ldl::gamma_pnt(ldl::Method::integral, t).value);
    }
}
BENCHMARK(BM_GammaPnt)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_StAtildeSeries(benchmark::State& st) {
    auto t = ldl::first_primes(100'000);
    for (auto _ : st)
        benchmark::DoNotOptimize(ldl::compute_constant("gamma_st_atilde", t, ldl::Method::moment_series).value);
}
BENCHMARK(BM_StAtildeSeries)->Unit(benchmark::kMillisecond);
