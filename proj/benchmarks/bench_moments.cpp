#include <benchmark/benchmark.h>

#include "ldl/constants.hpp"
#include "ldl/family.hpp"
#include "ldl/moments.hpp"

namespace {
void fibres(benchmark::State& st, const char* family, ldl::Strategy s) {
    auto f = ldl::builtin_family(family);
    const auto p = (ldl::u64)st.range(0);
    for (auto _ : st) benchmark::DoNotOptimize(ldl::fiber_values(f, p, s).a.data());
}
} // namespace

static void BM_FibresNaive(benchmark::State& st) { fibres(st, "noncm_3x12t", ldl::Strategy::naive); }
static void BM_FibresFft(benchmark::State& st) { fibres(st, "noncm_3x12t", ldl::Strategy::fft); }
static void BM_FibresSextic(benchmark::State& st) { fibres(st, "cm_b1_kappa2", ldl::Strategy::sextic); }
static void BM_FibresQuartic(benchmark::State& st) { fibres(st, "rank1_36t", ldl::Strategy::quartic); }
BENCHMARK(BM_FibresNaive)->Arg(1009)->Arg(4001)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FibresFft)->Arg(1009)->Arg(4001)->Arg(104729)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FibresSextic)->Arg(1009)->Arg(4001)->Arg(104729)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FibresQuartic)->Arg(1009)->Arg(4001)->Arg(104729)->Unit(benchmark::kMicrosecond);

static void BM_ClosedFormMoments(benchmark::State& st) {
    auto f = ldl::builtin_family("rank0_36t");
    for (auto _ : st)
        for (ldl::u64 p : {10007ULL, 100003ULL, 1000003ULL})
            benchmark::DoNotOptimize(ldl::closed_form_moment(f, p, 2, ldl::Side::good));
}
BENCHMARK(BM_ClosedFormMoments);

static void BM_FamilyAtilde(benchmark::State& st) {
    auto f = ldl::builtin_family("cm_b1_kappa1");
    for (auto _ : st) benchmark::DoNotOptimize(ldl::family_constant_Atilde(f, (std::size_t)st.range(0)).main);
}
BENCHMARK(BM_FamilyAtilde)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
