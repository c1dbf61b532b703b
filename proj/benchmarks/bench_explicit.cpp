#include <benchmark/benchmark.h>

#include "ldl/explicit_formula.hpp"

static void BM_EvaluateSBatch(benchmark::State& st) {
    auto m = ldl::family_model(ldl::builtin_family("cm_b1_kappa2"), 300);
    auto f = ldl::builtin_test_pair("gaussian_truncated:2");
    ldl::EvaluateOptions o;
    o.prime_limit = (ldl::u64)st.range(0);
    o.tail = ldl::TailModel::pnt;
    m.atilde();
    for (auto _ : st) benchmark::DoNotOptimize(ldl::evaluate_S_batch(m, f, {50, 100, 200}, o).back().total);
}
BENCHMARK(BM_EvaluateSBatch)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_TestPairBuild(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(ldl::builtin_test_pair("gaussian_truncated:2").phihat_sup);
}
BENCHMARK(BM_TestPairBuild)->Unit(benchmark::kMillisecond);
