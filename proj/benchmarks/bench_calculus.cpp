#include "tscalc/calculus.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/harness.hpp"
#include "tscalc/monomials.hpp"

#include <benchmark/benchmark.h>

namespace {

const tsc::time_scale mixed = tsc::time_scale::make({{0, 1}, {2, 2}, {3, 4}, {5, 5}, {6, 8}});

void BM_DeltaIntegral(benchmark::State& state)
{
    const tsc::real_function f = tsc::to_real_function(tsc::parse("t^4 - 3*t^2 + sin(t)"));
    for (auto _ : state)
        benchmark::DoNotOptimize(tsc::delta_integral(mixed, f, mixed.a(), mixed.b()));
}
BENCHMARK(BM_DeltaIntegral);

void BM_DeltaIntegralIntegers(benchmark::State& state)
{
    const auto z = tsc::time_scale::integers_window(0, state.range(0));
    const tsc::real_function f = tsc::to_real_function(tsc::parse("t^2"));
    for (auto _ : state)
        benchmark::DoNotOptimize(tsc::delta_integral(z, f, z.a(), z.b()));
}
BENCHMARK(BM_DeltaIntegralIntegers)->Arg(10)->Arg(1000);

void BM_MonomialH2(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(tsc::monomial_h(mixed, 2, 7.5, 0.5));
}
BENCHMARK(BM_MonomialH2);

void BM_DeltaSupInf(benchmark::State& state)
{
    const tsc::real_function f = tsc::to_real_function(tsc::parse("t^5 - t"));
    for (auto _ : state)
        benchmark::DoNotOptimize(tsc::delta_sup_inf(mixed, f));
}
BENCHMARK(BM_DeltaSupInf);

void BM_FuzzTrial(benchmark::State& state)
{
    tsc::fuzz_config cfg;
    cfg.seed = 42;
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(tsc::run_scenario(tsc::generate_trial(cfg, i++ % 64)));
}
BENCHMARK(BM_FuzzTrial);

} // namespace

BENCHMARK_MAIN();
