#include <benchmark/benchmark.h>

#include "wgof/efficiency.hpp"
#include "wgof/shape.hpp"

namespace {

using namespace wgof;

void BM_Shape(benchmark::State& state)
{
    const auto m = AlternativeModel::m2(0.75);
    for (auto _ : state) {
        benchmark::DoNotOptimize(shape(m).theta());
    }
}
BENCHMARK(BM_Shape)->Unit(benchmark::kMillisecond);

void BM_SupAstar(benchmark::State& state)
{
    const auto s = shape(AlternativeModel::m1(0.15));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sup_abs_Astar(s).m0);
    }
}
BENCHMARK(BM_SupAstar)->Unit(benchmark::kMillisecond);

void BM_RhoA(benchmark::State& state)
{
    const auto s = shape(AlternativeModel::m1(0.15));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rho_A_squared(s).value);
    }
}
BENCHMARK(BM_RhoA)->Unit(benchmark::kMillisecond);

void BM_EfficiencyReport(benchmark::State& state)
{
    const auto s = shape(AlternativeModel::m3(0.05, 2.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(efficiency_report(s, {0.01, 0.05, 0.1, 0.25}).rho_A);
    }
}
BENCHMARK(BM_EfficiencyReport)->Unit(benchmark::kMillisecond);

}  // namespace
