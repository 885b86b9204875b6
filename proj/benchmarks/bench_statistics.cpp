#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "wgof/rng.hpp"
#include "wgof/sample.hpp"
#include "wgof/statistics.hpp"

namespace {

using namespace wgof;

std::vector<double> sample(std::size_t n)
{
    RandomStream rng(7, n);
    std::vector<double> u;
    sorted_uniforms(rng, n, u);
    return u;
}

void BM_SortedUniforms(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomStream rng(1, 2);
    std::vector<double> u;
    for (auto _ : state) {
        sorted_uniforms(rng, n, u);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SortedUniforms)->RangeMultiplier(10)->Range(100, 100000);

template <class F>
void run_stat(benchmark::State& state, F f)
{
    const auto u = sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(f(u));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KS(benchmark::State& s) { run_stat(s, [](const auto& u) { return ks_statistic(u); }); }
void BM_S(benchmark::State& s) { run_stat(s, [](const auto& u) { return s_statistic(u); }); }
void BM_C(benchmark::State& s) { run_stat(s, [](const auto& u) { return c_statistic(u, 0.25); }); }
void BM_EJ(benchmark::State& s)
{
    const double k = 0.5 / std::sqrt(static_cast<double>(s.range(0)));
    run_stat(s, [k](const auto& u) { return ej_statistic(u, k); });
}
void BM_I(benchmark::State& s) { run_stat(s, [](const auto& u) { return i_statistic(u); }); }

BENCHMARK(BM_KS)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_S)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_C)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_EJ)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_I)->Arg(100)->Arg(1000)->Arg(10000);

void BM_PhiloxUniform(benchmark::State& state)
{
    RandomStream rng(3, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.uniform());
    }
}
BENCHMARK(BM_PhiloxUniform);

}  // namespace
