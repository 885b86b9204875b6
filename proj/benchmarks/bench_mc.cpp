#include <vector>

#include <benchmark/benchmark.h>

#include "wgof/mc.hpp"

namespace {

using namespace wgof;

// Replicates per second for all sup-type statistics at once.
void BM_ReplicatesSupTypes(benchmark::State& state)
{
    const std::vector<StatisticSpec> specs{StatisticSpec::ks(),
                                           StatisticSpec::bs(0.05),
                                           StatisticSpec::ej(RateRule::kappa_o()),
                                           StatisticSpec::ej(RateRule::kappa_star()),
                                           StatisticSpec::ad_sup(),
                                           StatisticSpec::ad_log(),
                                           StatisticSpec::weighted_tau(0.25)};
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t reps = 1000;
    for (auto _ : state) {
        auto v = replicate_statistics(specs, n, reps, 1, StreamPurpose::Calibration, null_sampler(), 0);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * reps);
}
BENCHMARK(BM_ReplicatesSupTypes)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ModelSampling(benchmark::State& state)
{
    const AlternativeModel models[] = {AlternativeModel::m1(0.15), AlternativeModel::m5(0.3, 0.1),
                                       AlternativeModel::m6(1.0, 0.1), AlternativeModel::m7(2.0, 0.1)};
    const auto& m = models[state.range(0)];
    RandomStream rng(5, 6);
    std::vector<double> u;
    for (auto _ : state) {
        m.sample_sorted(rng, 1000, u);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetLabel(m.to_string());
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ModelSampling)->DenseRange(0, 3);

}  // namespace
