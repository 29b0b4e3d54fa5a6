#include <benchmark/benchmark.h>

#include "tailband/bands.hpp"
#include "tailband/distributions.hpp"
#include "tailband/limit_laws.hpp"
#include "tailband/limitsim.hpp"
#include "tailband/plotsets.hpp"

using namespace tailband;

namespace {

OrderedSample pareto(std::size_t n)
{
    RngStream rng(1, streams::sample);
    return sample_pareto(0.25, n, rng);
}

void BM_SamplePareto(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    RngStream rng(1, streams::sample);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_pareto(0.25, n, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePareto)->Arg(10000)->Arg(100000);

void BM_QqSet(benchmark::State& state)
{
    const auto s = pareto(50000);
    const PlotConfig cfg{static_cast<std::size_t>(state.range(0)), 0.05, 0.05};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qq_set(s, cfg, true));
    }
}
BENCHMARK(BM_QqSet)->Arg(1000)->Arg(10000);

void BM_MeSet(benchmark::State& state)
{
    const auto s = pareto(50000);
    const PlotConfig cfg{static_cast<std::size_t>(state.range(0)), 0.05, 0.05};
    for (auto _ : state) {
        benchmark::DoNotOptimize(me_set(s, cfg, true));
    }
}
BENCHMARK(BM_MeSet)->Arg(1000)->Arg(10000);

void BM_Prop51(benchmark::State& state)
{
    double m = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(prop51_probability(m, 0.0526));
        m = m < 3.0 ? m + 0.01 : 0.5;
    }
}
BENCHMARK(BM_Prop51);

void BM_QqSupQuantile(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(qq_sup_quantile(0.975, 0.05));
    }
}
BENCHMARK(BM_QqSupQuantile);

void BM_QqBand(benchmark::State& state)
{
    const auto s = pareto(50000);
    const PlotConfig cfg{2000, 0.05, 0.05};
    const auto xi = hill_estimate(s, cfg.k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qq_band(s, cfg, xi));
    }
}
BENCHMARK(BM_QqBand);

void BM_Bridge(benchmark::State& state)
{
    RngStream rng(2, streams::bridge);
    std::vector<double> out;
    const auto m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        simulate_bridge_into(m, rng, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bridge)->Arg(1024)->Arg(8192);

void BM_MeBandQuantiles(benchmark::State& state)
{
    const BridgeMcOptions opts{static_cast<std::size_t>(state.range(0)), 8192, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(me_band_quantiles(0.25, 0.1, 0.975, RngStream(3, streams::bridge), opts));
    }
}
BENCHMARK(BM_MeBandQuantiles)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SupAbsBm(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_sup_abs_bm(10000, RngStream(4, streams::sup_bm)));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SupAbsBm)->Unit(benchmark::kMillisecond);

void BM_StildeCf(benchmark::State& state)
{
    const StableSpec spec{1.5, 1.0, StableSpec::Kind::LimitSTilde};
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(limit_cf(spec, t));
        t = t < 50.0 ? t * 1.1 : 0.1;
    }
}
BENCHMARK(BM_StildeCf);

void BM_StildeInverter(benchmark::State& state)
{
    const StableSpec spec{1.5, 1.0, StableSpec::Kind::LimitSTilde};
    for (auto _ : state) {
        const CfInverter inv(spec);
        benchmark::DoNotOptimize(inv.quantile(0.975));
    }
}
BENCHMARK(BM_StildeInverter)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_StildeDraws(benchmark::State& state)
{
    const StableSpec spec{1.5, 1.0, StableSpec::Kind::LimitSTilde};
    for (auto _ : state) {
        benchmark::DoNotOptimize(draw_limit_many(spec, 10000, RngStream(5, streams::stilde)));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_StildeDraws)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
