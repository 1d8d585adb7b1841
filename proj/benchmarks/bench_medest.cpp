#include <benchmark/benchmark.h>

#include <vector>

#include "medest/enumeration.hpp"
#include "medest/estimators.hpp"
#include "medest/montecarlo.hpp"
#include "medest/population.hpp"
#include "medest/rng.hpp"

namespace {

medest::Population synthetic_population(std::size_t n_units) {
    medest::Xoshiro256pp rng(7);
    std::vector<double> y(n_units);
    std::vector<double> x(n_units);
    for (std::size_t i = 0; i < n_units; ++i) {
        const double noise =
            static_cast<double>(rng() >> 11) * 0x1.0p-53;
        y[i] = 10.0 * static_cast<double>(i) + 5.0 * noise + 1.0;
        x[i] = 2.0 * y[i] + noise;
    }
    return medest::Population("bench", std::move(y), std::move(x));
}

// Full enumeration of every size-n subset; the interesting axis is N.
void bm_exact_enumeration(benchmark::State& state) {
    const auto pop = synthetic_population(static_cast<std::size_t>(state.range(0)));
    const int n = static_cast<int>(state.range(1));
    std::size_t samples = 0;
    for (auto _ : state) {
        const auto dist = medest::exact_sampling_distribution(pop, n);
        benchmark::DoNotOptimize(dist.var_m);
        samples = dist.samples;
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(samples) *
                            state.iterations());
    state.counters["samples"] = static_cast<double>(samples);
}
BENCHMARK(bm_exact_enumeration)
    ->Args({20, 5})
    ->Args({30, 5})
    ->Args({34, 5})
    ->Args({24, 9})
    ->Unit(benchmark::kMillisecond);

// Same enumeration fanned out across worker threads.
void bm_exact_enumeration_threads(benchmark::State& state) {
    const auto pop = synthetic_population(32);
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto dist = medest::exact_sampling_distribution(pop, 8, workers);
        benchmark::DoNotOptimize(dist.var_m);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(10518300) *
                            state.iterations());
}
BENCHMARK(bm_exact_enumeration_threads)
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->Arg(8)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

// The closed-form median distribution (odd n, distinct y) versus walking
// the whole sample space for the same three moments.
void bm_median_fast_path(benchmark::State& state) {
    const auto pop = synthetic_population(static_cast<std::size_t>(state.range(0)));
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state) {
        const auto moments = medest::median_distribution_fast(pop, n);
        benchmark::DoNotOptimize(moments.cov_ym);
    }
}
BENCHMARK(bm_median_fast_path)->Args({34, 5})->Args({200, 25})->Args({2000, 101});

void bm_median_by_enumeration(benchmark::State& state) {
    const auto pop = synthetic_population(static_cast<std::size_t>(state.range(0)));
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state) {
        const auto dist = medest::exact_sampling_distribution(pop, n);
        benchmark::DoNotOptimize(dist.cov_ym);
    }
}
BENCHMARK(bm_median_by_enumeration)
    ->Args({34, 5})
    ->Unit(benchmark::kMillisecond);

// Monte Carlo throughput in replicates per second.
void bm_monte_carlo(benchmark::State& state) {
    const auto pop = synthetic_population(200);
    const std::vector<medest::EstimatorSpec> specs = {
        medest::preset(medest::PresetId::q1, 0.0, 1.0),
        medest::preset(medest::PresetId::q2, 0.0, 1.0),
        medest::preset(medest::PresetId::q5, 0.0, 1.0),
    };
    const double mbar = medest::median_distribution_fast(pop, 25).mean_m;
    medest::McConfig cfg;
    cfg.n = 25;
    cfg.replicates = 20000;
    cfg.seed = 42;
    cfg.workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto result = medest::mc_run(pop, specs, mbar, cfg);
        benchmark::DoNotOptimize(result.estimators[0].mse);
    }
    state.SetItemsProcessed(
        static_cast<std::int64_t>(cfg.replicates) * state.iterations());
}
BENCHMARK(bm_monte_carlo)
    ->Arg(1)
    ->Arg(4)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
