#include <benchmark/benchmark.h>

#include "stablex/path_space.hpp"
#include "stablex/sampling.hpp"
#include "stablex/stable_math.hpp"

using namespace stablex;

namespace {
const StableParams kP = make_params(4.0 / 3.0);
}

static void BM_density_p1(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(density(kP, 1.0, x));
        x = x < 6.0 ? x + 0.37 : -4.0;
    }
}
BENCHMARK(BM_density_p1);

static void BM_midpoint_draw(benchmark::State& state) {
    const MidpointSampler& ms = midpoint_sampler(kP, {});
    RngStream rng(1);
    double d = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ms.draw(rng.uniform01(), d));
        d = d < 20.0 ? d + 0.13 : -3.0;
    }
}
BENCHMARK(BM_midpoint_draw);

static void BM_bridge_skeleton_1024(benchmark::State& state) {
    midpoint_sampler(kP, {});
    RngStream rng(2);
    for (auto _ : state) benchmark::DoNotOptimize(sample_bridge(kP, 0.0, 1024, rng, {}));
}
BENCHMARK(BM_bridge_skeleton_1024);

static void BM_excursion_skeleton_1024(benchmark::State& state) {
    midpoint_sampler(kP, {});
    RngStream rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(sample_excursion(kP, 1024, rng, {}));
}
BENCHMARK(BM_excursion_skeleton_1024);

static void BM_stable_increment(benchmark::State& state) {
    RngStream rng(4);
    for (auto _ : state) benchmark::DoNotOptimize(stable_increment(kP, 1.0, rng));
}
BENCHMARK(BM_stable_increment);

static void BM_m1_decision(benchmark::State& state) {
    auto a = augmented_graph(CadlagPath::indicator(0.1, 1.0));
    auto b = augmented_graph(CadlagPath::indicator(0.0, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(detail::m1_within(a, b, 0.05));
}
BENCHMARK(BM_m1_decision);

BENCHMARK_MAIN();
