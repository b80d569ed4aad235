#include <benchmark/benchmark.h>

#include "elastica/specfun.hpp"

namespace sf = elastica::specfun;

static void BM_BesselJ(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::bessel_j(k, x));
        x = x < 60.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(5)->Arg(40);

static void BM_BesselTriple(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::bessel_j_triple(7, x));
        x = x < 60.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_BesselTriple);

static void BM_BesselZeros(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sf::bessel_zeros(3, count));
}
BENCHMARK(BM_BesselZeros)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
