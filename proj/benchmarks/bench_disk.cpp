#include <benchmark/benchmark.h>

#include "elastica/disk_modes.hpp"

using namespace elastica;

static void BM_CharacteristicDet(benchmark::State& state) {
    const LameParams p(1.0, 1.0);
    double l = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(disk::characteristic_det(4, l, p, BoundaryCondition::Free));
        l = l < 400.0 ? l + 0.7 : 1.0;
    }
}
BENCHMARK(BM_CharacteristicDet);

static void BM_PotentialScan(benchmark::State& state) {
    const double lmax = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(disk::disk_spectrum_potential(LameParams(1.0, 1.0), BoundaryCondition::Dirichlet, lmax));
    }
}
BENCHMARK(BM_PotentialScan)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
