#include <benchmark/benchmark.h>

#include "elastica/fem.hpp"
#include "elastica/mesh.hpp"

using namespace elastica;

static void BM_MeshDisk(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fem::make_mesh(Domain::UnitDisk, h));
}
BENCHMARK(BM_MeshDisk)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Assemble(benchmark::State& state) {
    const auto mesh = fem::make_mesh(Domain::UnitDisk, 1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fem::assemble(mesh, LameParams(1.0, 1.0), BoundaryCondition::Dirichlet));
    }
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SolveLanczos(benchmark::State& state) {
    const auto ops = fem::assemble(fem::make_mesh(Domain::UnitDisk, 1.0 / static_cast<double>(state.range(0))),
                                   LameParams(1.0, 1.0), BoundaryCondition::Dirichlet);
    fem::SolveOptions o;
    o.count = 20;
    o.apply_trust_threshold = false;
    for (auto _ : state) benchmark::DoNotOptimize(fem::solve_eigs(ops, o));
}
BENCHMARK(BM_SolveLanczos)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
