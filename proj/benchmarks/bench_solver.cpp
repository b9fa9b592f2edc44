#include <random>

#include <benchmark/benchmark.h>

#include "qubvp/qubvp.hpp"

namespace {

using namespace qubvp;

void BM_MeshBuild(benchmark::State& state) {
    const auto map = GridMap::logarithmic(2.0);
    const int n_int = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Mesh::build(map, n_int));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeshBuild)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_StructuredSolve(benchmark::State& state) {
    const int n_int = static_cast<int>(state.range(0));
    const auto mesh = Mesh::build(GridMap::logarithmic(2.0), n_int);
    const auto sys = models::mhd_system(1.0);
    const StateMatrix u = models::mhd_initial_guess().sample(mesh);
    const auto jac = jacobian(sys, mesh, u);
    const Vector rhs = residual(sys, mesh, u);
    for (auto _ : state) benchmark::DoNotOptimize(solve_linear(jac, rhs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StructuredSolve)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_JacobianAssembly(benchmark::State& state) {
    const auto mesh = Mesh::build(GridMap::logarithmic(2.0), 1000);
    const auto sys = models::mhd_system(1.0);
    const StateMatrix u = models::mhd_initial_guess().sample(mesh);
    for (auto _ : state) benchmark::DoNotOptimize(jacobian(sys, mesh, u));
}
BENCHMARK(BM_JacobianAssembly);

void BM_NewtonMhd(benchmark::State& state) {
    const auto mesh = Mesh::build(GridMap::logarithmic(2.0), static_cast<int>(state.range(0)));
    const auto sys = models::mhd_system(1.2);
    const StateMatrix guess = models::mhd_initial_guess().sample(mesh);
    for (auto _ : state) benchmark::DoNotOptimize(newton_solve(sys, mesh, guess));
}
BENCHMARK(BM_NewtonMhd)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ContinuationLadder(benchmark::State& state) {
    const auto sys = models::mhd_system(1.0);
    for (auto _ : state) {
        const auto levels = continuation_solve(sys, GridMap::logarithmic(2.0), 100, 2, models::mhd_initial_guess());
        benchmark::DoNotOptimize(richardson_ladder(levels, models::wall_shear, default_orders(2)).best());
    }
}
BENCHMARK(BM_ContinuationLadder)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
