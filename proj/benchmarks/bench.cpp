#include <random>

#include <benchmark/benchmark.h>

#include "aelt/action.hpp"
#include "aelt/orlicz.hpp"

using namespace aelt;

namespace {

DiscreteFunction random_function(const Grid& grid, int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    DiscreteFunction u(grid, dim);
    for (double& v : u.values) v = unit(rng);
    return u;
}

void BM_conjugate_numeric(benchmark::State& state) {
    const GFunction g = example_quadratic();
    const Vec y{1.3, -0.7};
    for (auto _ : state) benchmark::DoNotOptimize(conjugate_numeric(g, y));
}
BENCHMARK(BM_conjugate_numeric);

void BM_luxemburg_norm(benchmark::State& state) {
    const GFunction g = example_quadratic();
    const Grid grid = make_grid(1.0, static_cast<int>(state.range(0)));
    const DiscreteFunction u = random_function(grid, 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(g, u));
}
BENCHMARK(BM_luxemburg_norm)->Arg(64)->Arg(256)->Arg(1024);

void BM_action_gradient(benchmark::State& state) {
    const Lagrangian L = example5();
    const Grid grid = make_grid(1.0, static_cast<int>(state.range(0)));
    const DiscreteFunction u = random_function(grid, 2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(action_gradient(L, u));
}
BENCHMARK(BM_action_gradient)->Arg(64)->Arg(256)->Arg(1024);

void BM_convex_minorant(benchmark::State& state) {
    const GFunction g = example_quadratic();
    for (auto _ : state) benchmark::DoNotOptimize(convex_minorant(g, 4.0));
}
BENCHMARK(BM_convex_minorant);

void BM_project_to_boundary(benchmark::State& state) {
    const GFunction g = example_quadratic();
    const Grid grid = make_grid(1.0, 64);
    const DiscreteFunction u = random_function(grid, 2, 3);
    for (auto _ : state) benchmark::DoNotOptimize(project_to_boundary(g, u, 0.004));
}
BENCHMARK(BM_project_to_boundary);

}  // namespace

BENCHMARK_MAIN();
