#include <benchmark/benchmark.h>

#include "qiscale/cayley.hpp"
#include "qiscale/folner.hpp"
#include "qiscale/realization.hpp"
#include "qiscale/tree_partition.hpp"

using namespace qiscale;

static void BM_EnumerateZ2(benchmark::State& state) {
    auto radius = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_window(GroupSpec::free_abelian(2), radius));
}
BENCHMARK(BM_EnumerateZ2)->Arg(20)->Arg(60)->Arg(120);

static void BM_EnumerateLamplighter(benchmark::State& state) {
    auto radius = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_window(GroupSpec::lamplighter(2), radius));
}
BENCHMARK(BM_EnumerateLamplighter)->Arg(6)->Arg(9);

static void BM_BoundaryZ2(benchmark::State& state) {
    auto win = enumerate_window(GroupSpec::free_abelian(2), 60);
    auto A = ball(win, win->center(), 40);
    for (auto _ : state) benchmark::DoNotOptimize(boundary(A, 2));
}
BENCHMARK(BM_BoundaryZ2);

static void BM_FolnerZ2(benchmark::State& state) {
    auto spec = GroupSpec::free_abelian(2);
    auto win = enumerate_window(spec, 60);
    for (auto _ : state) benchmark::DoNotOptimize(standard_folner(spec, win, 8, 3));
}
BENCHMARK(BM_FolnerZ2);

static void BM_RealizeIdentity(benchmark::State& state) {
    auto win = enumerate_window(GroupSpec::free_abelian(2),
                                static_cast<int>(state.range(0)));
    auto f = identity_map(win);
    for (auto _ : state) benchmark::DoNotOptimize(realize_bijection(f, 2));
}
BENCHMARK(BM_RealizeIdentity)->Arg(10)->Arg(20);

static void BM_PartitionZ2(benchmark::State& state) {
    auto win = enumerate_window(GroupSpec::free_abelian(2), 20);
    for (auto _ : state) benchmark::DoNotOptimize(partition_window(win, 3, 11));
}
BENCHMARK(BM_PartitionZ2);

BENCHMARK_MAIN();
