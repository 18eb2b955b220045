#include <benchmark/benchmark.h>

#include "spinlab/dynamics.hpp"
#include "spinlab/graphgen.hpp"
#include "spinlab/influence.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/transition.hpp"
#include "spinlab/tree.hpp"

using namespace spinlab;

static void BM_Enumerate(benchmark::State& state) {
    const auto sys = TwoSpinSystem::hardcore(cycle_graph(static_cast<int>(state.range(0))), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_distribution(sys));
}
BENCHMARK(BM_Enumerate)->Arg(8)->Arg(12)->Arg(16);

static void BM_GlauberMatrix(benchmark::State& state) {
    const auto table = enumerate_distribution(
        TwoSpinSystem::hardcore(cycle_graph(static_cast<int>(state.range(0))), 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(glauber_matrix(table));
}
BENCHMARK(BM_GlauberMatrix)->Arg(8)->Arg(10)->Arg(12);

static void BM_FieldMatrix(benchmark::State& state) {
    const auto table = enumerate_distribution(
        TwoSpinSystem::hardcore(cycle_graph(static_cast<int>(state.range(0))), 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(field_matrix(table, 0.5));
}
BENCHMARK(BM_FieldMatrix)->Arg(6)->Arg(8)->Arg(10);

static void BM_SpectralReport(benchmark::State& state) {
    const auto table = enumerate_distribution(
        TwoSpinSystem::hardcore(cycle_graph(static_cast<int>(state.range(0))), 1.0));
    const auto tm = glauber_matrix(table);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_report(tm));
}
BENCHMARK(BM_SpectralReport)->Arg(8)->Arg(10)->Arg(12);

static void BM_GlauberSteps(benchmark::State& state) {
    const auto sys = TwoSpinSystem::hardcore(cycle_graph(16), 1.0);
    ChainSampler sampler(sys, DynamicsSpec{DynamicsSpec::Kind::Glauber});
    ChainState st{Configuration(16, -1), 0};
    Rng rng(1);
    for (auto _ : state) sampler.step(st, rng);
}
BENCHMARK(BM_GlauberSteps);

static void BM_FieldSteps(benchmark::State& state) {
    const auto sys = TwoSpinSystem::hardcore(cycle_graph(12), 1.0);
    DynamicsSpec spec{DynamicsSpec::Kind::Field};
    spec.theta = 0.2;
    ChainSampler sampler(sys, spec);
    ChainState st{Configuration(12, -1), 0};
    Rng rng(1);
    for (auto _ : state) sampler.step(st, rng);
}
BENCHMARK(BM_FieldSteps);

static void BM_SawTree(benchmark::State& state) {
    const auto g = complete_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(saw_tree(g, 0));
}
BENCHMARK(BM_SawTree)->Arg(5)->Arg(6)->Arg(7);

static void BM_InfluenceRho(benchmark::State& state) {
    const auto table = enumerate_distribution(
        TwoSpinSystem::hardcore(cycle_graph(static_cast<int>(state.range(0))), 1.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral_radius(influence_matrix(table, {})));
}
BENCHMARK(BM_InfluenceRho)->Arg(6)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
