#include <benchmark/benchmark.h>

#include "pulseforge/sweep.hpp"

using namespace pulseforge;

namespace {

SweepConfig config(Execution execution, Algorithm algorithm, GeneratorKind gen, std::size_t size)
{
    SweepConfig c;
    c.generator = gen;
    c.sizes = {size};
    c.algorithm = algorithm;
    c.seeds = 64;
    c.execution = execution;
    return c;
}

void BM_SweepGeneral(benchmark::State& state)
{
    const auto execution = state.range(0) ? Execution::Parallel : Execution::Serial;
    const auto c = config(execution, Algorithm::GeneralTree, GeneratorKind::RandomAsymmetric,
                          static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        auto report = run_sweep(c);
        benchmark::DoNotOptimize(report.rows.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.seeds));
}

void BM_SweepEven(benchmark::State& state)
{
    const auto execution = state.range(0) ? Execution::Parallel : Execution::Serial;
    const auto c = config(execution, Algorithm::EvenDiameter, GeneratorKind::CompleteBinary,
                          static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        auto report = run_sweep(c);
        benchmark::DoNotOptimize(report.rows.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.seeds));
}

}  // namespace

// Arg 0: 0 = serial reference, 1 = OpenMP.  Arg 1: tree size (n or radius).
BENCHMARK(BM_SweepGeneral)->ArgsProduct({{0, 1}, {16, 64}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepEven)->ArgsProduct({{0, 1}, {4, 6}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
