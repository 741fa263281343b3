#include <benchmark/benchmark.h>

#include "qq/enumeration.hpp"
#include "qq/population.hpp"
#include "qq/spectral.hpp"

using namespace qq;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_NextGeneration(benchmark::State& state) {
    const auto prev = orientations_after(static_cast<unsigned>(state.range(1)) - 1);
    for (auto _ : state) benchmark::DoNotOptimize(next_generation(prev, exec_of(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_NextGeneration)->ArgsProduct({{0, 1}, {16, 24}})->Unit(benchmark::kMillisecond);

void BM_NextOrbit(benchmark::State& state) {
    const auto prev = exact_orbit(static_cast<unsigned>(state.range(1)) - 1);
    for (auto _ : state) benchmark::DoNotOptimize(next_orbit(prev, exec_of(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_NextOrbit)->ArgsProduct({{0, 1}, {12, 18}})->Unit(benchmark::kMillisecond);

void BM_SpectrumSweep(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_sweep(static_cast<unsigned>(state.range(1)), exec_of(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_SpectrumSweep)->ArgsProduct({{0, 1}, {20, 40}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
