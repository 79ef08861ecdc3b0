#include "nonlocal/currents.hpp"
#include "nonlocal/generators.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace nonlocal;

namespace {

WaveField packet(std::size_t n) {
    const Grid1D g(n, 25.6);
    return WaveField::from_function(g, [](double x) { return std::exp(cplx(-x * x / 2, 1.5 * x)); });
}

void levy(benchmark::State& state, Execution exec) {
    const auto f = packet(static_cast<std::size_t>(state.range(0)));
    LevyOptions opt;
    opt.exec = exec;
    const auto nu = LevyMeasure::stable(1.5);
    for (auto _ : state) benchmark::DoNotOptimize(apply_levy_generator(f, nu, opt));
    state.SetComplexityN(state.range(0));
}

void BM_levy_serial(benchmark::State& s) { levy(s, Execution::serial); }
void BM_levy_parallel(benchmark::State& s) { levy(s, Execution::parallel); }

void BM_current(benchmark::State& state) {
    const auto f = packet(static_cast<std::size_t>(state.range(0)));
    const auto fam = PropagatorFamily::salpeter(1.0, 1.0, 1);
    for (auto _ : state) benchmark::DoNotOptimize(quantum_current_field(f, fam));
}

} // namespace

BENCHMARK(BM_levy_serial)->RangeMultiplier(2)->Range(512, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_levy_parallel)->RangeMultiplier(2)->Range(512, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_current)->RangeMultiplier(4)->Range(1024, 16384)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
