#include <benchmark/benchmark.h>

#include "qwalk/dynamics.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/metrology.hpp"
#include "qwalk/optimize.hpp"
#include "qwalk/spectral.hpp"

namespace {

using namespace qwalk;

GraphSpec cycle(benchmark::State& state) { return GraphSpec::cycle(static_cast<std::size_t>(state.range(0))); }

void BM_SpectrumClosedForm(benchmark::State& state) {
    const auto h = hamiltonian(cycle(state), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(closed_form_spectrum(h));
}

void BM_SpectrumNumerical(benchmark::State& state) {
    const auto h = hamiltonian(cycle(state), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(numerical_spectrum(h));
}

void BM_Evolve(benchmark::State& state) {
    const auto spec = cycle(state);
    const auto prep = max_qfi(spec, 1.0, 0.7).preparation;
    for (auto _ : state) benchmark::DoNotOptimize(evolve(spec, 1.0, prep, 0.7));
}

void BM_EvolveReusedSpectrum(benchmark::State& state) {
    const auto spec = cycle(state);
    const auto s = closed_form_spectrum(hamiltonian(spec, 1.0));
    const auto prep = max_qfi(spec, 1.0, 0.7).preparation;
    for (auto _ : state) benchmark::DoNotOptimize(evolve(s, 1.0, prep, 0.7));
}

void BM_FisherCompletePovm(benchmark::State& state) {
    const auto spec = cycle(state);
    const auto ev = evolve(spec, 1.0, max_qfi(spec, 1.0, 0.7).preparation, 0.7);
    const auto povm = PositionPovm::complete(spec.node_count());
    for (auto _ : state) benchmark::DoNotOptimize(fi_povm(ev, povm));
}

void BM_QfiPure(benchmark::State& state) {
    const auto spec = cycle(state);
    const auto ev = evolve(spec, 1.0, max_qfi(spec, 1.0, 0.7).preparation, 0.7);
    for (auto _ : state) benchmark::DoNotOptimize(qfi_pure(ev));
}

}  // namespace

BENCHMARK(BM_SpectrumClosedForm)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_SpectrumNumerical)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_Evolve)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_EvolveReusedSpectrum)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_FisherCompletePovm)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_QfiPure)->RangeMultiplier(4)->Range(16, 4096);

BENCHMARK_MAIN();
