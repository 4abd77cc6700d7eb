#include "ews/swarch.hpp"

#include <benchmark/benchmark.h>

namespace {

const ews::SwarchParams kParams{0.0, 0.05, 0.5, 0.3, 4.0, 0.98, 0.95};

void BM_HamiltonFilter(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ews::SimulatedPath path = ews::simulate_swarch(kParams, n, 7);
    for (auto _ : state) {
        const ews::FilterOutput out = ews::hamilton_filter(kParams, path.returns.values);
        benchmark::DoNotOptimize(out.log_likelihood);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}

void BM_Simulate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const ews::SimulatedPath path = ews::simulate_swarch(kParams, n, ++seed);
        benchmark::DoNotOptimize(path.returns.values.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_HamiltonFilter)->Arg(500)->Arg(2000)->Arg(5000);
BENCHMARK(BM_Simulate)->Arg(2000);
