#include "ews/rng.hpp"
#include "ews/threshold.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<double> bimodal(std::size_t n, std::uint64_t seed) {
    ews::Rng rng = ews::Rng(seed);
    std::vector<double> v(n);
    for (double& x : v) {
        const double center = rng.uniform01() < 0.5 ? 0.15 : 0.85;
        x = center + 0.05 * (rng.uniform01() - 0.5);
    }
    return v;
}

void BM_TwoPeakCutoff(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> values = bimodal(n, 11);
    for (auto _ : state) {
        const ews::TwoPeakResult r = ews::two_peak_cutoff(values, 50, 3);
        benchmark::DoNotOptimize(r.cutoff);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_TwoPeakCutoff)->Arg(500)->Arg(5000);
