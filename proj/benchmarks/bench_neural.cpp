#include "ews/neural.hpp"
#include "ews/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

ews::Matrix random_window(std::size_t steps, std::size_t dim, std::uint64_t seed) {
    ews::Rng rng = ews::Rng(seed);
    ews::Matrix w(steps, dim);
    for (double& v : w.data) v = rng.normal();
    return w;
}

void BM_LstmForward(benchmark::State& state) {
    const auto hidden = static_cast<std::size_t>(state.range(0));
    const ews::LstmNetwork net = ews::init_lstm(13, hidden, 3);
    const ews::Matrix window = random_window(20, 13, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ews::lstm_forward(net, window));
    }
}

void BM_LstmGradients(benchmark::State& state) {
    const auto hidden = static_cast<std::size_t>(state.range(0));
    const ews::LstmNetwork net = ews::init_lstm(13, hidden, 3);
    const ews::Matrix window = random_window(20, 13, 4);
    double loss = 0.0;
    for (auto _ : state) {
        const ews::LstmGradients g = ews::lstm_gradients(net, window, 1, &loss);
        benchmark::DoNotOptimize(g.out_b);
        benchmark::DoNotOptimize(loss);
    }
}

void BM_MlpForward(benchmark::State& state) {
    const auto hidden = static_cast<std::size_t>(state.range(0));
    const ews::MlpNetwork net = ews::init_mlp(20 * 13, hidden, 3);
    const ews::Matrix window = random_window(20, 13, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ews::mlp_forward(net, window));
    }
}

}  // namespace

BENCHMARK(BM_LstmForward)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_LstmGradients)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_MlpForward)->Arg(32);
