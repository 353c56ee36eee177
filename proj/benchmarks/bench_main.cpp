#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "scalerd/system_model.hpp"
#include "scalerd/video_stats.hpp"

using namespace scalerd;

namespace {

std::vector<std::uint8_t> noise_frame(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(0, 255);
    std::vector<std::uint8_t> f(static_cast<std::size_t>(w) * h);
    for (auto& p : f) p = static_cast<std::uint8_t>(d(rng));
    return f;
}

VideoStats typical() {
    VideoStats s;
    s.sigma_v2 = 2300;
    s.rho_vx = s.rho_vy = 0.95;
    s.qvar = 250;
    s.width = s.height = 720;
    s.frame_rate = 60;
    return s;
}

void BM_MatchBlocks(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const int range = static_cast<int>(state.range(1));
    const auto a = noise_frame(size, size, 1);
    const auto b = noise_frame(size, size, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(match_blocks(a, b, size, size, 16, range));
    }
    state.SetItemsProcessed(state.iterations() * (size / 16) * (size / 16));
}
BENCHMARK(BM_MatchBlocks)->Args({256, 8})->Args({256, 16})->Args({720, 16})->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
    const auto s = typical();
    const int dt = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict(s, {2, 2, dt}, BitBudget{1e6}, {}));
    }
}
BENCHMARK(BM_Predict)->Arg(1)->Arg(3);

void BM_Optimize(benchmark::State& state) {
    const auto s = typical();
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize(s, BitBudget{1e6}, {}, {}));
    }
}
BENCHMARK(BM_Optimize);

void BM_Sweep(benchmark::State& state) {
    const auto s = typical();
    std::vector<double> rates;
    for (int i = 0; i < 20; ++i) rates.push_back(1e5 * std::pow(5e3, i / 19.0));
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(s, rates, {}, {}, threads));
    }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
