#include <benchmark/benchmark.h>

#include "smash/annihilation.hpp"
#include "smash/pfsa.hpp"
#include "smash/stream_ops.hpp"

using namespace smash;

namespace {

SymbolStream fwn_of(int k, std::size_t n) {
    SeededRng rng(12345);
    return fwn_stream(Alphabet(k), n, rng);
}

void BM_FwnStream(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    for (auto _ : state) {
        SeededRng rng(1);
        benchmark::DoNotOptimize(fwn_stream(Alphabet(2), n, rng));
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(BM_FwnStream)->Arg(100000)->Arg(1000000);

void BM_PfsaSample(benchmark::State& state) {
    Pfsa g(Alphabet(2), {{0, 1}, {0, 1}}, {{0.3, 0.7}, {0.1, 0.9}});
    const std::size_t n = std::size_t(state.range(0));
    for (auto _ : state) {
        SeededRng rng(2);
        benchmark::DoNotOptimize(g.sample(n, rng));
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(BM_PfsaSample)->Arg(100000)->Arg(1000000);

void BM_CountNgrams(benchmark::State& state) {
    SymbolStream s = fwn_of(2, std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(count_ngrams(s, 8));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(BM_CountNgrams)->Arg(100000)->Arg(1000000);

void BM_ZetaHat(benchmark::State& state) {
    SymbolStream s = fwn_of(2, 1000000);
    const int depth = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zeta_hat(s, depth));
}
BENCHMARK(BM_ZetaHat)->Arg(4)->Arg(8);

void BM_SumStreams(benchmark::State& state) {
    SeededRng r1(3), r2(4);
    const std::size_t n = std::size_t(state.range(0));
    SymbolStream s1 = fwn_stream(Alphabet(2), n, r1);
    SymbolStream s2 = fwn_stream(Alphabet(2), n, r2);
    for (auto _ : state) benchmark::DoNotOptimize(sum_streams(s1, s2));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(BM_SumStreams)->Arg(1000000);

void BM_Smash(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    SymbolStream s1 = fwn_of(2, n), s2 = fwn_of(2, n);
    SmashConfig cfg;
    cfg.seed = 5;
    for (auto _ : state) benchmark::DoNotOptimize(smash::smash(s1, s2, cfg));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(BM_Smash)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_ThetaDistance(benchmark::State& state) {
    SeededRng rng(6);
    Pfsa g1(Alphabet(2), {{0, 1}, {0, 1}}, {{0.3, 0.7}, {0.1, 0.9}});
    Pfsa g2(Alphabet(2), {{1, 0}, {1, 1}}, {{0.6, 0.4}, {0.2, 0.8}});
    const int depth = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(theta_distance(g1, g2, depth));
}
BENCHMARK(BM_ThetaDistance)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
