#include <benchmark/benchmark.h>

#include "portfolio/apsp.hpp"

namespace {

using namespace portfolio;

WeightedGraph make_er(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    return gen_er(n, p, rng);
}

void BM_ApspDijkstra(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double density = static_cast<double>(state.range(1)) / 100.0;
    const WeightedGraph g = make_er(n, density, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apsp_dijkstra(g));
    }
}

void BM_ApspFloydWarshall(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double density = static_cast<double>(state.range(1)) / 100.0;
    const WeightedGraph g = make_er(n, density, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apsp_floyd_warshall(g));
    }
}

void BM_ApspPeng(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double density = static_cast<double>(state.range(1)) / 100.0;
    const WeightedGraph g = make_er(n, density, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apsp_peng(g));
    }
}

// The density grid mirrors the regimes where the portfolio label flips.
void apsp_args(benchmark::internal::Benchmark* b) {
    for (int n : {100, 200, 400})
        for (int density : {5, 20, 50, 90}) b->Args({n, density});
}

BENCHMARK(BM_ApspDijkstra)->Apply(apsp_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApspFloydWarshall)->Apply(apsp_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApspPeng)->Apply(apsp_args)->Unit(benchmark::kMillisecond);

}  // namespace
