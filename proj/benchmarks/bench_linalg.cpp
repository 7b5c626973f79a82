#include <benchmark/benchmark.h>

#include <random>

#include "portfolio/features.hpp"
#include "portfolio/linalg.hpp"

namespace {

using namespace portfolio;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = dist(gen);
    return m;
}

void BM_TruncatedSvd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(truncated_svd(a, 20));
    }
}

BENCHMARK(BM_TruncatedSvd)->Arg(60)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);

void BM_SvdCompress(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n / 2, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(svd_compress(a, 20));
    }
}

BENCHMARK(BM_SvdCompress)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_LuSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix a = random_matrix(n, n, 9);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
    const Vector rhs(n, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_linear(a, rhs));
    }
}

BENCHMARK(BM_LuSolve)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace
