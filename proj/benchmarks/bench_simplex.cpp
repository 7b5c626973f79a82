#include <benchmark/benchmark.h>

#include "portfolio/lp_gen.hpp"
#include "portfolio/simplex.hpp"

namespace {

using namespace portfolio;

LpInstance make_lp(std::size_t m, std::size_t n, std::uint64_t seed) {
    LpGenConfig cfg;
    cfg.m_min = cfg.m_max = m;
    cfg.n_min = cfg.n_max = n;
    cfg.seed = seed;
    return to_standard_form(generate_lp(cfg, 0));
}

void BM_SimplexSolve(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto rule = static_cast<PivotRuleKind>(state.range(1));
    const LpInstance lp = make_lp(m, m / 2, 7);
    const std::size_t limit = 50 * (lp.num_constraints() + lp.num_variables());
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(lp, PivotRule{rule}, limit));
    }
}

void simplex_args(benchmark::internal::Benchmark* b) {
    for (int m : {40, 80, 120})
        for (int rule = 0; rule < 5; ++rule) b->Args({m, rule});
}

BENCHMARK(BM_SimplexSolve)->Apply(simplex_args)->Unit(benchmark::kMillisecond);

void BM_Portfolio(benchmark::State& state) {
    LpGenConfig cfg;
    cfg.m_min = cfg.m_max = static_cast<std::size_t>(state.range(0));
    cfg.n_min = cfg.n_max = cfg.m_min / 2;
    cfg.seed = 11;
    const LpInstance lp = generate_lp(cfg, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_portfolio(lp));
    }
}

BENCHMARK(BM_Portfolio)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace
