#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "portfolio/apsp.hpp"

using namespace portfolio;

namespace {

WeightedGraph path_graph() {
    WeightedGraph g;
    g.n = 3;
    g.edges = {{0, 1, 2}, {1, 2, 3}};
    return g;
}

WeightedGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    WeightedGraph g = gen_er(n, p, rng);
    g.id = "t" + std::to_string(seed);
    return g;
}

void check_matrix_invariants(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(d.at(i, i) == 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) CHECK(d.at(i, j) == d.at(j, i));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t w = 0; w < n; ++w) {
                if (d.at(u, v) == DistanceMatrix::kUnreachable ||
                    d.at(v, w) == DistanceMatrix::kUnreachable)
                    continue;
                REQUIRE(d.at(u, w) != DistanceMatrix::kUnreachable);
                CHECK(d.at(u, w) <= d.at(u, v) + d.at(v, w));
            }
}

}  // namespace

TEST_CASE("dijkstra on a weighted path") {
    const DistanceMatrix d = apsp_dijkstra(path_graph());
    CHECK(d.at(0, 2) == 5);
    CHECK(d.at(0, 1) == 2);
    CHECK(d.at(1, 2) == 3);
}

TEST_CASE("disconnected pairs are unreachable") {
    WeightedGraph g;
    g.n = 4;
    g.edges = {{0, 1, 1}, {2, 3, 1}};
    const DistanceMatrix d = apsp_dijkstra(g);
    CHECK(d.at(0, 2) == DistanceMatrix::kUnreachable);
    CHECK(d.at(0, 1) == 1);
    const DistanceMatrix f = apsp_floyd_warshall(g);
    const DistanceMatrix p = apsp_peng(g);
    CHECK(d == f);
    CHECK(d == p);
}

TEST_CASE("floyd-warshall two-hop shortcut") {
    WeightedGraph g;
    g.n = 3;
    g.edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 10}};
    const DistanceMatrix d = apsp_floyd_warshall(g);
    CHECK(d.at(0, 2) == 2);
}

TEST_CASE("single node matrix") {
    WeightedGraph g;
    g.n = 1;
    const DistanceMatrix d = apsp_floyd_warshall(g);
    CHECK(d.size() == 1);
    CHECK(d.at(0, 0) == 0);
}

TEST_CASE("two-node graph equals the edge weight") {
    WeightedGraph g;
    g.n = 2;
    g.edges = {{0, 1, 42}};
    const DistanceMatrix d = apsp_peng(g);
    CHECK(d.at(0, 1) == 42);
    CHECK(d.at(1, 0) == 42);
}

TEST_CASE("tri-algorithm agreement on random graphs") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const double p = 0.05 + 0.08 * static_cast<double>(seed);
        const WeightedGraph g = random_graph(40 + 5 * seed, std::min(p, 0.9), seed);
        const DistanceMatrix a = apsp_dijkstra(g);
        const DistanceMatrix b = apsp_floyd_warshall(g);
        const DistanceMatrix c = apsp_peng(g);
        CHECK(a == b);
        CHECK(b == c);
    }
}

TEST_CASE("distance matrix invariants hold") {
    const WeightedGraph g = random_graph(30, 0.2, 99);
    check_matrix_invariants(apsp_dijkstra(g));
}

TEST_CASE("peng settles star graphs via the center table") {
    WeightedGraph g;
    g.n = 100;
    for (std::uint32_t leaf = 1; leaf < 100; ++leaf) g.edges.push_back({0, leaf, leaf % 7 + 1});
    ApspStats dij, peng;
    const DistanceMatrix a = apsp_dijkstra(g, &dij);
    const DistanceMatrix b = apsp_peng(g, &peng);
    CHECK(a == b);
    CHECK(peng.heap_pops < dij.heap_pops);
}

TEST_CASE("peng pops never exceed dijkstra pops") {
    for (std::uint64_t seed = 50; seed < 70; ++seed) {
        const double p = seed % 2 == 0 ? 0.08 : 0.5;
        const WeightedGraph g = random_graph(60, p, seed);
        ApspStats dij, peng;
        const DistanceMatrix a = apsp_dijkstra(g, &dij);
        const DistanceMatrix b = apsp_peng(g, &peng);
        CHECK(a == b);
        CHECK(peng.heap_pops <= dij.heap_pops);
        CHECK(peng.heap_pops < dij.heap_pops);  // symmetry reuse always saves
    }
}

TEST_CASE("negative weights are rejected by contract") {
    // Weights are unsigned by construction; the contract is vacuous here but
    // the integer domain is pinned: all distances stay exact int64.
    WeightedGraph g;
    g.n = 2;
    g.edges = {{0, 1, 100}};
    const DistanceMatrix d = apsp_dijkstra(g);
    CHECK(d.at(0, 1) == 100);
}

TEST_CASE("portfolio runs agree and record the argmin") {
    const WeightedGraph g = random_graph(40, 0.3, 7);
    const RunRecord rec = run_apsp_portfolio(g, 3);
    for (double t : rec.times_s) CHECK(t > 0.0);
    const auto best_idx = static_cast<std::size_t>(rec.best);
    for (std::size_t a = 0; a < 3; ++a) CHECK(rec.times_s[best_idx] <= rec.times_s[a]);
    CHECK(rec.pops[static_cast<std::size_t>(ApspAlgo::Peng)] <
          rec.pops[static_cast<std::size_t>(ApspAlgo::Dijkstra)]);
}

TEST_CASE("portfolio rejects zero repeats") {
    const WeightedGraph g = random_graph(10, 0.5, 3);
    CHECK_THROWS_AS(run_apsp_portfolio(g, 0), InvalidParamError);
}

TEST_CASE("run record json round trip") {
    const WeightedGraph g = random_graph(25, 0.3, 11);
    RunRecord rec = run_apsp_portfolio(g, 1);
    const RunRecord back = run_record_from_json(run_record_to_json(rec));
    CHECK(back.graph_id == rec.graph_id);
    CHECK(back.best == rec.best);
    CHECK(back.times_s == rec.times_s);
    CHECK(back.pops == rec.pops);
    CHECK(run_record_to_json(back) == run_record_to_json(rec));
}

TEST_CASE("median of repeats is the recorded time") {
    // With repeats=1 the median is the single sample; sanity: times finite.
    const WeightedGraph g = random_graph(15, 0.4, 13);
    const RunRecord rec = run_apsp_portfolio(g, 5);
    for (double t : rec.times_s) {
        CHECK(std::isfinite(t));
        CHECK(t > 0.0);
    }
}
