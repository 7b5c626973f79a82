#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "portfolio/graph.hpp"

using namespace portfolio;

namespace {

bool is_simple(const WeightedGraph& g) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const Edge& e : g.edges) {
        if (e.u == e.v) return false;
        if (e.u >= g.n || e.v >= g.n) return false;
        const auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) return false;
    }
    return true;
}

bool weights_in_range(const WeightedGraph& g) {
    return std::all_of(g.edges.begin(), g.edges.end(),
                       [](const Edge& e) { return e.w >= 1 && e.w <= 100; });
}

std::size_t component_count(const WeightedGraph& g) {
    std::vector<std::vector<std::uint32_t>> adj(g.n);
    for (const Edge& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(g.n, false);
    std::size_t comps = 0;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        ++comps;
        std::vector<std::uint32_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
    }
    return comps;
}

}  // namespace

TEST_CASE("gen_er complete and single-edge cases") {
    Rng rng(1);
    const WeightedGraph tri = gen_er(3, 1.0, rng);
    CHECK(tri.edges.size() == 3);
    Rng rng2(2);
    const WeightedGraph pair = gen_er(2, 1.0, rng2);
    REQUIRE(pair.edges.size() == 1);
    CHECK(pair.edges[0].w >= 1);
    CHECK(pair.edges[0].w <= 100);
}

TEST_CASE("gen_er edge count concentrates") {
    Rng rng(7);
    const WeightedGraph g = gen_er(1000, 0.3, rng);
    const double pairs = 1000.0 * 999.0 / 2.0;
    const double mean = 0.3 * pairs;
    const double sigma = std::sqrt(pairs * 0.3 * 0.7);
    CHECK(std::abs(static_cast<double>(g.edges.size()) - mean) <= 3.0 * sigma);
    CHECK(is_simple(g));
    CHECK(weights_in_range(g));
}

TEST_CASE("gen_ba small core and counting") {
    Rng rng(3);
    const WeightedGraph g = gen_ba(6, 5, rng);
    CHECK(is_simple(g));
    // Complete seed core on 5 nodes plus one attachment round of 5 edges.
    CHECK(g.edges.size() == 10 + 5);
    const auto deg = g.degrees();
    CHECK(deg[5] == 5);
}

TEST_CASE("gen_ba edge count formula") {
    Rng rng(4);
    const std::size_t n = 40, m = 6;
    const WeightedGraph g = gen_ba(n, m, rng);
    CHECK(g.edges.size() == m * (m - 1) / 2 + (n - m) * m);
    CHECK(is_simple(g));
    CHECK(weights_in_range(g));
}

TEST_CASE("gen_ba degree distribution is heavy-tailed") {
    std::size_t heavier = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(900 + seed);
        const WeightedGraph g = gen_ba(500, 5, rng);
        auto deg = g.degrees();
        std::sort(deg.begin(), deg.end());
        const double median = static_cast<double>(deg[deg.size() / 2]);
        const double max = static_cast<double>(deg.back());
        if (max > median) ++heavier;
    }
    CHECK(heavier == 20);
}

TEST_CASE("gen_ba rejects invalid m") {
    Rng rng(5);
    CHECK_THROWS_AS(gen_ba(5, 5, rng), InvalidParamError);
}

TEST_CASE("gen_ws beta=0 keeps the ring lattice") {
    Rng rng(6);
    const WeightedGraph g = gen_ws(6, 2.0, 0.0, rng);
    CHECK(g.edges.size() == 6);  // 6-cycle
    for (std::size_t d : g.degrees()) CHECK(d == 2);
}

TEST_CASE("gen_ws regular degrees without rewiring") {
    Rng rng(7);
    const WeightedGraph g = gen_ws(20, 6.0, 0.0, rng);
    for (std::size_t d : g.degrees()) CHECK(d == 6);
}

TEST_CASE("gen_ws rewiring preserves the edge count") {
    Rng rng(8);
    const WeightedGraph g = gen_ws(200, 10.0, 1.0, rng);
    CHECK(g.edges.size() == 200 * 10 / 2);
    CHECK(is_simple(g));
    CHECK(weights_in_range(g));
}

TEST_CASE("gen_ws rejects bad parameters") {
    Rng rng(9);
    CHECK_THROWS_AS(gen_ws(10, 4.0, 1.5, rng), InvalidParamError);
    CHECK_THROWS_AS(gen_ws(10, 20.0, 0.5, rng), InvalidParamError);
}

TEST_CASE("gen_geometric matches a brute-force distance oracle") {
    // Re-run the generator's point stream to rebuild the coordinates, then
    // compare adjacency against direct pairwise distances.
    const std::size_t n = 100;
    const double eps = 0.5;
    Rng rng(10);
    const WeightedGraph g = gen_geometric(n, eps, rng);
    Rng replay(10);
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts) p = {replay.uniform(), replay.uniform(), replay.uniform()};
    std::set<std::pair<std::uint32_t, std::uint32_t>> expected;
    for (std::uint32_t u = 0; u + 1 < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) {
            double d2 = 0.0;
            for (int c = 0; c < 3; ++c) d2 += (pts[u][c] - pts[v][c]) * (pts[u][c] - pts[v][c]);
            if (d2 <= eps * eps) expected.insert({u, v});
        }
    std::set<std::pair<std::uint32_t, std::uint32_t>> got;
    for (const Edge& e : g.edges) got.insert({e.u, e.v});
    CHECK(got == expected);
}

TEST_CASE("gen_geometric extremes") {
    Rng rng(11);
    const WeightedGraph complete = gen_geometric(12, std::sqrt(3.0), rng);
    CHECK(complete.edges.size() == 12 * 11 / 2);
    Rng rng2(12);
    const WeightedGraph sparse = gen_geometric(20, 1e-6, rng2);
    CHECK(sparse.edges.size() <= 1);
}

TEST_CASE("density basics") {
    WeightedGraph k4;
    k4.n = 4;
    for (std::uint32_t u = 0; u < 4; ++u)
        for (std::uint32_t v = u + 1; v < 4; ++v) k4.edges.push_back({u, v, 1});
    CHECK(density(k4) == 1.0);

    WeightedGraph empty;
    empty.n = 10;
    CHECK(density(empty) == 0.0);

    WeightedGraph path;
    path.n = 4;
    path.edges = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}};
    CHECK(density(path) == doctest::Approx(0.5));

    WeightedGraph single;
    single.n = 1;
    CHECK_THROWS_AS(density(single), TooFewNodesError);
}

TEST_CASE("generators are deterministic under a fixed seed") {
    for (int variant = 0; variant < 4; ++variant) {
        Rng a(1000 + variant), b(1000 + variant);
        WeightedGraph ga, gb;
        switch (variant) {
            case 0: ga = gen_er(50, 0.2, a); gb = gen_er(50, 0.2, b); break;
            case 1: ga = gen_ba(50, 5, a); gb = gen_ba(50, 5, b); break;
            case 2: ga = gen_ws(50, 6.0, 0.3, a); gb = gen_ws(50, 6.0, 0.3, b); break;
            default: ga = gen_geometric(50, 0.4, a); gb = gen_geometric(50, 0.4, b); break;
        }
        CHECK(graph_to_json(ga) == graph_to_json(gb));
    }
}

TEST_CASE("er connectivity near the threshold") {
    const std::size_t n = 200;
    const double p = 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n);
    std::size_t connected = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(5000 + s);
        if (component_count(gen_er(n, p, rng)) == 1) ++connected;
    }
    CHECK(connected >= 90);
}

TEST_CASE("graph json round trip") {
    Rng rng(77);
    WeightedGraph g = gen_ba(30, 5, rng);
    g.id = "g-test";
    g.gen_meta.family = GraphFamily::BA;
    g.gen_meta.param_a = 5;
    const WeightedGraph back = graph_from_json(graph_to_json(g));
    CHECK(back.n == g.n);
    CHECK(back.id == g.id);
    REQUIRE(back.edges.size() == g.edges.size());
    CHECK(graph_to_json(back) == graph_to_json(g));
}

TEST_CASE("plain edge list parsing") {
    const std::string text = "# comment\n0 1 5\n1 2 7\n2 0 9\n1 0 5\n";
    const WeightedGraph g = graph_from_edge_list(text);
    CHECK(g.n == 3);
    CHECK(g.edges.size() == 3);  // duplicate 1-0 collapsed
    CHECK(is_simple(g));
}
