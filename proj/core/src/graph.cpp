#include "portfolio/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace portfolio {

const char* graph_family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::ER: return "er";
        case GraphFamily::BA: return "ba";
        case GraphFamily::WS: return "ws";
        case GraphFamily::Geometric: return "geometric";
    }
    return "?";
}

std::vector<std::size_t> WeightedGraph::degrees() const {
    std::vector<std::size_t> deg(n, 0);
    for (const Edge& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

namespace {

std::uint32_t random_weight(Rng& rng) {
    return static_cast<std::uint32_t>(rng.uniform_int(1, 100));
}

}  // namespace

WeightedGraph gen_er(std::size_t n, double p, Rng& rng) {
    WeightedGraph g;
    g.n = n;
    for (std::uint32_t u = 0; u + 1 < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.edges.push_back({u, v, random_weight(rng)});
    return g;
}

WeightedGraph gen_ba(std::size_t n, std::size_t m_attach, Rng& rng) {
    if (m_attach < 1 || m_attach >= n)
        throw InvalidParamError("gen_ba: need 1 <= m < n");
    WeightedGraph g;
    g.n = n;
    // Seed core: complete graph on the first m_attach nodes.
    std::vector<std::size_t> deg(n, 0);
    for (std::uint32_t u = 0; u + 1 < m_attach; ++u)
        for (std::uint32_t v = u + 1; v < m_attach; ++v) {
            g.edges.push_back({u, v, random_weight(rng)});
            ++deg[u];
            ++deg[v];
        }
    for (std::uint32_t node = static_cast<std::uint32_t>(m_attach); node < n; ++node) {
        // m_attach distinct targets, probability proportional to degree.
        std::set<std::uint32_t> targets;
        double total = 0.0;
        for (std::uint32_t v = 0; v < node; ++v) total += static_cast<double>(deg[v]);
        while (targets.size() < m_attach) {
            std::uint32_t pick = 0;
            if (total <= 0.0) {
                pick = static_cast<std::uint32_t>(rng.uniform_int(0, node - 1));
            } else {
                double r = rng.uniform() * total;
                for (std::uint32_t v = 0; v < node; ++v) {
                    r -= static_cast<double>(deg[v]);
                    if (r <= 0.0) {
                        pick = v;
                        break;
                    }
                }
            }
            targets.insert(pick);
        }
        for (std::uint32_t v : targets) {
            g.edges.push_back({v, node, random_weight(rng)});
            ++deg[v];
            ++deg[node];
        }
    }
    return g;
}

WeightedGraph gen_ws(std::size_t n, double k_mean, double beta, Rng& rng) {
    if (beta < 0.0 || beta > 1.0) throw InvalidParamError("gen_ws: beta outside [0,1]");
    if (n < 4) throw InvalidParamError("gen_ws: need at least 4 nodes");
    if (k_mean > static_cast<double>(n - 1)) throw InvalidParamError("gen_ws: K above n-1");
    // Ring-lattice neighbors come in pairs; round K to the nearest even value,
    // capping at the largest even degree a simple ring lattice supports.
    auto k = static_cast<std::size_t>(std::llround(k_mean / 2.0) * 2);
    k = std::max<std::size_t>(k, 2);
    k = std::min(k, (n - 1) / 2 * 2);

    WeightedGraph g;
    g.n = n;
    std::set<std::pair<std::uint32_t, std::uint32_t>> present;
    auto key = [](std::uint32_t a, std::uint32_t b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::size_t d = 1; d <= k / 2; ++d) {
            const auto v = static_cast<std::uint32_t>((u + d) % n);
            present.insert(key(u, v));
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> lattice(present.begin(), present.end());
    for (const auto& [u, v] : lattice) {
        if (rng.bernoulli(beta)) {
            // Rewire endpoint v to a uniform node, avoiding loops and duplicates.
            std::uint32_t w;
            std::size_t tries = 0;
            do {
                w = static_cast<std::uint32_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
                ++tries;
            } while ((w == u || present.count(key(u, w))) && tries < 4 * n);
            if (w != u && !present.count(key(u, w))) {
                present.erase(key(u, v));
                present.insert(key(u, w));
            }
        }
    }
    for (const auto& [u, v] : present) g.edges.push_back({u, v, random_weight(rng)});
    std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return g;
}

WeightedGraph gen_geometric(std::size_t n, double eps, Rng& rng) {
    WeightedGraph g;
    g.n = n;
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform(), rng.uniform()};
    const double eps2 = eps * eps;
    for (std::uint32_t u = 0; u + 1 < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) {
            const double dx = pts[u][0] - pts[v][0];
            const double dy = pts[u][1] - pts[v][1];
            const double dz = pts[u][2] - pts[v][2];
            if (dx * dx + dy * dy + dz * dz <= eps2)
                g.edges.push_back({u, v, random_weight(rng)});
        }
    return g;
}

double density(const WeightedGraph& g) {
    if (g.n < 2) throw TooFewNodesError("density: need at least 2 nodes");
    const double pairs = 0.5 * static_cast<double>(g.n) * static_cast<double>(g.n - 1);
    return static_cast<double>(g.edges.size()) / pairs;
}

std::string graph_to_json(const WeightedGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges) edges.push_back({e.u, e.v, e.w});
    nlohmann::json j;
    j["id"] = g.id;
    j["n"] = g.n;
    j["edges"] = edges;
    j["gen_meta"] = {{"family", graph_family_name(g.gen_meta.family)},
                     {"seed", g.gen_meta.seed},
                     {"index", g.gen_meta.index},
                     {"param_a", g.gen_meta.param_a},
                     {"param_b", g.gen_meta.param_b}};
    return j.dump();
}

WeightedGraph graph_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    WeightedGraph g;
    g.id = j.at("id").get<std::string>();
    g.n = j.at("n").get<std::size_t>();
    for (const auto& e : j.at("edges"))
        g.edges.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>(),
                           e.at(2).get<std::uint32_t>()});
    if (j.contains("gen_meta") && !j.at("gen_meta").is_null()) {
        const auto& m = j.at("gen_meta");
        const std::string fam = m.at("family").get<std::string>();
        for (GraphFamily f : {GraphFamily::ER, GraphFamily::BA, GraphFamily::WS, GraphFamily::Geometric})
            if (fam == graph_family_name(f)) g.gen_meta.family = f;
        g.gen_meta.seed = m.at("seed").get<std::uint64_t>();
        g.gen_meta.index = m.at("index").get<std::uint64_t>();
        g.gen_meta.param_a = m.at("param_a").get<double>();
        g.gen_meta.param_b = m.at("param_b").get<double>();
    }
    return g;
}

WeightedGraph graph_from_edge_list(const std::string& text) {
    WeightedGraph g;
    std::istringstream in(text);
    std::string line;
    std::size_t max_node = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::uint32_t u, v;
        std::uint32_t w = 1;
        if (!(ls >> u >> v)) throw IoError("edge list: bad line: " + line);
        ls >> w;
        if (u == v) continue;
        g.edges.push_back({std::min(u, v), std::max(u, v), w});
        max_node = std::max<std::size_t>(max_node, std::max(u, v));
    }
    g.n = g.edges.empty() ? 0 : max_node + 1;
    // Deduplicate (external lists often carry both directions).
    std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                              [](const Edge& a, const Edge& b) {
                                  return a.u == b.u && a.v == b.v;
                              }),
                  g.edges.end());
    return g;
}

}  // namespace portfolio
