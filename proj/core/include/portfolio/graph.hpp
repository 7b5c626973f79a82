#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "portfolio/errors.hpp"
#include "portfolio/rng.hpp"

namespace portfolio {

enum class GraphFamily { ER = 0, BA, WS, Geometric };

const char* graph_family_name(GraphFamily f);

struct GraphGenMeta {
    GraphFamily family = GraphFamily::ER;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    // Family parameter actually drawn: p (ER), m (BA), K and beta (WS), eps (geometric).
    double param_a = 0.0;
    double param_b = 0.0;
};

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    std::uint32_t w = 1;  // integer weight in [1, 100]
};

// Simple undirected graph with integer edge weights.
struct WeightedGraph {
    std::size_t n = 0;
    std::vector<Edge> edges;
    std::string id;
    GraphGenMeta gen_meta;

    std::vector<std::size_t> degrees() const;
};

WeightedGraph gen_er(std::size_t n, double p, Rng& rng);
WeightedGraph gen_ba(std::size_t n, std::size_t m_attach, Rng& rng);   // throws InvalidParamError
WeightedGraph gen_ws(std::size_t n, double k_mean, double beta, Rng& rng);  // throws InvalidParamError
WeightedGraph gen_geometric(std::size_t n, double eps, Rng& rng);

double density(const WeightedGraph& g);  // throws TooFewNodesError when n < 2

// JSON form {id, n, edges, gen_meta}; plain form is "u v w" per line.
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& text);
WeightedGraph graph_from_edge_list(const std::string& text);

}  // namespace portfolio
