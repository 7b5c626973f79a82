#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "portfolio/graph.hpp"

namespace portfolio {

// Order is the fixed tie-break order for the fastest-algorithm label.
enum class ApspAlgo { Peng = 0, FloydWarshall, Dijkstra };

constexpr std::array<ApspAlgo, 3> kAllApspAlgos = {ApspAlgo::Peng, ApspAlgo::FloydWarshall,
                                                   ApspAlgo::Dijkstra};

const char* apsp_algo_name(ApspAlgo a);
ApspAlgo apsp_algo_from_name(const std::string& name);

// Exact integer distances; kUnreachable marks disconnected pairs.
class DistanceMatrix {
public:
    static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n)
        : n_(n), d_(n * n, kUnreachable) {
        for (std::size_t i = 0; i < n; ++i) at(i, i) = 0;
    }

    std::size_t size() const { return n_; }
    std::int64_t& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    std::int64_t* row(std::size_t i) { return d_.data() + i * n_; }
    const std::int64_t* row(std::size_t i) const { return d_.data() + i * n_; }
    bool operator==(const DistanceMatrix& o) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> d_;
};

struct ApspStats {
    std::uint64_t heap_pops = 0;
};

DistanceMatrix apsp_dijkstra(const WeightedGraph& g, ApspStats* stats = nullptr);
DistanceMatrix apsp_floyd_warshall(const WeightedGraph& g);
// Table-reuse variant: sources in decreasing degree order, symmetry reuse for
// already-solved sources, and shortest-path tables of solved sources replace
// their edge expansions.
DistanceMatrix apsp_peng(const WeightedGraph& g, ApspStats* stats = nullptr);

struct RunRecord {
    std::string graph_id;
    std::array<double, 3> times_s{};        // indexed by ApspAlgo
    std::array<std::uint64_t, 3> pops{};    // heap pops (0 for Floyd-Warshall)
    ApspAlgo best = ApspAlgo::Peng;

    double best_time() const;
};

// Times each algorithm as the median of `repeats` single-threaded runs after
// one discarded warm-up; all three outputs are checked for exact agreement.
RunRecord run_apsp_portfolio(const WeightedGraph& g, std::size_t repeats);

std::string run_record_to_json(const RunRecord& rec);
RunRecord run_record_from_json(const std::string& text);

}  // namespace portfolio
