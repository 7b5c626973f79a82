#include "portfolio/apsp.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <json.hpp>

namespace portfolio {

const char* apsp_algo_name(ApspAlgo a) {
    switch (a) {
        case ApspAlgo::Peng: return "peng";
        case ApspAlgo::FloydWarshall: return "floyd_warshall";
        case ApspAlgo::Dijkstra: return "dijkstra";
    }
    return "?";
}

ApspAlgo apsp_algo_from_name(const std::string& name) {
    for (ApspAlgo a : kAllApspAlgos)
        if (name == apsp_algo_name(a)) return a;
    throw InvalidParamError("unknown apsp algorithm: " + name);
}

namespace {

constexpr std::int64_t kInf = DistanceMatrix::kUnreachable;

struct Adjacency {
    std::vector<std::size_t> offsets;  // n+1
    std::vector<std::uint32_t> to;
    std::vector<std::uint32_t> weight;

    explicit Adjacency(const WeightedGraph& g) {
        std::vector<std::size_t> deg(g.n, 0);
        for (const Edge& e : g.edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        offsets.assign(g.n + 1, 0);
        for (std::size_t i = 0; i < g.n; ++i) offsets[i + 1] = offsets[i] + deg[i];
        to.resize(offsets.back());
        weight.resize(offsets.back());
        std::vector<std::size_t> cur(offsets.begin(), offsets.end() - 1);
        for (const Edge& e : g.edges) {
            to[cur[e.u]] = e.v;
            weight[cur[e.u]++] = e.w;
            to[cur[e.v]] = e.u;
            weight[cur[e.v]++] = e.w;
        }
    }

    std::size_t degree(std::uint32_t v) const { return offsets[v + 1] - offsets[v]; }
};

// Indexed binary min-heap with decrease-key. Every vertex is popped at most
// once, so the pop counter counts settles the same way for both heap users.
class IndexedHeap {
public:
    explicit IndexedHeap(std::size_t n) : pos_(n, kAbsent), key_(n, kInf) {}

    bool empty() const { return heap_.empty(); }

    void push_or_decrease(std::uint32_t v, std::int64_t key) {
        if (pos_[v] == kAbsent) {
            pos_[v] = heap_.size();
            heap_.push_back(v);
            key_[v] = key;
            sift_up(pos_[v]);
        } else if (key < key_[v]) {
            key_[v] = key;
            sift_up(pos_[v]);
        }
    }

    std::pair<std::uint32_t, std::int64_t> pop() {
        const std::uint32_t v = heap_.front();
        const std::int64_t k = key_[v];
        swap_entries(0, heap_.size() - 1);
        heap_.pop_back();
        pos_[v] = kAbsent;
        if (!heap_.empty()) sift_down(0);
        return {v, k};
    }

private:
    static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

    void swap_entries(std::size_t a, std::size_t b) {
        std::swap(heap_[a], heap_[b]);
        pos_[heap_[a]] = a;
        pos_[heap_[b]] = b;
    }
    void sift_up(std::size_t i) {
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (key_[heap_[parent]] <= key_[heap_[i]]) break;
            swap_entries(i, parent);
            i = parent;
        }
    }
    void sift_down(std::size_t i) {
        while (true) {
            std::size_t best = i;
            const std::size_t l = 2 * i + 1, r = 2 * i + 2;
            if (l < heap_.size() && key_[heap_[l]] < key_[heap_[best]]) best = l;
            if (r < heap_.size() && key_[heap_[r]] < key_[heap_[best]]) best = r;
            if (best == i) break;
            swap_entries(i, best);
            i = best;
        }
    }

    std::vector<std::uint32_t> heap_;
    std::vector<std::size_t> pos_;
    std::vector<std::int64_t> key_;
};

void dijkstra_from(const Adjacency& adj, std::uint32_t source, std::int64_t* dist,
                   std::size_t n, std::uint64_t* pops) {
    std::fill(dist, dist + n, kInf);
    std::vector<bool> settled(n, false);
    IndexedHeap heap(n);
    dist[source] = 0;
    heap.push_or_decrease(source, 0);
    while (!heap.empty()) {
        const auto [u, du] = heap.pop();
        if (pops) ++(*pops);
        settled[u] = true;
        for (std::size_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e) {
            const std::uint32_t v = adj.to[e];
            if (settled[v]) continue;
            const std::int64_t cand = du + adj.weight[e];
            if (cand < dist[v]) {
                dist[v] = cand;
                heap.push_or_decrease(v, cand);
            }
        }
    }
}

}  // namespace

DistanceMatrix apsp_dijkstra(const WeightedGraph& g, ApspStats* stats) {
    const Adjacency adj(g);
    DistanceMatrix d(g.n);
    std::uint64_t pops = 0;
    for (std::uint32_t s = 0; s < g.n; ++s)
        dijkstra_from(adj, s, d.row(s), g.n, &pops);
    if (stats) stats->heap_pops = pops;
    return d;
}

DistanceMatrix apsp_floyd_warshall(const WeightedGraph& g) {
    const std::size_t n = g.n;
    DistanceMatrix d(n);
    for (const Edge& e : g.edges) {
        const auto w = static_cast<std::int64_t>(e.w);
        if (w < d.at(e.u, e.v)) {
            d.at(e.u, e.v) = w;
            d.at(e.v, e.u) = w;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t* dk = d.row(k);
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t dik = d.at(i, k);
            if (dik == kInf) continue;
            std::int64_t* di = d.row(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (dk[j] == kInf) continue;
                const std::int64_t cand = dik + dk[j];
                if (cand < di[j]) di[j] = cand;
            }
        }
    }
    return d;
}

DistanceMatrix apsp_peng(const WeightedGraph& g, ApspStats* stats) {
    const Adjacency adj(g);
    const std::size_t n = g.n;
    DistanceMatrix d(n);
    std::uint64_t pops = 0;

    // Sources in decreasing degree order: high-degree tables get reused most.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    const std::vector<std::size_t> deg = g.degrees();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return deg[a] > deg[b]; });

    std::vector<std::uint32_t> solved;
    std::vector<bool> settled(n, false);

    for (std::uint32_t s : order) {
        std::int64_t* dist = d.row(s);
        std::fill(settled.begin(), settled.end(), false);
        std::fill(dist, dist + n, kInf);
        dist[s] = 0;
        settled[s] = true;

        // Symmetry: distances to solved sources are already known, so they
        // settle up front and are never popped.
        std::size_t unsettled = n - 1;
        for (std::uint32_t t : solved) {
            const std::int64_t dst = d.at(t, s);
            if (dst == kInf) continue;
            dist[t] = dst;
            settled[t] = true;
            --unsettled;
        }

        IndexedHeap heap(n);
        auto relax = [&](std::uint32_t x, std::int64_t cand) {
            if (!settled[x] && cand < dist[x]) {
                dist[x] = cand;
                heap.push_or_decrease(x, cand);
            }
        };
        // A settled solved source with a completed table stands in for its
        // whole subtree: the derived d(s,t)+d(t,x) values are exact wherever
        // the shortest path runs through t. The table route replaces the edge
        // route when it scans no more entries than the edge list would.
        auto expand = [&](std::uint32_t v, std::int64_t dv, bool is_solved) {
            if (is_solved && adj.degree(v) >= unsettled) {
                const std::int64_t* table = d.row(v);
                for (std::uint32_t x = 0; x < n; ++x)
                    if (table[x] != kInf) relax(x, dv + table[x]);
            } else {
                for (std::size_t e = adj.offsets[v]; e < adj.offsets[v + 1]; ++e)
                    relax(adj.to[e], dv + adj.weight[e]);
            }
        };

        expand(s, 0, false);
        for (std::uint32_t t : solved)
            if (settled[t]) expand(t, dist[t], true);

        while (!heap.empty()) {
            const auto [u, du] = heap.pop();
            ++pops;
            settled[u] = true;
            --unsettled;
            expand(u, du, false);
        }
        solved.push_back(s);
    }

    if (stats) stats->heap_pops = pops;
    return d;
}

double RunRecord::best_time() const {
    return *std::min_element(times_s.begin(), times_s.end());
}

RunRecord run_apsp_portfolio(const WeightedGraph& g, std::size_t repeats) {
    if (repeats < 1) throw InvalidParamError("run_apsp_portfolio: repeats must be >= 1");
    RunRecord rec;
    rec.graph_id = g.id;

    DistanceMatrix results[3];
    for (ApspAlgo algo : kAllApspAlgos) {
        const auto idx = static_cast<std::size_t>(algo);
        std::vector<double> samples;
        samples.reserve(repeats);
        for (std::size_t r = 0; r <= repeats; ++r) {  // run 0 is a discarded warm-up
            ApspStats stats;
            const auto t0 = std::chrono::steady_clock::now();
            DistanceMatrix out;
            switch (algo) {
                case ApspAlgo::Peng: out = apsp_peng(g, &stats); break;
                case ApspAlgo::FloydWarshall: out = apsp_floyd_warshall(g); break;
                case ApspAlgo::Dijkstra: out = apsp_dijkstra(g, &stats); break;
            }
            const auto t1 = std::chrono::steady_clock::now();
            if (r == 0) {
                results[idx] = std::move(out);
                rec.pops[idx] = stats.heap_pops;
            } else {
                samples.push_back(std::chrono::duration<double>(t1 - t0).count());
            }
        }
        std::sort(samples.begin(), samples.end());
        const std::size_t mid = samples.size() / 2;
        rec.times_s[idx] = samples.size() % 2 == 1
                               ? samples[mid]
                               : 0.5 * (samples[mid - 1] + samples[mid]);
    }

    if (!(results[0] == results[1] && results[1] == results[2]))
        throw Error("apsp portfolio: algorithms disagree on " + g.id);

    rec.best = ApspAlgo::Peng;
    for (ApspAlgo algo : kAllApspAlgos) {
        const auto idx = static_cast<std::size_t>(algo);
        if (rec.times_s[idx] < rec.times_s[static_cast<std::size_t>(rec.best)]) rec.best = algo;
    }
    return rec;
}

std::string run_record_to_json(const RunRecord& rec) {
    nlohmann::json times, pops;
    for (ApspAlgo a : kAllApspAlgos) {
        const auto idx = static_cast<std::size_t>(a);
        times[apsp_algo_name(a)] = rec.times_s[idx];
        pops[apsp_algo_name(a)] = rec.pops[idx];
    }
    nlohmann::json j;
    j["graph_id"] = rec.graph_id;
    j["times_s"] = times;
    j["pops"] = pops;
    j["best"] = apsp_algo_name(rec.best);
    return j.dump();
}

RunRecord run_record_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RunRecord rec;
    rec.graph_id = j.at("graph_id").get<std::string>();
    for (ApspAlgo a : kAllApspAlgos) {
        const auto idx = static_cast<std::size_t>(a);
        rec.times_s[idx] = j.at("times_s").at(apsp_algo_name(a)).get<double>();
        rec.pops[idx] = j.at("pops").at(apsp_algo_name(a)).get<std::uint64_t>();
    }
    rec.best = apsp_algo_from_name(j.at("best").get<std::string>());
    return rec;
}

}  // namespace portfolio
