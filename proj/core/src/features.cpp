#include "portfolio/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace portfolio {

namespace {

constexpr double kNonzeroTol = 1e-12;

void push_stats(Vector& out, const Vector& values) {
    if (values.empty()) {
        out.insert(out.end(), 6, 0.0);  // empty-set sentinel block
        return;
    }
    const StatSummary s = vector_stats(values);
    out.push_back(s.min);
    out.push_back(s.max);
    out.push_back(s.mean);
    out.push_back(s.std_dev);
    out.push_back(s.norm);
    out.push_back(s.smallest_nonzero_abs);
}

void push_stat_names(std::vector<std::string>& names, const std::string& prefix) {
    for (const char* stat : {"min", "max", "mean", "std", "norm", "min_nonzero_abs"})
        names.push_back(prefix + "_" + stat);
}

FeatureSchema make_lp_bag_schema() {
    FeatureSchema s;
    s.id = "lp_bag_v1";
    s.names = {"m", "n"};
    for (const char* stat : {"min", "max", "mean", "std"})
        s.names.push_back(std::string("var_deg_") + stat);
    for (const char* stat : {"min", "max", "mean", "std"})
        s.names.push_back(std::string("con_deg_") + stat);
    push_stat_names(s.names, "a_nz");
    push_stat_names(s.names, "b");
    push_stat_names(s.names, "c");
    push_stat_names(s.names, "a_over_b");
    push_stat_names(s.names, "a_over_c");
    push_stat_names(s.names, "b_over_deg");
    push_stat_names(s.names, "c_over_deg");
    return s;
}

FeatureSchema make_lp_svd_schema(std::size_t k) {
    FeatureSchema s;
    s.id = lp_svd_schema_id(k);
    s.names = {"m", "n"};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            s.names.push_back("svd_" + std::to_string(i) + "_" + std::to_string(j));
    push_stat_names(s.names, "b");
    push_stat_names(s.names, "c");
    return s;
}

FeatureSchema make_graph_svd_schema(std::size_t k) {
    FeatureSchema s;
    s.id = graph_svd_schema_id(k);
    s.names = {"inv_n", "density"};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            s.names.push_back("svd_" + std::to_string(i) + "_" + std::to_string(j));
    return s;
}

FeatureSchema make_graph_deg_schema(std::size_t q) {
    FeatureSchema s;
    s.id = graph_deg_schema_id(q);
    s.names = {"inv_n"};
    for (std::size_t i = 0; i < q; ++i) s.names.push_back("deg_" + std::to_string(i));
    return s;
}

std::size_t parse_suffix(const std::string& id, const std::string& prefix) {
    // "<prefix><number>_v1" -> number; 0 when the shape doesn't match.
    if (id.rfind(prefix, 0) != 0) return 0;
    const std::string rest = id.substr(prefix.size());
    const auto end = rest.find("_v1");
    if (end == std::string::npos) return 0;
    try {
        return static_cast<std::size_t>(std::stoul(rest.substr(0, end)));
    } catch (...) {
        return 0;
    }
}

}  // namespace

std::string lp_bag_schema_id() { return "lp_bag_v1"; }
std::string lp_svd_schema_id(std::size_t k) { return "lp_svd_k" + std::to_string(k) + "_v1"; }
std::string graph_svd_schema_id(std::size_t k) {
    return "graph_svd_k" + std::to_string(k) + "_v1";
}
std::string graph_deg_schema_id(std::size_t q) {
    return "graph_deg_q" + std::to_string(q) + "_v1";
}

const FeatureSchema& feature_schema(const std::string& id) {
    static std::mutex mu;
    static std::map<std::string, FeatureSchema> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;

    FeatureSchema schema;
    if (id == lp_bag_schema_id()) {
        schema = make_lp_bag_schema();
    } else if (std::size_t k = parse_suffix(id, "lp_svd_k"); k > 0) {
        schema = make_lp_svd_schema(k);
    } else if (std::size_t k2 = parse_suffix(id, "graph_svd_k"); k2 > 0) {
        schema = make_graph_svd_schema(k2);
    } else if (std::size_t q = parse_suffix(id, "graph_deg_q"); q > 0) {
        schema = make_graph_deg_schema(q);
    } else {
        throw SchemaUnknownError("unknown feature schema: " + id);
    }
    return cache.emplace(id, std::move(schema)).first->second;
}

FeatureVector lp_bag_of_features(const LpInstance& lp) {
    const std::size_t m = lp.num_constraints();
    const std::size_t n = lp.num_variables();

    Vector var_deg(n, 0.0), con_deg(m, 0.0);
    Vector a_nonzeros;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(lp.a(i, j)) > kNonzeroTol) {
                a_nonzeros.push_back(lp.a(i, j));
                var_deg[j] += 1.0;
                con_deg[i] += 1.0;
            }

    FeatureVector fv;
    fv.schema_id = lp_bag_schema_id();
    Vector& out = fv.values;
    out.reserve(52);
    out.push_back(static_cast<double>(m));
    out.push_back(static_cast<double>(n));

    for (const Vector* deg : {&var_deg, &con_deg}) {
        const StatSummary s = vector_stats(*deg);
        out.push_back(s.min);
        out.push_back(s.max);
        out.push_back(s.mean);
        out.push_back(s.std_dev);
    }

    push_stats(out, a_nonzeros);
    push_stats(out, lp.b);
    push_stats(out, lp.c);

    Vector a_over_b, a_over_c, b_over_deg, c_over_deg;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(lp.a(i, j)) <= kNonzeroTol) continue;
            if (lp.b[i] != 0.0) a_over_b.push_back(lp.a(i, j) / lp.b[i]);
            if (lp.c[j] != 0.0) a_over_c.push_back(lp.a(i, j) / lp.c[j]);
        }
    for (std::size_t i = 0; i < m; ++i)
        if (con_deg[i] > 0.0) b_over_deg.push_back(lp.b[i] / con_deg[i]);
    for (std::size_t j = 0; j < n; ++j)
        if (var_deg[j] > 0.0) c_over_deg.push_back(lp.c[j] / var_deg[j]);

    push_stats(out, a_over_b);
    push_stats(out, a_over_c);
    push_stats(out, b_over_deg);
    push_stats(out, c_over_deg);
    return fv;
}

Matrix svd_compress(const Matrix& a, std::size_t k) {
    const TruncatedSvd s1 = truncated_svd(a, k);
    Matrix us(a.rows(), k);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) us(i, j) = s1.u(i, j) * s1.sigma[j];

    const Matrix ust = transpose(us);  // k x m
    const TruncatedSvd s2 = truncated_svd(ust, k);
    Matrix block(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) block(i, j) = s2.u(i, j) * s2.sigma[j];
    return block;
}

FeatureVector lp_svd_features(const LpInstance& lp, std::size_t k) {
    FeatureVector fv;
    fv.schema_id = lp_svd_schema_id(k);
    Vector& out = fv.values;
    out.reserve(2 + k * k + 12);
    out.push_back(static_cast<double>(lp.num_constraints()));
    out.push_back(static_cast<double>(lp.num_variables()));
    const Matrix block = svd_compress(lp.a, k);
    out.insert(out.end(), block.data().begin(), block.data().end());
    push_stats(out, lp.b);
    push_stats(out, lp.c);
    return fv;
}

FeatureVector graph_svd_features(const WeightedGraph& g, std::size_t k) {
    if (g.n < 2) throw TooFewNodesError("graph_svd_features: need at least 2 nodes");
    Matrix adj(g.n, g.n);
    for (const Edge& e : g.edges) {
        adj(e.u, e.v) = static_cast<double>(e.w);
        adj(e.v, e.u) = static_cast<double>(e.w);
    }
    FeatureVector fv;
    fv.schema_id = graph_svd_schema_id(k);
    Vector& out = fv.values;
    out.reserve(2 + k * k);
    out.push_back(1.0 / static_cast<double>(g.n));
    out.push_back(density(g));
    const Matrix block = svd_compress(adj, k);
    out.insert(out.end(), block.data().begin(), block.data().end());
    return fv;
}

FeatureVector degree_sequence_features(const WeightedGraph& g, std::size_t q) {
    std::vector<std::size_t> deg = g.degrees();
    std::sort(deg.begin(), deg.end(), std::greater<>());

    FeatureVector fv;
    fv.schema_id = graph_deg_schema_id(q);
    Vector& out = fv.values;
    out.reserve(q + 1);
    const double n = static_cast<double>(g.n);
    out.push_back(1.0 / n);
    const std::size_t stride = deg.size() / q;  // 0 when n < q: every sample is deg[0]
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t idx = stride * i;
        out.push_back(static_cast<double>(deg[idx]) / n);
    }
    return fv;
}

}  // namespace portfolio
