#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "portfolio/features.hpp"
#include "portfolio/lp_gen.hpp"
#include "test_util.hpp"

using namespace portfolio;

namespace {

WeightedGraph relabeled(const WeightedGraph& g, const std::vector<std::uint32_t>& perm) {
    WeightedGraph out;
    out.n = g.n;
    for (const Edge& e : g.edges) out.edges.push_back({perm[e.u], perm[e.v], e.w});
    return out;
}

}  // namespace

TEST_CASE("lp bag of features on a 1x1 instance") {
    LpInstance lp;
    lp.form = LpForm::Inequality;
    lp.a = Matrix(1, 1);
    lp.a(0, 0) = 2.0;
    lp.b = {4.0};
    lp.c = {3.0};
    const FeatureVector fv = lp_bag_of_features(lp);
    const FeatureSchema& schema = feature_schema(fv.schema_id);
    REQUIRE(fv.values.size() == 52);
    REQUIRE(schema.size() == 52);

    auto at = [&](const std::string& name) {
        const auto it = std::find(schema.names.begin(), schema.names.end(), name);
        REQUIRE(it != schema.names.end());
        return fv.values[static_cast<std::size_t>(it - schema.names.begin())];
    };
    CHECK(at("m") == 1.0);
    CHECK(at("n") == 1.0);
    CHECK(at("var_deg_min") == 1.0);
    CHECK(at("var_deg_max") == 1.0);
    CHECK(at("con_deg_mean") == 1.0);
    CHECK(at("a_nz_min") == 2.0);
    CHECK(at("a_nz_max") == 2.0);
    CHECK(at("a_nz_mean") == 2.0);
    CHECK(at("a_over_b_mean") == doctest::Approx(0.5));
    CHECK(at("a_over_c_mean") == doctest::Approx(2.0 / 3.0));
    CHECK(at("b_over_deg_mean") == doctest::Approx(4.0));
    CHECK(at("c_over_deg_mean") == doctest::Approx(3.0));
}

TEST_CASE("empty normalized set produces a zero block") {
    LpInstance lp;
    lp.form = LpForm::Inequality;
    lp.a = Matrix(2, 2);
    lp.a(0, 0) = 1.0;
    lp.a(1, 1) = 2.0;
    lp.b = {1.0, 1.0};
    lp.c = {0.0, 0.0};  // c = 0 empties the a_over_c set
    const FeatureVector fv = lp_bag_of_features(lp);
    const FeatureSchema& schema = feature_schema(fv.schema_id);
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema.names[i].rfind("a_over_c_", 0) == 0) CHECK(fv.values[i] == 0.0);
}

TEST_CASE("generated instances give 52 finite bag features") {
    LpGenConfig cfg;
    cfg.m_min = 10;
    cfg.m_max = 16;
    cfg.n_min = 6;
    cfg.n_max = 10;
    cfg.seed = 5;
    for (std::uint64_t i = 0; i < 10; ++i) {
        const FeatureVector fv = lp_bag_of_features(generate_lp(cfg, i));
        CHECK(fv.values.size() == 52);
        for (double v : fv.values) CHECK(std::isfinite(v));
    }
}

TEST_CASE("lp svd features on an identity constraint matrix") {
    LpInstance lp;
    lp.form = LpForm::Inequality;
    lp.a = Matrix::identity(4);
    lp.b = {1, 1, 1, 1};
    lp.c = {1, 1, 1, 1};
    const FeatureVector fv = lp_svd_features(lp, 4);
    REQUIRE(fv.values.size() == 2 + 16 + 12);
    // Compressed block of the identity is diagonal with unit singular values.
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double v = fv.values[2 + 4 * i + j];
            if (i == j)
                CHECK(std::abs(std::abs(v) - 1.0) <= 1e-9);
            else
                CHECK(std::abs(v) <= 1e-9);
        }
}

TEST_CASE("lp svd features of a zero matrix are zero") {
    LpInstance lp;
    lp.form = LpForm::Inequality;
    lp.a = Matrix(3, 3);
    lp.b = {1, 1, 1};
    lp.c = {1, 1, 1};
    const FeatureVector fv = lp_svd_features(lp, 2);
    for (std::size_t i = 2; i < 2 + 4; ++i) CHECK(fv.values[i] == 0.0);
}

TEST_CASE("svd compression preserves the top-k spectrum") {
    for (std::uint32_t seed = 0; seed < 4; ++seed) {
        const Matrix a = test_util::random_matrix(30, 18, 100 + seed);
        const std::size_t k = 6;
        const Matrix block = svd_compress(a, k);
        const TruncatedSvd direct = truncated_svd(a, k);
        const TruncatedSvd block_svd = truncated_svd(block, k);
        for (std::size_t i = 0; i < k; ++i)
            CHECK(std::abs(block_svd.sigma[i] - direct.sigma[i]) <=
                  1e-6 * std::max(1.0, direct.sigma[0]));
    }
}

TEST_CASE("graph svd features on a complete graph") {
    WeightedGraph g;
    g.n = 6;
    for (std::uint32_t u = 0; u < 6; ++u)
        for (std::uint32_t v = u + 1; v < 6; ++v) g.edges.push_back({u, v, 1});
    const std::size_t k = 6;
    const FeatureVector fv = graph_svd_features(g, k);
    REQUIRE(fv.values.size() == 2 + k * k);
    CHECK(fv.values[0] == doctest::Approx(1.0 / 6.0));
    CHECK(fv.values[1] == doctest::Approx(1.0));
    // Adjacency spectrum of K6 is (5, -1 x5); singular values (5, 1, 1, 1, 1, 1).
    const Matrix block = svd_compress([&] {
        Matrix adj(6, 6);
        for (const Edge& e : g.edges) {
            adj(e.u, e.v) = 1.0;
            adj(e.v, e.u) = 1.0;
        }
        return adj;
    }(), k);
    const TruncatedSvd s = truncated_svd(block, k);
    CHECK(s.sigma[0] == doctest::Approx(5.0));
    for (std::size_t i = 1; i < 6; ++i) CHECK(s.sigma[i] == doctest::Approx(1.0));
}

TEST_CASE("graph svd features on an empty graph") {
    WeightedGraph g;
    g.n = 5;
    const FeatureVector fv = graph_svd_features(g, 3);
    CHECK(fv.values[1] == 0.0);
    for (std::size_t i = 2; i < fv.values.size(); ++i) CHECK(fv.values[i] == 0.0);
}

TEST_CASE("graph svd features have the schema length") {
    Rng rng(3);
    const WeightedGraph g = gen_er(60, 0.2, rng);
    const FeatureVector fv = graph_svd_features(g, 20);
    CHECK(fv.values.size() == 402);
    CHECK(fv.schema_id == "graph_svd_k20_v1");
    for (double v : fv.values) CHECK(std::isfinite(v));
}

TEST_CASE("degree sequence of a regular graph is flat") {
    Rng rng(4);
    const WeightedGraph g = gen_ws(40, 6.0, 0.0, rng);
    const FeatureVector fv = degree_sequence_features(g, 10);
    REQUIRE(fv.values.size() == 11);
    CHECK(fv.values[0] == doctest::Approx(1.0 / 40.0));
    for (std::size_t i = 1; i < fv.values.size(); ++i)
        CHECK(fv.values[i] == doctest::Approx(6.0 / 40.0));
}

TEST_CASE("degree sequence with q = n is the full sorted sequence") {
    WeightedGraph g;
    g.n = 4;
    g.edges = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}};
    const FeatureVector fv = degree_sequence_features(g, 4);
    REQUIRE(fv.values.size() == 5);
    CHECK(fv.values[1] == doctest::Approx(3.0 / 4.0));
    CHECK(fv.values[2] == doctest::Approx(2.0 / 4.0));
    CHECK(fv.values[3] == doctest::Approx(2.0 / 4.0));
    CHECK(fv.values[4] == doctest::Approx(1.0 / 4.0));
}

TEST_CASE("star graph degree samples") {
    WeightedGraph g;
    g.n = 100;
    for (std::uint32_t leaf = 1; leaf < 100; ++leaf) g.edges.push_back({0, leaf, 1});
    const FeatureVector fv = degree_sequence_features(g, 50);
    REQUIRE(fv.values.size() == 51);
    CHECK(fv.values[1] == doctest::Approx(99.0 / 100.0));
    for (std::size_t i = 2; i < fv.values.size(); ++i)
        CHECK(fv.values[i] == doctest::Approx(1.0 / 100.0));
}

TEST_CASE("n below q degenerates to the top degree (stride 0)") {
    WeightedGraph g;
    g.n = 5;
    g.edges = {{0, 1, 1}, {0, 2, 1}};
    const FeatureVector fv = degree_sequence_features(g, 50);
    REQUIRE(fv.values.size() == 51);
    for (std::size_t i = 1; i < fv.values.size(); ++i)
        CHECK(fv.values[i] == doctest::Approx(2.0 / 5.0));
}

TEST_CASE("degree features are permutation invariant") {
    Rng rng(9);
    const WeightedGraph g = gen_ba(60, 5, rng);
    std::vector<std::uint32_t> perm(60);
    for (std::uint32_t i = 0; i < 60; ++i) perm[i] = i;
    Rng shuffle_rng(10);
    for (std::size_t i = 60; i > 1; --i)
        std::swap(perm[i - 1],
                  perm[static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    const FeatureVector a = degree_sequence_features(g, 50);
    const FeatureVector b = degree_sequence_features(relabeled(g, perm), 50);
    CHECK(a.values == b.values);
}

TEST_CASE("feature vectors are deterministic") {
    LpGenConfig cfg;
    cfg.m_min = cfg.m_max = 8;
    cfg.n_min = cfg.n_max = 6;
    cfg.seed = 12;
    const LpInstance lp = generate_lp(cfg, 0);
    CHECK(lp_bag_of_features(lp).values == lp_bag_of_features(lp).values);
    CHECK(lp_svd_features(lp, 8).values == lp_svd_features(lp, 8).values);
}

TEST_CASE("schema ids resolve and sizes match") {
    CHECK(feature_schema("lp_bag_v1").size() == 52);
    CHECK(feature_schema("lp_svd_k20_v1").size() == 414);
    CHECK(feature_schema("graph_svd_k20_v1").size() == 402);
    CHECK(feature_schema("graph_svd_k5_v1").size() == 27);
    CHECK(feature_schema("graph_deg_q50_v1").size() == 51);
    CHECK_THROWS_AS(feature_schema("nope_v1"), SchemaUnknownError);
}

TEST_CASE("graph svd features require two nodes") {
    WeightedGraph g;
    g.n = 1;
    CHECK_THROWS_AS(graph_svd_features(g, 5), TooFewNodesError);
}
