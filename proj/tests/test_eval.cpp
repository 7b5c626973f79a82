#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "portfolio/eval.hpp"

using namespace portfolio;

namespace {

std::vector<EvalInstance> sample_instances() {
    // Three algorithms; instance costs picked so every policy diverges.
    std::vector<EvalInstance> out;
    const double table[5][3] = {{3, 1, 2},   // best 1
                                {1, 5, 5},   // best 0
                                {4, 4, 2},   // best 2
                                {2, 2, 2},   // tie -> best 0
                                {10, 1, 3}}; // best 1
    for (int i = 0; i < 5; ++i) {
        EvalInstance inst;
        inst.id = "i" + std::to_string(i);
        inst.costs = {table[i][0], table[i][1], table[i][2]};
        inst.density = 0.1 * static_cast<double>(i + 1);
        out.push_back(inst);
    }
    return out;
}

std::vector<FeatureVector> dummy_features(std::size_t n) {
    std::vector<FeatureVector> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].schema_id = "test";
        out[i].values = {static_cast<double>(i)};
    }
    return out;
}

}  // namespace

TEST_CASE("true_best breaks ties by fixed order") {
    EvalInstance inst;
    inst.costs = {2.0, 2.0, 2.0};
    CHECK(true_best(inst) == 0);
    inst.costs = {3.0, 2.0, 2.0};
    CHECK(true_best(inst) == 1);
}

TEST_CASE("density heuristic picks by threshold") {
    const SelectionPolicy policy = SelectionPolicy::density_heuristic(0.5);
    EvalInstance sparse;
    sparse.density = 0.3;
    sparse.costs = {1, 1, 1};
    EvalInstance dense;
    dense.density = 0.7;
    dense.costs = {1, 1, 1};
    const FeatureVector none;
    CHECK(select(policy, none, sparse) == 0);  // below threshold
    CHECK(select(policy, none, dense) == 1);   // at or above
}

TEST_CASE("runtime regressors pick the argmin with first-index ties") {
    SelectionPolicy policy;
    policy.kind = PolicyKind::RuntimeRegressors;
    policy.name = "regs";
    for (int a = 0; a < 3; ++a)
        policy.cost_predictors.push_back([](const FeatureVector&) { return 7.0; });
    const FeatureVector fv{{1.0}, "test"};
    EvalInstance inst;
    inst.costs = {1, 1, 1};
    CHECK(select(policy, fv, inst) == 0);

    policy.cost_predictors[2] = [](const FeatureVector&) { return 1.0; };
    CHECK(select(policy, fv, inst) == 2);
}

TEST_CASE("direct classifier takes the argmax and ignores monotone rescaling") {
    SelectionPolicy policy;
    policy.kind = PolicyKind::DirectClassifier;
    policy.name = "clf";
    policy.class_probs = [](const FeatureVector&) { return Vector{0.2, 0.5, 0.3}; };
    const FeatureVector fv{{0.0}, "test"};
    EvalInstance inst;
    inst.costs = {1, 1, 1};
    CHECK(select(policy, fv, inst) == 1);

    // Strictly monotone transformation of the probability vector.
    policy.class_probs = [](const FeatureVector&) {
        Vector p{0.2, 0.5, 0.3};
        for (double& v : p) v = std::exp(3.0 * v) + 1.0;
        return p;
    };
    CHECK(select(policy, fv, inst) == 1);
}

TEST_CASE("classifier that always answers class 2 always selects algorithm 2") {
    SelectionPolicy policy;
    policy.kind = PolicyKind::DirectClassifier;
    policy.name = "always2";
    policy.class_probs = [](const FeatureVector&) { return Vector{0.0, 0.1, 0.9}; };
    const auto instances = sample_instances();
    const auto features = dummy_features(instances.size());
    const PolicyReport rep = evaluate(policy, features, instances);
    for (std::size_t c : rep.choices) CHECK(c == 2);
}

TEST_CASE("oracle report is the per-instance minimum") {
    const auto instances = sample_instances();
    const PolicyReport oracle = oracle_report(instances);
    CHECK(oracle.accuracy == 1.0);
    CHECK(oracle.total_cost == doctest::Approx(1 + 1 + 2 + 2 + 1));
    CHECK(oracle.mean_cost == doctest::Approx(7.0 / 5.0));
}

TEST_CASE("fixed policies charge true costs and oracle dominates") {
    const auto instances = sample_instances();
    const auto features = dummy_features(instances.size());
    const PolicyReport oracle = oracle_report(instances);
    for (std::size_t a = 0; a < 3; ++a) {
        const PolicyReport rep =
            evaluate(SelectionPolicy::fixed(a, "fixed" + std::to_string(a)), features, instances);
        double want = 0.0;
        std::size_t hits = 0;
        for (const EvalInstance& inst : instances) {
            want += inst.costs[a];
            hits += true_best(inst) == a;
        }
        CHECK(rep.total_cost == doctest::Approx(want));
        CHECK(rep.accuracy == doctest::Approx(static_cast<double>(hits) / 5.0));
        CHECK(rep.total_cost >= oracle.total_cost);
    }
}

TEST_CASE("repeated evaluation is pure") {
    const auto instances = sample_instances();
    const auto features = dummy_features(instances.size());
    const SelectionPolicy fixed = SelectionPolicy::fixed(1, "fixed1");
    const PolicyReport a = evaluate(fixed, features, instances);
    const PolicyReport b = evaluate(fixed, features, instances);
    CHECK(a.total_cost == b.total_cost);
    CHECK(a.choices == b.choices);
}

TEST_CASE("best and worst ratios") {
    const auto instances = sample_instances();
    const auto features = dummy_features(instances.size());
    const PolicyReport ref = evaluate(SelectionPolicy::fixed(0, "ref"), features, instances);

    SUBCASE("policy equal to reference has unit ratios") {
        const RatioSummary r = best_worst_ratios(ref, ref, instances);
        CHECK(r.best == doctest::Approx(1.0));
        CHECK(r.worst == doctest::Approx(1.0));
    }
    SUBCASE("oracle ratios never exceed one") {
        PolicyReport oracle = oracle_report(instances);
        const RatioSummary r = best_worst_ratios(oracle, ref, instances);
        CHECK(r.best <= 1.0);
        CHECK(r.worst <= 1.0);
    }
    SUBCASE("zero reference costs are excluded") {
        auto insts = sample_instances();
        insts[0].costs[0] = 0.0;
        const auto feats = dummy_features(insts.size());
        const PolicyReport zref = evaluate(SelectionPolicy::fixed(0, "ref"), feats, insts);
        const PolicyReport pol = evaluate(SelectionPolicy::fixed(1, "p"), feats, insts);
        const RatioSummary r = best_worst_ratios(pol, zref, insts);
        CHECK(r.skipped_zero_reference == 1);
    }
}

TEST_CASE("empty test sets are rejected") {
    CHECK_THROWS_AS(oracle_report({}), MissingRecordError);
    CHECK_THROWS_AS(evaluate(SelectionPolicy::fixed(0, "f"), {}, {}), MissingRecordError);
}
