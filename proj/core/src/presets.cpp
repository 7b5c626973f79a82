#include "portfolio/presets.hpp"

#include "portfolio/apsp.hpp"
#include "portfolio/features.hpp"
#include "portfolio/simplex.hpp"

namespace portfolio {

const char* case_study_name(CaseStudy cs) {
    return cs == CaseStudy::Simplex ? "simplex" : "apsp";
}

CaseStudy case_study_from_name(const std::string& name) {
    if (name == "simplex") return CaseStudy::Simplex;
    if (name == "apsp") return CaseStudy::Apsp;
    throw InvalidParamError("unknown case study: " + name);
}

namespace {

GbdtConfig lp_regressor_config(double lr, std::size_t trees, std::size_t depth, double mcw,
                               double gamma, double subsample, double colsample, double alpha) {
    GbdtConfig cfg;
    cfg.learning_rate = lr;
    cfg.n_estimators = trees;
    cfg.max_depth = depth;
    cfg.min_child_weight = mcw;
    cfg.gamma = gamma;
    cfg.subsample = subsample;
    cfg.colsample = colsample;
    cfg.reg_alpha = alpha;
    cfg.objective = GbdtObjective::SquaredError;
    return cfg;
}

MlpConfig mlp_classifier(std::size_t input_dim, std::vector<MlpLayerSpec> hidden,
                         std::size_t n_classes, MlpOptimizer opt, std::size_t epochs) {
    MlpConfig cfg;
    cfg.input_dim = input_dim;
    cfg.layers = std::move(hidden);
    cfg.layers.push_back({n_classes, Activation::Softmax, 0.0});
    cfg.loss = MlpLoss::CategoricalCrossEntropy;
    cfg.optimizer = opt;
    cfg.batch_size = 64;
    cfg.epochs = epochs;
    return cfg;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> out;
    const MlpOptimizer adam{OptimizerKind::Adam, 0.001, 0.0};
    const MlpOptimizer rmsprop{OptimizerKind::RmsProp, 0.01, 0.2};

    // Per-rule iteration regressors on the bag-of-features representation.
    struct RuleRow {
        PivotRuleKind rule;
        double lr;
        std::size_t trees, depth;
        double mcw, gamma, sub, col, alpha;
    };
    const RuleRow table[] = {
        {PivotRuleKind::Dantzig, 0.1, 271, 5, 6, 0.0, 1.0, 1.0, 100.0},
        {PivotRuleKind::Hybrid, 0.1, 137, 6, 6, 0.0, 0.8, 1.0, 10.0},
        {PivotRuleKind::Devex, 0.1, 173, 4, 5, 0.0, 0.8, 1.0, 1e-5},
        {PivotRuleKind::SteepestEdge, 0.1, 173, 6, 4, 0.0, 0.9, 0.8, 100.0},
        {PivotRuleKind::GreatestImprovement, 0.05, 371, 6, 1, 0.3, 0.8, 0.9, 1e-5},
    };
    for (const RuleRow& r : table) {
        Preset p;
        p.name = std::string("lp-iters-") + pivot_rule_name(r.rule);
        p.case_study = CaseStudy::Simplex;
        p.model_kind = PresetModelKind::Gbdt;
        p.role = PresetRole::CostRegressor;
        p.schema_id = lp_bag_schema_id();
        p.target_algo = static_cast<std::size_t>(r.rule);
        p.gbdt = lp_regressor_config(r.lr, r.trees, r.depth, r.mcw, r.gamma, r.sub, r.col,
                                     r.alpha);
        out.push_back(std::move(p));
    }

    {
        Preset p;
        p.name = "lp-svd-tree";
        p.case_study = CaseStudy::Simplex;
        p.model_kind = PresetModelKind::Gbdt;
        p.role = PresetRole::DirectClassifier;
        p.schema_id = lp_svd_schema_id(20);
        p.gbdt = lp_regressor_config(0.1, 102, 5, 5, 0.0, 0.8, 0.8, 0.0);
        p.gbdt.objective = GbdtObjective::SoftmaxCrossEntropy;
        p.gbdt.n_classes = 5;
        out.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "lp-bag-nn";
        p.case_study = CaseStudy::Simplex;
        p.model_kind = PresetModelKind::Mlp;
        p.role = PresetRole::DirectClassifier;
        p.schema_id = lp_bag_schema_id();
        std::vector<MlpLayerSpec> hidden(4, {64, Activation::ReLU, 0.1});
        p.mlp = mlp_classifier(feature_schema(p.schema_id).size(), hidden, 5, rmsprop, 50);
        out.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "lp-svd-nn";
        p.case_study = CaseStudy::Simplex;
        p.model_kind = PresetModelKind::Mlp;
        p.role = PresetRole::DirectClassifier;
        p.schema_id = lp_svd_schema_id(20);
        std::vector<MlpLayerSpec> hidden(4, {512, Activation::ReLU, 0.0});
        p.mlp = mlp_classifier(feature_schema(p.schema_id).size(), hidden, 5, adam, 100);
        out.push_back(std::move(p));
    }

    // APSP: per-algorithm runtime regressors (seconds), MSE.
    for (ApspAlgo algo : kAllApspAlgos) {
        Preset p;
        p.name = std::string("apsp-runtime-nn-") + apsp_algo_name(algo);
        p.case_study = CaseStudy::Apsp;
        p.model_kind = PresetModelKind::Mlp;
        p.role = PresetRole::CostRegressor;
        p.schema_id = graph_svd_schema_id(20);
        p.target_algo = static_cast<std::size_t>(algo);
        MlpConfig cfg;
        cfg.input_dim = feature_schema(p.schema_id).size();
        cfg.layers = {{512, Activation::ELU, 0.25},
                      {256, Activation::ReLU, 0.25},
                      {256, Activation::ReLU, 0.25},
                      {256, Activation::ReLU, 0.25},
                      {1, Activation::Identity, 0.0}};
        cfg.loss = MlpLoss::MeanSquaredError;
        cfg.optimizer = adam;
        cfg.batch_size = 64;
        cfg.epochs = 100;
        p.mlp = cfg;
        out.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "apsp-svd-nn";
        p.case_study = CaseStudy::Apsp;
        p.model_kind = PresetModelKind::Mlp;
        p.role = PresetRole::DirectClassifier;
        p.schema_id = graph_svd_schema_id(20);
        std::vector<MlpLayerSpec> hidden = {{128, Activation::ELU, 0.5},
                                            {128, Activation::Sigmoid, 0.5},
                                            {128, Activation::Sigmoid, 0.5},
                                            {128, Activation::Sigmoid, 0.5},
                                            {128, Activation::Sigmoid, 0.5}};
        p.mlp = mlp_classifier(feature_schema(p.schema_id).size(), hidden, 3, adam, 300);
        out.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "apsp-deg-nn";
        p.case_study = CaseStudy::Apsp;
        p.model_kind = PresetModelKind::Mlp;
        p.role = PresetRole::DirectClassifier;
        p.schema_id = graph_deg_schema_id(50);
        std::vector<MlpLayerSpec> hidden = {{128, Activation::ELU, 0.5},
                                            {64, Activation::Sigmoid, 0.5}};
        p.mlp = mlp_classifier(feature_schema(p.schema_id).size(), hidden, 3, adam, 300);
        out.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "apsp-svd-tree";
        p.case_study = CaseStudy::Apsp;
        p.model_kind = PresetModelKind::Gbdt;
        p.role = PresetRole::DirectClassifier;
        p.schema_id = graph_svd_schema_id(5);
        p.gbdt = lp_regressor_config(0.1, 64, 6, 1, 0.0, 1.0, 1.0, 0.0);
        p.gbdt.objective = GbdtObjective::SoftmaxCrossEntropy;
        p.gbdt.n_classes = 3;
        out.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "apsp-deg-tree";
        p.case_study = CaseStudy::Apsp;
        p.model_kind = PresetModelKind::Gbdt;
        p.role = PresetRole::DirectClassifier;
        p.schema_id = graph_deg_schema_id(50);
        p.gbdt = lp_regressor_config(0.1, 32, 8, 1, 0.0, 1.0, 1.0, 0.0);
        p.gbdt.objective = GbdtObjective::SoftmaxCrossEntropy;
        p.gbdt.n_classes = 3;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

const std::vector<Preset>& all_presets() {
    static const std::vector<Preset> presets = build_presets();
    return presets;
}

std::vector<Preset> presets_for(CaseStudy cs) {
    std::vector<Preset> out;
    for (const Preset& p : all_presets())
        if (p.case_study == cs) out.push_back(p);
    return out;
}

const Preset& preset_by_name(const std::string& name) {
    for (const Preset& p : all_presets())
        if (p.name == name) return p;
    throw MissingModelError("unknown preset: " + name);
}

std::vector<PolicyBundle> regressor_bundles(CaseStudy cs) {
    std::vector<PolicyBundle> out;
    if (cs == CaseStudy::Simplex) {
        PolicyBundle b;
        b.policy_name = "lp-gbdt-regressors";
        for (PivotRuleKind rule : kAllPivotRules)
            b.preset_names.push_back(std::string("lp-iters-") + pivot_rule_name(rule));
        out.push_back(std::move(b));
    } else {
        PolicyBundle b;
        b.policy_name = "apsp-runtime-nn";
        for (ApspAlgo algo : kAllApspAlgos)
            b.preset_names.push_back(std::string("apsp-runtime-nn-") + apsp_algo_name(algo));
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace portfolio
