#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "portfolio/features.hpp"
#include "portfolio/linalg.hpp"

namespace portfolio {

enum class GbdtObjective { SquaredError, SoftmaxCrossEntropy };

struct GbdtConfig {
    double learning_rate = 0.1;
    std::size_t n_estimators = 100;
    std::size_t max_depth = 6;
    double min_child_weight = 1.0;  // minimum hessian sum per child
    double gamma = 0.0;             // minimum split gain
    double subsample = 1.0;         // row sampling rate per tree
    double colsample = 1.0;         // feature sampling rate per tree
    double reg_alpha = 0.0;         // L1 penalty on leaf values
    GbdtObjective objective = GbdtObjective::SquaredError;
    std::size_t n_classes = 1;      // softmax only
    std::uint64_t seed = 0;
};

struct GbdtNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // left when x[feature] < threshold
    double value = 0.0;         // leaf value, shrinkage already applied
    double gain = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
};

struct GbdtTree {
    std::vector<GbdtNode> nodes;
    double predict(const double* row) const;
};

struct GbdtModel {
    GbdtConfig config;
    std::string schema_id;
    std::size_t num_features = 0;
    std::vector<double> base_scores;            // 1 entry, or one per class
    std::vector<std::vector<GbdtTree>> rounds;  // [round][class] (1 class for regression)
    std::vector<double> history_loss;           // training loss after each round
    bool degenerate_labels = false;             // all labels identical; model is base only
};

// features: one row per sample. labels: numeric targets (regression) or class
// ids (classification). Throws SchemaMismatchError on shape problems.
GbdtModel gbdt_train(const GbdtConfig& cfg, const Matrix& features, const Vector& labels,
                     const std::string& schema_id);

// Regression: one value per row. Classification: per-class probabilities.
Vector gbdt_predict(const GbdtModel& model, const Matrix& features);
Matrix gbdt_predict_proba(const GbdtModel& model, const Matrix& features);
Vector gbdt_predict_row(const GbdtModel& model, const Vector& row);

// Total split gain per feature across the ensemble.
Vector gbdt_feature_gain(const GbdtModel& model);

std::string gbdt_to_json(const GbdtModel& model);
GbdtModel gbdt_from_json(const std::string& text);

}  // namespace portfolio
