#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "portfolio/linalg.hpp"

namespace portfolio {

enum class Activation { ReLU, ELU, Sigmoid, Softmax, Identity };
enum class MlpLoss { CategoricalCrossEntropy, MeanSquaredError };
enum class OptimizerKind { RmsProp, Adam };

struct MlpOptimizer {
    OptimizerKind kind = OptimizerKind::Adam;
    double learning_rate = 0.001;
    double momentum = 0.0;  // RMSProp only
};

struct MlpLayerSpec {
    std::size_t units = 0;
    Activation activation = Activation::ReLU;
    double dropout = 0.0;  // applied to this layer's output during training
};

struct MlpConfig {
    std::size_t input_dim = 0;
    std::vector<MlpLayerSpec> layers;  // hidden layers plus the output layer
    MlpLoss loss = MlpLoss::CategoricalCrossEntropy;
    MlpOptimizer optimizer;
    std::size_t batch_size = 64;
    std::size_t epochs = 50;
    std::uint64_t seed = 0;
};

struct TrainHistory {
    std::vector<double> train_loss;
    std::vector<double> train_accuracy;  // classification only
    std::vector<double> val_loss;        // present when a validation set was given
    std::vector<double> val_accuracy;
};

struct MlpModel {
    MlpConfig config;
    std::string schema_id;
    std::vector<Matrix> weights;  // [layer](units_out x units_in)
    std::vector<Vector> biases;
    TrainHistory history;
};

// He-style init for ReLU/ELU layers, Xavier for the rest; all draws seeded.
MlpModel mlp_init(const MlpConfig& cfg, const std::string& schema_id);

// Mini-batch backprop with inverted dropout. Throws NonFiniteLossError if the
// loss leaves the reals. Validation metrics are recorded when val_x is given.
MlpModel mlp_train(const MlpConfig& cfg, const Matrix& x, const Matrix& y,
                   const std::string& schema_id, const Matrix* val_x = nullptr,
                   const Matrix* val_y = nullptr);

// Deterministic inference (dropout off). Classification rows sum to 1.
Matrix mlp_predict(const MlpModel& model, const Matrix& x);
Vector mlp_predict_row(const MlpModel& model, const Vector& row);

// Loss plus gradients for one batch with dropout disabled. The training loop
// uses the same path; the finite-difference test perturbs weights against it.
struct MlpGradients {
    double loss = 0.0;
    std::vector<Matrix> d_weights;
    std::vector<Vector> d_biases;
};
MlpGradients mlp_loss_and_gradients(const MlpModel& model, const Matrix& x, const Matrix& y);

std::string mlp_to_json(const MlpModel& model);
MlpModel mlp_from_json(const std::string& text);

// One-hot encoding helper for classification labels.
Matrix one_hot(const Vector& class_ids, std::size_t n_classes);

}  // namespace portfolio
