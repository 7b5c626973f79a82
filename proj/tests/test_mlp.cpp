#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "portfolio/mlp.hpp"
#include "test_util.hpp"

using namespace portfolio;

namespace {

MlpConfig tiny_classifier(std::uint64_t seed, double dropout = 0.0) {
    MlpConfig cfg;
    cfg.input_dim = 2;
    cfg.layers = {{8, Activation::ReLU, dropout}, {2, Activation::Softmax, 0.0}};
    cfg.loss = MlpLoss::CategoricalCrossEntropy;
    cfg.optimizer = {OptimizerKind::Adam, 0.01, 0.0};
    cfg.batch_size = 8;
    cfg.epochs = 200;
    cfg.seed = seed;
    return cfg;
}

void make_blobs(Matrix& x, Matrix& y, std::size_t n) {
    x = Matrix(n, 2);
    Vector ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double cls = static_cast<double>(i % 2);
        x(i, 0) = cls * 4.0 - 2.0 + 0.3 * std::sin(static_cast<double>(i));
        x(i, 1) = -cls * 3.0 + 1.5 + 0.3 * std::cos(static_cast<double>(i) * 1.7);
        ids[i] = cls;
    }
    y = one_hot(ids, 2);
}

}  // namespace

TEST_CASE("linearly separable data trains to full accuracy") {
    Matrix x, y;
    make_blobs(x, y, 40);
    const MlpModel model = mlp_train(tiny_classifier(3), x, y, "");
    const Matrix pred = mlp_predict(model, x);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < 40; ++i) {
        const std::size_t want = y(i, 1) > 0.5 ? 1 : 0;
        const std::size_t got = pred(i, 1) > pred(i, 0) ? 1 : 0;
        hits += want == got;
    }
    CHECK(hits == 40);
    CHECK(model.history.train_loss.size() == 200);
    CHECK(model.history.train_accuracy.back() == doctest::Approx(1.0));
}

TEST_CASE("zero epochs returns the initialization") {
    Matrix x, y;
    make_blobs(x, y, 10);
    MlpConfig cfg = tiny_classifier(5);
    cfg.epochs = 0;
    const MlpModel trained = mlp_train(cfg, x, y, "");
    const MlpModel init = mlp_init(cfg, "");
    for (std::size_t l = 0; l < trained.weights.size(); ++l) {
        CHECK(trained.weights[l].data() == init.weights[l].data());
        CHECK(trained.biases[l] == init.biases[l]);
    }
    CHECK(trained.history.train_loss.empty());
}

TEST_CASE("backprop gradients match central finite differences") {
    // 10-sample batch, dropout disabled, every weight and bias checked.
    Matrix x(10, 3), y(10, 2);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 3; ++j)
            x(i, j) = std::sin(static_cast<double>(3 * i + j) * 0.7);
        y(i, i % 2) = 1.0;
    }
    MlpConfig cfg;
    cfg.input_dim = 3;
    cfg.layers = {{5, Activation::ELU, 0.0},
                  {4, Activation::Sigmoid, 0.0},
                  {2, Activation::Softmax, 0.0}};
    cfg.loss = MlpLoss::CategoricalCrossEntropy;
    cfg.seed = 11;
    MlpModel model = mlp_init(cfg, "");

    const MlpGradients grads = mlp_loss_and_gradients(model, x, y);
    const double h = 1e-6;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        for (std::size_t idx = 0; idx < model.weights[l].data().size(); ++idx) {
            const double orig = model.weights[l].data()[idx];
            model.weights[l].data()[idx] = orig + h;
            const double lp = mlp_loss_and_gradients(model, x, y).loss;
            model.weights[l].data()[idx] = orig - h;
            const double lm = mlp_loss_and_gradients(model, x, y).loss;
            model.weights[l].data()[idx] = orig;
            const double fd = (lp - lm) / (2.0 * h);
            const double bp = grads.d_weights[l].data()[idx];
            CHECK(std::abs(fd - bp) <= 1e-4 * std::max({1.0, std::abs(fd), std::abs(bp)}));
        }
        for (std::size_t idx = 0; idx < model.biases[l].size(); ++idx) {
            const double orig = model.biases[l][idx];
            model.biases[l][idx] = orig + h;
            const double lp = mlp_loss_and_gradients(model, x, y).loss;
            model.biases[l][idx] = orig - h;
            const double lm = mlp_loss_and_gradients(model, x, y).loss;
            model.biases[l][idx] = orig;
            const double fd = (lp - lm) / (2.0 * h);
            const double bp = grads.d_biases[l][idx];
            CHECK(std::abs(fd - bp) <= 1e-4 * std::max({1.0, std::abs(fd), std::abs(bp)}));
        }
    }
}

TEST_CASE("mse regression gradients match finite differences") {
    Matrix x(8, 2), y(8, 1);
    for (std::size_t i = 0; i < 8; ++i) {
        x(i, 0) = 0.3 * static_cast<double>(i);
        x(i, 1) = std::cos(static_cast<double>(i));
        y(i, 0) = 2.0 * x(i, 0) - x(i, 1);
    }
    MlpConfig cfg;
    cfg.input_dim = 2;
    cfg.layers = {{6, Activation::ReLU, 0.0}, {1, Activation::Identity, 0.0}};
    cfg.loss = MlpLoss::MeanSquaredError;
    cfg.seed = 13;
    MlpModel model = mlp_init(cfg, "");
    const MlpGradients grads = mlp_loss_and_gradients(model, x, y);
    const double h = 1e-6;
    for (std::size_t idx = 0; idx < model.weights[0].data().size(); ++idx) {
        const double orig = model.weights[0].data()[idx];
        model.weights[0].data()[idx] = orig + h;
        const double lp = mlp_loss_and_gradients(model, x, y).loss;
        model.weights[0].data()[idx] = orig - h;
        const double lm = mlp_loss_and_gradients(model, x, y).loss;
        model.weights[0].data()[idx] = orig;
        const double fd = (lp - lm) / (2.0 * h);
        CHECK(std::abs(fd - grads.d_weights[0].data()[idx]) <=
              1e-4 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("softmax outputs are normalized probability vectors") {
    Matrix x, y;
    make_blobs(x, y, 30);
    MlpConfig cfg = tiny_classifier(7, 0.2);
    cfg.epochs = 5;
    const MlpModel model = mlp_train(cfg, x, y, "");
    const Matrix pred = mlp_predict(model, x);
    for (std::size_t i = 0; i < pred.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < pred.cols(); ++c) {
            CHECK(pred(i, c) >= 0.0);
            CHECK(pred(i, c) <= 1.0);
            sum += pred(i, c);
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("equal logits give uniform probabilities") {
    MlpConfig cfg;
    cfg.input_dim = 2;
    cfg.layers = {{3, Activation::Softmax, 0.0}};
    cfg.seed = 1;
    MlpModel model = mlp_init(cfg, "");
    for (auto& w : model.weights) std::fill(w.data().begin(), w.data().end(), 0.0);
    const Vector p = mlp_predict_row(model, {1.0, -2.0});
    for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("prediction is invariant to batch decomposition") {
    Matrix x, y;
    make_blobs(x, y, 16);
    MlpConfig cfg = tiny_classifier(21, 0.1);
    cfg.epochs = 10;
    const MlpModel model = mlp_train(cfg, x, y, "");
    const Matrix batched = mlp_predict(model, x);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const Vector row(x.row(i), x.row(i) + x.cols());
        const Vector single = mlp_predict_row(model, row);
        for (std::size_t c = 0; c < single.size(); ++c)
            CHECK(single[c] == doctest::Approx(batched(i, c)).epsilon(1e-12));
    }
}

TEST_CASE("training is deterministic under a fixed seed") {
    Matrix x, y;
    make_blobs(x, y, 24);
    MlpConfig cfg = tiny_classifier(42, 0.25);
    cfg.epochs = 12;
    const std::string a = mlp_to_json(mlp_train(cfg, x, y, ""));
    const std::string b = mlp_to_json(mlp_train(cfg, x, y, ""));
    CHECK(a == b);
}

TEST_CASE("rmsprop with momentum also learns") {
    Matrix x, y;
    make_blobs(x, y, 40);
    MlpConfig cfg = tiny_classifier(31);
    cfg.optimizer = {OptimizerKind::RmsProp, 0.01, 0.2};
    cfg.epochs = 120;
    const MlpModel model = mlp_train(cfg, x, y, "");
    CHECK(model.history.train_accuracy.back() >= 0.95);
}

TEST_CASE("validation history is recorded when a validation set is given") {
    Matrix x, y;
    make_blobs(x, y, 32);
    Matrix vx, vy;
    make_blobs(vx, vy, 8);
    MlpConfig cfg = tiny_classifier(55);
    cfg.epochs = 7;
    const MlpModel model = mlp_train(cfg, x, y, "", &vx, &vy);
    CHECK(model.history.val_loss.size() == 7);
    CHECK(model.history.val_accuracy.size() == 7);
}

TEST_CASE("json round trip is bit-exact") {
    Matrix x, y;
    make_blobs(x, y, 12);
    MlpConfig cfg = tiny_classifier(77, 0.1);
    cfg.epochs = 4;
    const MlpModel model = mlp_train(cfg, x, y, "schema-test");
    const MlpModel back = mlp_from_json(mlp_to_json(model));
    CHECK(mlp_to_json(back) == mlp_to_json(model));
    CHECK(back.schema_id == "schema-test");
}

TEST_CASE("input width mismatch is rejected") {
    Matrix x, y;
    make_blobs(x, y, 10);
    const MlpModel model = mlp_train(tiny_classifier(9), x, y, "");
    const Matrix wrong = test_util::random_matrix(4, 5, 1);
    CHECK_THROWS_AS(mlp_predict(model, wrong), SchemaMismatchError);
}
