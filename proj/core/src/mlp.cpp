#include "portfolio/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "portfolio/rng.hpp"

namespace portfolio {

namespace {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::ReLU: return "relu";
        case Activation::ELU: return "elu";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Softmax: return "softmax";
        case Activation::Identity: return "identity";
    }
    return "?";
}

Activation activation_from_name(const std::string& s) {
    for (Activation a : {Activation::ReLU, Activation::ELU, Activation::Sigmoid,
                         Activation::Softmax, Activation::Identity})
        if (s == activation_name(a)) return a;
    throw IoError("unknown activation: " + s);
}

void apply_activation(Activation act, double* row, std::size_t n) {
    switch (act) {
        case Activation::ReLU:
            for (std::size_t i = 0; i < n; ++i) row[i] = std::max(row[i], 0.0);
            break;
        case Activation::ELU:
            for (std::size_t i = 0; i < n; ++i)
                if (row[i] < 0.0) row[i] = std::expm1(row[i]);
            break;
        case Activation::Sigmoid:
            for (std::size_t i = 0; i < n; ++i) row[i] = 1.0 / (1.0 + std::exp(-row[i]));
            break;
        case Activation::Softmax: {
            double mx = row[0];
            for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, row[i]);
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                row[i] = std::exp(row[i] - mx);
                sum += row[i];
            }
            for (std::size_t i = 0; i < n; ++i) row[i] /= sum;
            break;
        }
        case Activation::Identity:
            break;
    }
}

// Derivative in terms of the post-activation value.
double activation_grad(Activation act, double a) {
    switch (act) {
        case Activation::ReLU: return a > 0.0 ? 1.0 : 0.0;
        case Activation::ELU: return a > 0.0 ? 1.0 : a + 1.0;
        case Activation::Sigmoid: return a * (1.0 - a);
        case Activation::Identity: return 1.0;
        case Activation::Softmax: return 1.0;  // handled jointly with the loss
    }
    return 1.0;
}

// z = x * W^T + b, row-major tight loops.
Matrix linear_forward(const Matrix& x, const Matrix& w, const Vector& b) {
    const std::size_t batch = x.rows(), in = x.cols(), out = w.rows();
    Matrix z(batch, out);
    for (std::size_t s = 0; s < batch; ++s) {
        const double* xs = x.row(s);
        double* zs = z.row(s);
        for (std::size_t o = 0; o < out; ++o) {
            const double* wo = w.row(o);
            double acc = b[o];
            for (std::size_t i = 0; i < in; ++i) acc += xs[i] * wo[i];
            zs[o] = acc;
        }
    }
    return z;
}

// fed[l] is what layer l consumed; post[l] its activation output before any
// dropout. Keeping both lets backprop evaluate activation derivatives at the
// true (unscaled) outputs. Dropout on the output layer is ignored.
struct ForwardPass {
    std::vector<Matrix> fed;
    std::vector<Matrix> post;
    std::vector<Matrix> masks;  // masks[l] applied to post[l]; empty if none
};

ForwardPass forward(const MlpModel& model, const Matrix& x, Rng* dropout_rng) {
    const auto& cfg = model.config;
    const std::size_t layers = cfg.layers.size();
    ForwardPass fp;
    fp.masks.resize(layers);
    Matrix cur = x;
    for (std::size_t l = 0; l < layers; ++l) {
        fp.fed.push_back(cur);
        Matrix a = linear_forward(cur, model.weights[l], model.biases[l]);
        for (std::size_t s = 0; s < a.rows(); ++s)
            apply_activation(cfg.layers[l].activation, a.row(s), a.cols());
        fp.post.push_back(a);
        const double p = cfg.layers[l].dropout;
        if (dropout_rng && p > 0.0 && l + 1 < layers) {
            Matrix mask(a.rows(), a.cols());
            const double scale = 1.0 / (1.0 - p);  // inverted dropout
            for (double& m : mask.data()) m = dropout_rng->bernoulli(p) ? 0.0 : scale;
            for (std::size_t i = 0; i < a.data().size(); ++i) a.data()[i] *= mask.data()[i];
            fp.masks[l] = std::move(mask);
        }
        cur = std::move(a);
    }
    return fp;
}

double batch_loss(const MlpConfig& cfg, const Matrix& pred, const Matrix& y) {
    double loss = 0.0;
    if (cfg.loss == MlpLoss::CategoricalCrossEntropy) {
        for (std::size_t s = 0; s < pred.rows(); ++s)
            for (std::size_t c = 0; c < pred.cols(); ++c)
                if (y(s, c) > 0.0) loss -= y(s, c) * std::log(std::max(pred(s, c), 1e-300));
        loss /= static_cast<double>(pred.rows());
    } else {
        for (std::size_t i = 0; i < pred.data().size(); ++i) {
            const double d = pred.data()[i] - y.data()[i];
            loss += d * d;
        }
        loss /= static_cast<double>(pred.data().size());
    }
    return loss;
}

// Backprop through the stored forward pass; gradients averaged over the batch.
double backward(const MlpModel& model, const ForwardPass& fp, const Matrix& y,
                MlpGradients& out) {
    const auto& cfg = model.config;
    const std::size_t layers = cfg.layers.size();
    const Matrix& pred = fp.post.back();
    const double loss = batch_loss(cfg, pred, y);
    const auto batch = static_cast<double>(pred.rows());

    // delta = dL/dz of the current layer.
    Matrix delta(pred.rows(), pred.cols());
    if (cfg.loss == MlpLoss::CategoricalCrossEntropy) {
        if (cfg.layers.back().activation != Activation::Softmax)
            throw InvalidParamError("cross-entropy loss requires a softmax output layer");
        for (std::size_t i = 0; i < delta.data().size(); ++i)
            delta.data()[i] = (pred.data()[i] - y.data()[i]) / batch;
    } else {
        const auto total = static_cast<double>(pred.data().size());
        for (std::size_t i = 0; i < delta.data().size(); ++i)
            delta.data()[i] = 2.0 * (pred.data()[i] - y.data()[i]) / total;
        for (std::size_t s = 0; s < delta.rows(); ++s)
            for (std::size_t c = 0; c < delta.cols(); ++c)
                delta(s, c) *= activation_grad(cfg.layers.back().activation, pred(s, c));
    }

    out.d_weights.assign(layers, Matrix());
    out.d_biases.assign(layers, Vector());
    for (std::size_t li = layers; li-- > 0;) {
        const Matrix& prev = fp.fed[li];
        Matrix dw(model.weights[li].rows(), model.weights[li].cols());
        Vector db(model.biases[li].size(), 0.0);
        for (std::size_t s = 0; s < delta.rows(); ++s) {
            const double* ds = delta.row(s);
            const double* ps = prev.row(s);
            for (std::size_t o = 0; o < dw.rows(); ++o) {
                const double d = ds[o];
                if (d == 0.0) continue;
                db[o] += d;
                double* dwo = dw.row(o);
                for (std::size_t i = 0; i < dw.cols(); ++i) dwo[i] += d * ps[i];
            }
        }
        out.d_weights[li] = std::move(dw);
        out.d_biases[li] = std::move(db);

        if (li > 0) {
            // d(fed[li]) = delta * W, then back through dropout and activation
            // of layer li-1 to get the next dL/dz.
            Matrix next(delta.rows(), model.weights[li].cols());
            for (std::size_t s = 0; s < delta.rows(); ++s) {
                const double* ds = delta.row(s);
                double* ns = next.row(s);
                for (std::size_t o = 0; o < model.weights[li].rows(); ++o) {
                    const double d = ds[o];
                    if (d == 0.0) continue;
                    const double* wo = model.weights[li].row(o);
                    for (std::size_t i = 0; i < next.cols(); ++i) ns[i] += d * wo[i];
                }
            }
            if (fp.masks[li - 1].rows() > 0)
                for (std::size_t i = 0; i < next.data().size(); ++i)
                    next.data()[i] *= fp.masks[li - 1].data()[i];
            const Matrix& act = fp.post[li - 1];
            for (std::size_t s = 0; s < next.rows(); ++s)
                for (std::size_t c = 0; c < next.cols(); ++c)
                    next(s, c) *= activation_grad(cfg.layers[li - 1].activation, act(s, c));
            delta = std::move(next);
        }
    }
    return loss;
}

struct OptimizerState {
    std::vector<Matrix> m_w, v_w;
    std::vector<Vector> m_b, v_b;
    std::size_t steps = 0;

    void init(const MlpModel& model) {
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            m_w.emplace_back(model.weights[l].rows(), model.weights[l].cols());
            v_w.emplace_back(model.weights[l].rows(), model.weights[l].cols());
            m_b.emplace_back(model.biases[l].size(), 0.0);
            v_b.emplace_back(model.biases[l].size(), 0.0);
        }
    }

    void update_span(const MlpOptimizer& opt, double* w, const double* g, double* m, double* v,
                     std::size_t n) const {
        if (opt.kind == OptimizerKind::Adam) {
            const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
            const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps));
            const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps));
            for (std::size_t i = 0; i < n; ++i) {
                m[i] = b1 * m[i] + (1.0 - b1) * g[i];
                v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
                w[i] -= opt.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
            }
        } else {
            const double rho = 0.9, eps = 1e-7;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = rho * v[i] + (1.0 - rho) * g[i] * g[i];
                const double step = opt.learning_rate * g[i] / (std::sqrt(v[i]) + eps);
                m[i] = opt.momentum * m[i] + step;  // m doubles as the momentum buffer
                w[i] -= m[i];
            }
        }
    }

    void apply(MlpModel& model, const MlpGradients& g) {
        ++steps;
        const MlpOptimizer& opt = model.config.optimizer;
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            update_span(opt, model.weights[l].data().data(), g.d_weights[l].data().data(),
                        m_w[l].data().data(), v_w[l].data().data(),
                        model.weights[l].data().size());
            update_span(opt, model.biases[l].data(), g.d_biases[l].data(), m_b[l].data(),
                        v_b[l].data(), model.biases[l].size());
        }
    }
};

double accuracy_of(const Matrix& pred, const Matrix& y) {
    std::size_t hits = 0;
    for (std::size_t s = 0; s < pred.rows(); ++s) {
        const auto am = [&](const Matrix& mm) {
            std::size_t best = 0;
            for (std::size_t c = 1; c < mm.cols(); ++c)
                if (mm(s, c) > mm(s, best)) best = c;
            return best;
        };
        if (am(pred) == am(y)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(pred.rows());
}

}  // namespace

MlpModel mlp_init(const MlpConfig& cfg, const std::string& schema_id) {
    if (cfg.layers.empty()) throw InvalidParamError("mlp: no layers");
    MlpModel model;
    model.config = cfg;
    model.schema_id = schema_id;
    Rng rng = Rng::child(cfg.seed, 0);
    std::size_t fan_in = cfg.input_dim;
    for (const MlpLayerSpec& layer : cfg.layers) {
        const std::size_t fan_out = layer.units;
        const bool he = layer.activation == Activation::ReLU || layer.activation == Activation::ELU;
        const double limit = he ? std::sqrt(6.0 / static_cast<double>(fan_in))
                                : std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Matrix w(fan_out, fan_in);
        for (double& v : w.data()) v = rng.uniform(-limit, limit);
        model.weights.push_back(std::move(w));
        model.biases.emplace_back(fan_out, 0.0);
        fan_in = fan_out;
    }
    return model;
}

MlpGradients mlp_loss_and_gradients(const MlpModel& model, const Matrix& x, const Matrix& y) {
    const ForwardPass fp = forward(model, x, nullptr);
    MlpGradients g;
    g.loss = backward(model, fp, y, g);
    return g;
}

MlpModel mlp_train(const MlpConfig& cfg, const Matrix& x, const Matrix& y,
                   const std::string& schema_id, const Matrix* val_x, const Matrix* val_y) {
    if (x.rows() != y.rows()) throw SchemaMismatchError("mlp_train: sample count mismatch");
    if (x.cols() != cfg.input_dim) throw SchemaMismatchError("mlp_train: input width mismatch");
    MlpModel model = mlp_init(cfg, schema_id);
    OptimizerState opt;
    opt.init(model);
    Rng rng = Rng::child(cfg.seed, 1);

    const std::size_t n = x.rows();
    const std::size_t batch_size = std::max<std::size_t>(1, std::min(cfg.batch_size, n));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    const bool classify = cfg.loss == MlpLoss::CategoricalCrossEntropy;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = n; i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(order[i - 1], order[j]);
        }
        for (std::size_t start = 0; start < n; start += batch_size) {
            const std::size_t count = std::min(batch_size, n - start);
            Matrix bx(count, x.cols());
            Matrix by(count, y.cols());
            for (std::size_t s = 0; s < count; ++s) {
                const std::size_t src = order[start + s];
                std::copy(x.row(src), x.row(src) + x.cols(), bx.row(s));
                std::copy(y.row(src), y.row(src) + y.cols(), by.row(s));
            }
            const ForwardPass fp = forward(model, bx, &rng);
            MlpGradients g;
            const double loss = backward(model, fp, by, g);
            if (!std::isfinite(loss))
                throw NonFiniteLossError("mlp_train: loss diverged at epoch " +
                                         std::to_string(epoch));
            opt.apply(model, g);
        }

        const Matrix pred = mlp_predict(model, x);
        const double train_loss = batch_loss(cfg, pred, y);
        if (!std::isfinite(train_loss))
            throw NonFiniteLossError("mlp_train: epoch loss diverged");
        model.history.train_loss.push_back(train_loss);
        if (classify) model.history.train_accuracy.push_back(accuracy_of(pred, y));
        if (val_x && val_y && val_x->rows() > 0) {
            const Matrix vp = mlp_predict(model, *val_x);
            model.history.val_loss.push_back(batch_loss(cfg, vp, *val_y));
            if (classify) model.history.val_accuracy.push_back(accuracy_of(vp, *val_y));
        }
    }
    return model;
}

Matrix mlp_predict(const MlpModel& model, const Matrix& x) {
    if (x.cols() != model.config.input_dim)
        throw SchemaMismatchError("mlp_predict: input width mismatch");
    Matrix a = x;
    for (std::size_t l = 0; l < model.config.layers.size(); ++l) {
        a = linear_forward(a, model.weights[l], model.biases[l]);
        for (std::size_t s = 0; s < a.rows(); ++s)
            apply_activation(model.config.layers[l].activation, a.row(s), a.cols());
    }
    return a;
}

Vector mlp_predict_row(const MlpModel& model, const Vector& row) {
    Matrix x(1, row.size());
    std::copy(row.begin(), row.end(), x.row(0));
    const Matrix out = mlp_predict(model, x);
    return Vector(out.row(0), out.row(0) + out.cols());
}

Matrix one_hot(const Vector& class_ids, std::size_t n_classes) {
    Matrix y(class_ids.size(), n_classes);
    for (std::size_t i = 0; i < class_ids.size(); ++i) {
        const auto c = static_cast<std::size_t>(class_ids[i]);
        if (c >= n_classes) throw InvalidParamError("one_hot: class id out of range");
        y(i, c) = 1.0;
    }
    return y;
}

std::string mlp_to_json(const MlpModel& model) {
    const MlpConfig& cfg = model.config;
    nlohmann::json layers = nlohmann::json::array();
    for (const MlpLayerSpec& l : cfg.layers)
        layers.push_back({{"units", l.units},
                          {"activation", activation_name(l.activation)},
                          {"dropout", l.dropout}});
    nlohmann::json j;
    j["format"] = 1;
    j["type"] = "mlp";
    j["config"] = {
        {"input_dim", cfg.input_dim},
        {"layers", layers},
        {"loss", cfg.loss == MlpLoss::CategoricalCrossEntropy ? "categorical_crossentropy"
                                                              : "mean_squared_error"},
        {"optimizer",
         {{"kind", cfg.optimizer.kind == OptimizerKind::Adam ? "adam" : "rmsprop"},
          {"learning_rate", cfg.optimizer.learning_rate},
          {"momentum", cfg.optimizer.momentum}}},
        {"batch_size", cfg.batch_size},
        {"epochs", cfg.epochs},
        {"seed", cfg.seed}};
    j["schema_id"] = model.schema_id;
    nlohmann::json weights = nlohmann::json::array();
    for (std::size_t l = 0; l < model.weights.size(); ++l)
        weights.push_back({{"rows", model.weights[l].rows()},
                           {"cols", model.weights[l].cols()},
                           {"w", model.weights[l].data()},
                           {"b", model.biases[l]}});
    j["weights"] = std::move(weights);
    j["history"] = {{"train_loss", model.history.train_loss},
                    {"train_accuracy", model.history.train_accuracy},
                    {"val_loss", model.history.val_loss},
                    {"val_accuracy", model.history.val_accuracy}};
    return j.dump();
}

MlpModel mlp_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("type").get<std::string>() != "mlp") throw IoError("not an mlp model file");
    MlpModel model;
    const auto& c = j.at("config");
    model.config.input_dim = c.at("input_dim").get<std::size_t>();
    for (const auto& l : c.at("layers")) {
        MlpLayerSpec spec;
        spec.units = l.at("units").get<std::size_t>();
        spec.activation = activation_from_name(l.at("activation").get<std::string>());
        spec.dropout = l.at("dropout").get<double>();
        model.config.layers.push_back(spec);
    }
    model.config.loss = c.at("loss").get<std::string>() == "categorical_crossentropy"
                            ? MlpLoss::CategoricalCrossEntropy
                            : MlpLoss::MeanSquaredError;
    const auto& o = c.at("optimizer");
    model.config.optimizer.kind =
        o.at("kind").get<std::string>() == "adam" ? OptimizerKind::Adam : OptimizerKind::RmsProp;
    model.config.optimizer.learning_rate = o.at("learning_rate").get<double>();
    model.config.optimizer.momentum = o.at("momentum").get<double>();
    model.config.batch_size = c.at("batch_size").get<std::size_t>();
    model.config.epochs = c.at("epochs").get<std::size_t>();
    model.config.seed = c.at("seed").get<std::uint64_t>();
    model.schema_id = j.at("schema_id").get<std::string>();
    for (const auto& w : j.at("weights")) {
        Matrix mw(w.at("rows").get<std::size_t>(), w.at("cols").get<std::size_t>());
        mw.data() = w.at("w").get<std::vector<double>>();
        model.weights.push_back(std::move(mw));
        model.biases.push_back(w.at("b").get<Vector>());
    }
    const auto& h = j.at("history");
    model.history.train_loss = h.at("train_loss").get<std::vector<double>>();
    model.history.train_accuracy = h.at("train_accuracy").get<std::vector<double>>();
    model.history.val_loss = h.at("val_loss").get<std::vector<double>>();
    model.history.val_accuracy = h.at("val_accuracy").get<std::vector<double>>();
    return model;
}

}  // namespace portfolio
