#include "portfolio/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "portfolio/rng.hpp"

namespace portfolio {

namespace {

constexpr double kHessTol = 1e-12;

double soft_threshold(double g, double alpha) {
    if (g > alpha) return g - alpha;
    if (g < -alpha) return g + alpha;
    return 0.0;
}

double leaf_score(double g, double h, double alpha) {
    if (h < kHessTol) return 0.0;
    const double t = soft_threshold(g, alpha);
    return t * t / h;
}

double leaf_value(double g, double h, double alpha) {
    if (h < kHessTol) return 0.0;
    return -soft_threshold(g, alpha) / h;
}

// Per-node training data: rows sorted by every candidate feature. Splits
// stable-partition each list so child nodes inherit sorted order.
struct NodeRows {
    std::vector<std::vector<std::uint32_t>> sorted;  // [feature_slot][rank] -> row
};

struct TreeBuilder {
    const Matrix& x;
    const Vector& grad;
    const Vector& hess;
    const GbdtConfig& cfg;
    const std::vector<std::uint32_t>& feature_slots;  // column-sampled feature ids
    GbdtTree tree;

    std::int32_t build(NodeRows rows, std::size_t depth) {
        const auto& any = rows.sorted.front();
        double g_sum = 0.0, h_sum = 0.0;
        for (std::uint32_t r : any) {
            g_sum += grad[r];
            h_sum += hess[r];
        }

        double best_gain = 0.0;
        std::size_t best_slot = 0;
        double best_threshold = 0.0;
        bool found = false;

        if (depth < cfg.max_depth && any.size() >= 2) {
            const double parent_score = leaf_score(g_sum, h_sum, cfg.reg_alpha);
            for (std::size_t slot = 0; slot < feature_slots.size(); ++slot) {
                const auto feat = feature_slots[slot];
                const auto& idx = rows.sorted[slot];
                double gl = 0.0, hl = 0.0;
                for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
                    gl += grad[idx[i]];
                    hl += hess[idx[i]];
                    const double v = x(idx[i], feat);
                    const double vn = x(idx[i + 1], feat);
                    if (vn <= v) continue;  // only between distinct values
                    const double hr = h_sum - hl;
                    if (hl < cfg.min_child_weight || hr < cfg.min_child_weight) continue;
                    const double gain = 0.5 * (leaf_score(gl, hl, cfg.reg_alpha) +
                                               leaf_score(g_sum - gl, hr, cfg.reg_alpha) -
                                               parent_score) -
                                        cfg.gamma;
                    if (gain > best_gain + 1e-15) {
                        best_gain = gain;
                        best_slot = slot;
                        best_threshold = 0.5 * (v + vn);
                        found = true;
                    }
                }
            }
        }

        const auto node_id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (!found || best_gain <= 0.0) {
            tree.nodes[node_id].value =
                cfg.learning_rate * leaf_value(g_sum, h_sum, cfg.reg_alpha);
            return node_id;
        }

        const auto split_feat = feature_slots[best_slot];
        NodeRows left, right;
        left.sorted.resize(feature_slots.size());
        right.sorted.resize(feature_slots.size());
        for (std::size_t slot = 0; slot < feature_slots.size(); ++slot) {
            for (std::uint32_t r : rows.sorted[slot]) {
                if (x(r, split_feat) < best_threshold)
                    left.sorted[slot].push_back(r);
                else
                    right.sorted[slot].push_back(r);
            }
        }
        rows.sorted.clear();

        tree.nodes[node_id].feature = static_cast<std::int32_t>(split_feat);
        tree.nodes[node_id].threshold = best_threshold;
        tree.nodes[node_id].gain = best_gain;
        const std::int32_t l = build(std::move(left), depth + 1);
        const std::int32_t r = build(std::move(right), depth + 1);
        tree.nodes[node_id].left = l;
        tree.nodes[node_id].right = r;
        return node_id;
    }
};

GbdtTree fit_tree(const Matrix& x, const Vector& grad, const Vector& hess,
                  const GbdtConfig& cfg, const std::vector<std::uint32_t>& row_sample,
                  const std::vector<std::uint32_t>& feature_slots) {
    TreeBuilder builder{x, grad, hess, cfg, feature_slots, {}};
    NodeRows root;
    root.sorted.resize(feature_slots.size());
    for (std::size_t slot = 0; slot < feature_slots.size(); ++slot) {
        auto& idx = root.sorted[slot];
        idx = row_sample;
        const auto feat = feature_slots[slot];
        std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            return x(a, feat) < x(b, feat);
        });
    }
    builder.build(std::move(root), 0);
    return builder.tree;
}

std::vector<std::uint32_t> sample_without_replacement(std::size_t total, std::size_t want,
                                                      Rng& rng) {
    std::vector<std::uint32_t> all(total);
    std::iota(all.begin(), all.end(), 0u);
    if (want >= total) return all;
    for (std::size_t i = 0; i < want; ++i) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(total) - 1));
        std::swap(all[i], all[j]);
    }
    all.resize(want);
    std::sort(all.begin(), all.end());
    return all;
}

void softmax_row(const double* scores, std::size_t k, double* probs) {
    double mx = scores[0];
    for (std::size_t i = 1; i < k; ++i) mx = std::max(mx, scores[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        probs[i] = std::exp(scores[i] - mx);
        sum += probs[i];
    }
    for (std::size_t i = 0; i < k; ++i) probs[i] /= sum;
}

}  // namespace

double GbdtTree::predict(const double* row) const {
    std::int32_t at = 0;
    while (nodes[at].feature >= 0)
        at = row[nodes[at].feature] < nodes[at].threshold ? nodes[at].left : nodes[at].right;
    return nodes[at].value;
}

GbdtModel gbdt_train(const GbdtConfig& cfg, const Matrix& features, const Vector& labels,
                     const std::string& schema_id) {
    const std::size_t n = features.rows();
    const std::size_t f = features.cols();
    if (labels.size() != n) throw SchemaMismatchError("gbdt_train: label count mismatch");
    if (n < 2) throw InvalidParamError("gbdt_train: need at least 2 samples");
    if (!schema_id.empty() && feature_schema(schema_id).size() != f)
        throw SchemaMismatchError("gbdt_train: features do not match schema " + schema_id);

    GbdtModel model;
    model.config = cfg;
    model.schema_id = schema_id;
    model.num_features = f;

    const bool classify = cfg.objective == GbdtObjective::SoftmaxCrossEntropy;
    const std::size_t k = classify ? cfg.n_classes : 1;
    if (classify && k < 2) throw InvalidParamError("gbdt_train: softmax needs n_classes >= 2");

    model.degenerate_labels =
        std::all_of(labels.begin(), labels.end(), [&](double v) { return v == labels[0]; });

    if (classify) {
        Vector counts(k, 0.0);
        for (double y : labels) {
            const auto cls = static_cast<std::size_t>(y);
            if (cls >= k) throw InvalidParamError("gbdt_train: class id out of range");
            counts[cls] += 1.0;
        }
        model.base_scores.resize(k);
        for (std::size_t c = 0; c < k; ++c)
            model.base_scores[c] = std::log((counts[c] + 1e-9) / static_cast<double>(n));
    } else {
        const double mean = std::accumulate(labels.begin(), labels.end(), 0.0) / double(n);
        model.base_scores = {mean};
    }

    // Current additive scores per sample (per class).
    Matrix scores(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) scores(i, c) = model.base_scores[c];

    const auto want_rows = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::floor(cfg.subsample * static_cast<double>(n))));
    const auto want_cols = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(cfg.colsample * static_cast<double>(f))));

    Vector grad(n), hess(n);
    Matrix probs(classify ? n : 0, k);

    for (std::size_t round = 0; round < cfg.n_estimators; ++round) {
        if (classify)
            for (std::size_t i = 0; i < n; ++i) softmax_row(scores.row(i), k, probs.row(i));

        Rng rng = Rng::child(cfg.seed, round);
        const auto rows = sample_without_replacement(n, want_rows, rng);
        const auto cols32 = sample_without_replacement(f, want_cols, rng);

        std::vector<GbdtTree> round_trees;
        round_trees.reserve(k);
        for (std::size_t c = 0; c < k; ++c) {
            if (classify) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double p = probs(i, c);
                    const double y = static_cast<std::size_t>(labels[i]) == c ? 1.0 : 0.0;
                    grad[i] = p - y;
                    hess[i] = std::max(p * (1.0 - p), 1e-16);
                }
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    grad[i] = scores(i, 0) - labels[i];
                    hess[i] = 1.0;
                }
            }
            GbdtTree tree = fit_tree(features, grad, hess, cfg, rows, cols32);
            for (std::size_t i = 0; i < n; ++i) scores(i, c) += tree.predict(features.row(i));
            round_trees.push_back(std::move(tree));
        }
        model.rounds.push_back(std::move(round_trees));

        double loss = 0.0;
        if (classify) {
            for (std::size_t i = 0; i < n; ++i) {
                softmax_row(scores.row(i), k, probs.row(i));
                const auto cls = static_cast<std::size_t>(labels[i]);
                loss -= std::log(std::max(probs(i, cls), 1e-300));
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const double d = scores(i, 0) - labels[i];
                loss += d * d;
            }
        }
        model.history_loss.push_back(loss / static_cast<double>(n));
    }
    return model;
}

Vector gbdt_predict_row(const GbdtModel& model, const Vector& row) {
    const std::size_t k = model.base_scores.size();
    Vector scores(model.base_scores);
    for (const auto& round : model.rounds)
        for (std::size_t c = 0; c < k; ++c) scores[c] += round[c].predict(row.data());
    if (model.config.objective == GbdtObjective::SoftmaxCrossEntropy) {
        Vector p(k);
        softmax_row(scores.data(), k, p.data());
        return p;
    }
    return scores;
}

Vector gbdt_predict(const GbdtModel& model, const Matrix& features) {
    if (model.config.objective != GbdtObjective::SquaredError)
        throw InvalidParamError("gbdt_predict: classification model, use gbdt_predict_proba");
    if (features.cols() != model.num_features)
        throw SchemaMismatchError("gbdt_predict: feature width mismatch");
    Vector out(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        double s = model.base_scores[0];
        for (const auto& round : model.rounds) s += round[0].predict(features.row(i));
        out[i] = s;
    }
    return out;
}

Matrix gbdt_predict_proba(const GbdtModel& model, const Matrix& features) {
    if (features.cols() != model.num_features)
        throw SchemaMismatchError("gbdt_predict_proba: feature width mismatch");
    const std::size_t k = model.base_scores.size();
    Matrix out(features.rows(), k);
    for (std::size_t i = 0; i < features.rows(); ++i) {
        Vector scores(model.base_scores);
        for (const auto& round : model.rounds)
            for (std::size_t c = 0; c < k; ++c) scores[c] += round[c].predict(features.row(i));
        softmax_row(scores.data(), k, out.row(i));
    }
    return out;
}

Vector gbdt_feature_gain(const GbdtModel& model) {
    Vector gains(model.num_features, 0.0);
    for (const auto& round : model.rounds)
        for (const auto& tree : round)
            for (const GbdtNode& node : tree.nodes)
                if (node.feature >= 0) gains[static_cast<std::size_t>(node.feature)] += node.gain;
    return gains;
}

namespace {

nlohmann::json tree_to_json(const GbdtTree& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const GbdtNode& n : tree.nodes)
        nodes.push_back({n.feature, n.threshold, n.value, n.gain, n.left, n.right});
    return nodes;
}

GbdtTree tree_from_json(const nlohmann::json& j) {
    GbdtTree t;
    for (const auto& n : j) {
        GbdtNode node;
        node.feature = n.at(0).get<std::int32_t>();
        node.threshold = n.at(1).get<double>();
        node.value = n.at(2).get<double>();
        node.gain = n.at(3).get<double>();
        node.left = n.at(4).get<std::int32_t>();
        node.right = n.at(5).get<std::int32_t>();
        t.nodes.push_back(node);
    }
    return t;
}

}  // namespace

std::string gbdt_to_json(const GbdtModel& model) {
    nlohmann::json j;
    j["format"] = 1;
    j["type"] = "gbdt";
    j["config"] = {{"learning_rate", model.config.learning_rate},
                   {"n_estimators", model.config.n_estimators},
                   {"max_depth", model.config.max_depth},
                   {"min_child_weight", model.config.min_child_weight},
                   {"gamma", model.config.gamma},
                   {"subsample", model.config.subsample},
                   {"colsample", model.config.colsample},
                   {"reg_alpha", model.config.reg_alpha},
                   {"objective", model.config.objective == GbdtObjective::SquaredError
                                     ? "squared_error"
                                     : "softmax"},
                   {"n_classes", model.config.n_classes},
                   {"seed", model.config.seed}};
    j["schema_id"] = model.schema_id;
    j["num_features"] = model.num_features;
    j["base_scores"] = model.base_scores;
    j["degenerate_labels"] = model.degenerate_labels;
    j["history_loss"] = model.history_loss;
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& round : model.rounds) {
        nlohmann::json rj = nlohmann::json::array();
        for (const auto& tree : round) rj.push_back(tree_to_json(tree));
        rounds.push_back(std::move(rj));
    }
    j["rounds"] = std::move(rounds);
    return j.dump();
}

GbdtModel gbdt_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("type").get<std::string>() != "gbdt") throw IoError("not a gbdt model file");
    GbdtModel model;
    const auto& c = j.at("config");
    model.config.learning_rate = c.at("learning_rate").get<double>();
    model.config.n_estimators = c.at("n_estimators").get<std::size_t>();
    model.config.max_depth = c.at("max_depth").get<std::size_t>();
    model.config.min_child_weight = c.at("min_child_weight").get<double>();
    model.config.gamma = c.at("gamma").get<double>();
    model.config.subsample = c.at("subsample").get<double>();
    model.config.colsample = c.at("colsample").get<double>();
    model.config.reg_alpha = c.at("reg_alpha").get<double>();
    model.config.objective = c.at("objective").get<std::string>() == "squared_error"
                                 ? GbdtObjective::SquaredError
                                 : GbdtObjective::SoftmaxCrossEntropy;
    model.config.n_classes = c.at("n_classes").get<std::size_t>();
    model.config.seed = c.at("seed").get<std::uint64_t>();
    model.schema_id = j.at("schema_id").get<std::string>();
    model.num_features = j.at("num_features").get<std::size_t>();
    model.base_scores = j.at("base_scores").get<std::vector<double>>();
    model.degenerate_labels = j.at("degenerate_labels").get<bool>();
    model.history_loss = j.at("history_loss").get<std::vector<double>>();
    for (const auto& rj : j.at("rounds")) {
        std::vector<GbdtTree> round;
        for (const auto& tj : rj) round.push_back(tree_from_json(tj));
        model.rounds.push_back(std::move(round));
    }
    return model;
}

}  // namespace portfolio
