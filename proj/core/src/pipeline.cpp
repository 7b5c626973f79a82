#include "portfolio/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace portfolio {

std::string tool_version() { return "0.1.0"; }

namespace {

namespace fs = std::filesystem;

constexpr const char* kConfigFile = "config.json";
constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kTrainFile = "train.jsonl";
constexpr const char* kTestFile = "test.jsonl";
constexpr const char* kSkipFile = "skipped.txt";

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void update_manifest(const ExperimentConfig& cfg, const std::vector<std::string>& rel_paths) {
    const fs::path mpath = cfg.out_dir / kManifestFile;
    Manifest m;
    if (fs::exists(mpath)) {
        m = read_manifest(mpath);
    } else {
        m.tool_version = tool_version();
        m.created_utc = utc_now();
        m.config_hash = config_tag(cfg);
    }
    for (const std::string& rel : rel_paths) {
        const std::string h = hash_hex(read_text_file(cfg.out_dir / rel));
        bool found = false;
        for (auto& [p, existing] : m.artifacts)
            if (p == rel) {
                existing = h;
                found = true;
            }
        if (!found) m.artifacts.emplace_back(rel, h);
    }
    write_manifest(mpath, m);
}

void ensure_config_on_disk(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    const fs::path cpath = cfg.out_dir / kConfigFile;
    const std::string body = config_to_json(cfg);
    if (fs::exists(cpath)) {
        if (read_text_file(cpath) != body)
            throw Error("config mismatch: " + cpath.string() +
                        " was written by a different configuration; use a fresh --out dir");
    } else {
        write_text_file(cpath, body);
    }
    update_manifest(cfg, {kConfigFile});
}

// Minimal fixed-size worker pool; ranges are assigned statically so results
// never depend on scheduling.
void parallel_for(std::size_t total, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers <= 1 || total <= 1) {
        fn(0, total);
        return;
    }
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back(fn, lo, hi);
    }
    for (auto& t : threads) t.join();
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& salt) {
    return seed ^ fnv1a64(salt);
}

std::size_t parse_index_suffix(const std::string& id) {
    const auto pos = id.rfind("-i");
    return static_cast<std::size_t>(std::stoull(id.substr(pos + 2)));
}

// ---------------------------------------------------------------- generation

WeightedGraph generate_graph(const ExperimentConfig& cfg, std::size_t index) {
    Rng rng = Rng::child(cfg.seed, index);
    const auto family = static_cast<GraphFamily>(index % 4);
    const auto n = static_cast<std::size_t>(rng.uniform_int(
        static_cast<std::int64_t>(cfg.graph.n_min), static_cast<std::int64_t>(cfg.graph.n_max)));

    WeightedGraph g;
    GraphGenMeta meta;
    meta.family = family;
    meta.seed = cfg.seed;
    meta.index = index;
    switch (family) {
        case GraphFamily::ER: {
            const double lo = std::log(static_cast<double>(n)) / static_cast<double>(n);
            meta.param_a = rng.uniform(lo, 1.0);
            g = gen_er(n, meta.param_a, rng);
            break;
        }
        case GraphFamily::BA: {
            const auto hi = static_cast<std::int64_t>(n) - 1;
            meta.param_a = static_cast<double>(rng.uniform_int(5, hi));
            g = gen_ba(n, static_cast<std::size_t>(meta.param_a), rng);
            break;
        }
        case GraphFamily::WS: {
            meta.param_a = rng.uniform(std::log(static_cast<double>(n)),
                                       static_cast<double>(n - 1));
            meta.param_b = rng.uniform(0.0, 1.0);
            g = gen_ws(n, meta.param_a, meta.param_b, rng);
            break;
        }
        case GraphFamily::Geometric: {
            meta.param_a = rng.uniform(20.0 / static_cast<double>(n), 1.0);
            g = gen_geometric(n, meta.param_a, rng);
            break;
        }
    }
    g.gen_meta = meta;
    g.id = "g-s" + std::to_string(cfg.seed) + "-i" + std::to_string(index);
    return g;
}

void generate_simplex_dataset(const ExperimentConfig& cfg) {
    const fs::path train_path = cfg.out_dir / kTrainFile;
    const fs::path test_path = cfg.out_dir / kTestFile;
    const fs::path skip_path = cfg.out_dir / kSkipFile;

    std::set<std::string> done = existing_instance_ids(train_path);
    const std::set<std::string> test_done = existing_instance_ids(test_path);
    done.insert(test_done.begin(), test_done.end());
    std::set<std::string> skipped;
    if (fs::exists(skip_path)) {
        std::istringstream in(read_text_file(skip_path));
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) skipped.insert(line);
    }

    std::size_t train_have = existing_instance_ids(train_path).size();
    std::size_t test_have = test_done.size();
    std::size_t next_index = 0;
    for (const auto& id : done) next_index = std::max(next_index, parse_index_suffix(id) + 1);
    for (const auto& id : skipped) next_index = std::max(next_index, parse_index_suffix(id) + 1);

    LpGenConfig gen = cfg.lp;
    gen.seed = cfg.seed;
    const std::size_t total = cfg.train_count + cfg.test_count;
    const std::size_t workers = cfg.parallel_generation ? effective_workers(cfg) : 1;

    while (train_have + test_have < total) {
        const std::size_t batch = std::max<std::size_t>(workers * 8, 16);
        std::vector<std::optional<LpDatasetEntry>> results(batch);
        parallel_for(batch, workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t b = lo; b < hi; ++b) {
                LpInstance lp = generate_lp(gen, next_index + b);
                SolveRecord rec = run_portfolio(lp);
                const bool ok = std::all_of(rec.statuses.begin(), rec.statuses.end(),
                                            [](SolveStatus s) { return s == SolveStatus::Optimal; });
                if (ok) results[b] = LpDatasetEntry{std::move(lp), std::move(rec)};
            }
        });
        std::vector<LpDatasetEntry> to_train, to_test;
        std::vector<std::string> new_skips;
        for (std::size_t b = 0; b < batch && train_have + test_have < total; ++b) {
            const std::string id =
                "lp-s" + std::to_string(cfg.seed) + "-i" + std::to_string(next_index + b);
            if (done.count(id) || skipped.count(id)) continue;
            if (!results[b]) {
                new_skips.push_back(id);
                std::cerr << "[generate] skipped unsolved instance " << id << "\n";
                continue;
            }
            if (train_have < cfg.train_count) {
                to_train.push_back(std::move(*results[b]));
                ++train_have;
            } else {
                to_test.push_back(std::move(*results[b]));
                ++test_have;
            }
        }
        next_index += batch;
        if (!to_train.empty()) append_lp_entries(train_path, to_train);
        if (!to_test.empty()) append_lp_entries(test_path, to_test);
        if (!new_skips.empty()) {
            std::string text = fs::exists(skip_path) ? read_text_file(skip_path) : "";
            for (const std::string& id : new_skips) text += id + "\n";
            write_text_file(skip_path, text);
        }
        std::cerr << "[generate] simplex " << (train_have + test_have) << "/" << total << "\n";
    }
    update_manifest(cfg, {kTrainFile, kTestFile});
}

void generate_apsp_dataset(const ExperimentConfig& cfg) {
    const fs::path train_path = cfg.out_dir / kTrainFile;
    const fs::path test_path = cfg.out_dir / kTestFile;

    std::set<std::string> done = existing_instance_ids(train_path);
    const std::set<std::string> test_done = existing_instance_ids(test_path);
    done.insert(test_done.begin(), test_done.end());

    std::size_t train_have = existing_instance_ids(train_path).size();
    std::size_t test_have = test_done.size();
    const std::size_t total = cfg.train_count + cfg.test_count;

    // Timing labels: strictly serial, one algorithm at a time.
    std::size_t index = 0;
    while (train_have + test_have < total) {
        const std::string id = "g-s" + std::to_string(cfg.seed) + "-i" + std::to_string(index);
        if (done.count(id)) {
            ++index;
            continue;
        }
        WeightedGraph g = generate_graph(cfg, index);
        RunRecord rec = run_apsp_portfolio(g, cfg.graph.repeats);
        GraphDatasetEntry entry{std::move(g), std::move(rec)};
        if (train_have < cfg.train_count) {
            append_graph_entries(train_path, {entry});
            ++train_have;
        } else {
            append_graph_entries(test_path, {entry});
            ++test_have;
        }
        ++index;
        if ((train_have + test_have) % 25 == 0)
            std::cerr << "[generate] apsp " << (train_have + test_have) << "/" << total << "\n";
    }
    update_manifest(cfg, {kTrainFile, kTestFile});
}

// --------------------------------------------------------------- featurize

std::vector<std::string> lp_label_names() {
    std::vector<std::string> names = {"best"};
    for (PivotRuleKind rule : kAllPivotRules)
        names.push_back(std::string("iters_") + pivot_rule_name(rule));
    return names;
}

std::vector<std::string> graph_label_names() {
    std::vector<std::string> names = {"best"};
    for (ApspAlgo a : kAllApspAlgos) names.push_back(std::string("time_") + apsp_algo_name(a));
    return names;
}

FeatureVector features_for_lp(const LpInstance& lp, const std::string& schema_id) {
    if (schema_id == lp_bag_schema_id()) return lp_bag_of_features(lp);
    if (schema_id.rfind("lp_svd_k", 0) == 0) {
        const std::size_t k = std::stoul(schema_id.substr(8));
        return lp_svd_features(lp, k);
    }
    throw SchemaUnknownError("schema " + schema_id + " is not an LP schema");
}

FeatureVector features_for_graph(const WeightedGraph& g, const std::string& schema_id) {
    if (schema_id.rfind("graph_svd_k", 0) == 0) {
        const std::size_t k = std::stoul(schema_id.substr(11));
        return graph_svd_features(g, k);
    }
    if (schema_id.rfind("graph_deg_q", 0) == 0) {
        const std::size_t q = std::stoul(schema_id.substr(11));
        return degree_sequence_features(g, q);
    }
    throw SchemaUnknownError("schema " + schema_id + " is not a graph schema");
}

fs::path feature_csv_path(const ExperimentConfig& cfg, const std::string& schema_id,
                          const char* split) {
    return cfg.out_dir / "features" / (schema_id + "." + split + ".csv");
}

void featurize_split(const ExperimentConfig& cfg, const std::string& schema_id,
                     const char* split) {
    FeatureTable table;
    table.schema_id = schema_id;
    table.dataset_tag = config_tag(cfg);
    const fs::path data_path = cfg.out_dir / (std::string(split) + ".jsonl");
    const std::size_t workers = effective_workers(cfg);

    if (cfg.case_study == CaseStudy::Simplex) {
        const auto entries = read_lp_dataset(data_path);
        table.label_names = lp_label_names();
        table.features = Matrix(entries.size(), feature_schema(schema_id).size());
        table.labels = Matrix(entries.size(), table.label_names.size());
        table.ids.resize(entries.size());
        parallel_for(entries.size(), workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const FeatureVector fv = features_for_lp(entries[i].instance, schema_id);
                std::copy(fv.values.begin(), fv.values.end(), table.features.row(i));
                table.ids[i] = entries[i].instance.id;
                table.labels(i, 0) = static_cast<double>(entries[i].record.best_rule);
                for (std::size_t a = 0; a < 5; ++a)
                    table.labels(i, 1 + a) = static_cast<double>(entries[i].record.iterations[a]);
            }
        });
    } else {
        const auto entries = read_graph_dataset(data_path);
        table.label_names = graph_label_names();
        table.features = Matrix(entries.size(), feature_schema(schema_id).size());
        table.labels = Matrix(entries.size(), table.label_names.size());
        table.ids.resize(entries.size());
        parallel_for(entries.size(), workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const FeatureVector fv = features_for_graph(entries[i].graph, schema_id);
                std::copy(fv.values.begin(), fv.values.end(), table.features.row(i));
                table.ids[i] = entries[i].graph.id;
                table.labels(i, 0) = static_cast<double>(entries[i].record.best);
                for (std::size_t a = 0; a < 3; ++a)
                    table.labels(i, 1 + a) = entries[i].record.times_s[a];
            }
        });
    }
    write_feature_csv(feature_csv_path(cfg, schema_id, split), table);
}

// ------------------------------------------------------------------- train

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
};

SplitIndices validation_split(std::size_t n, double fraction, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng = Rng::child(mix_seed(seed, "validation-split"), 0);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(order[i - 1], order[j]);
    }
    SplitIndices split;
    const auto val_count = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(n)));
    split.val.assign(order.begin(), order.begin() + val_count);
    split.train.assign(order.begin() + val_count, order.end());
    return split;
}

Matrix take_rows(const Matrix& src, const std::vector<std::size_t>& rows) {
    Matrix out(rows.size(), src.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(src.row(rows[i]), src.row(rows[i]) + src.cols(), out.row(i));
    return out;
}

std::size_t label_column(const FeatureTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.label_names.size(); ++i)
        if (table.label_names[i] == name) return i;
    throw MissingRecordError("label column not found: " + name);
}

fs::path model_path(const ExperimentConfig& cfg, const std::string& preset_name) {
    return cfg.out_dir / "models" / (preset_name + ".json");
}

// Serialized trained preset: learner JSON wrapped with provenance.
std::string train_preset(const ExperimentConfig& cfg, const Preset& preset,
                         const FeatureTable& table, std::uint64_t seed_salt) {
    if (table.schema_id != preset.schema_id)
        throw SchemaMismatchError("preset " + preset.name + " expects " + preset.schema_id +
                                  " but features are " + table.schema_id);
    if (table.dataset_tag != config_tag(cfg))
        throw Error("stale features: dataset tag mismatch for " + preset.name);

    const SplitIndices split =
        validation_split(table.ids.size(), cfg.validation_fraction, cfg.seed);
    const Matrix x = take_rows(table.features, split.train);
    const Matrix xv = take_rows(table.features, split.val);

    const std::size_t best_col = label_column(table, "best");
    const std::uint64_t model_seed = mix_seed(cfg.seed, preset.name) ^ seed_salt;

    nlohmann::json wrapper;
    wrapper["preset"] = preset.name;
    wrapper["dataset_tag"] = table.dataset_tag;
    wrapper["schema_id"] = preset.schema_id;
    wrapper["tool_version"] = tool_version();

    if (preset.model_kind == PresetModelKind::Gbdt) {
        Vector y(split.train.size());
        if (preset.role == PresetRole::CostRegressor) {
            const std::size_t col = 1 + *preset.target_algo;
            for (std::size_t i = 0; i < split.train.size(); ++i)
                y[i] = table.labels(split.train[i], col);
        } else {
            for (std::size_t i = 0; i < split.train.size(); ++i)
                y[i] = table.labels(split.train[i], best_col);
        }
        GbdtConfig gc = preset.gbdt;
        gc.seed = model_seed;
        const GbdtModel model = gbdt_train(gc, x, y, preset.schema_id);
        wrapper["model"] = nlohmann::json::parse(gbdt_to_json(model));
    } else {
        MlpConfig mc = preset.mlp;
        mc.seed = model_seed;
        Matrix y, yv;
        if (preset.role == PresetRole::CostRegressor) {
            const std::size_t col = 1 + *preset.target_algo;
            y = Matrix(split.train.size(), 1);
            for (std::size_t i = 0; i < split.train.size(); ++i)
                y(i, 0) = table.labels(split.train[i], col);
            yv = Matrix(split.val.size(), 1);
            for (std::size_t i = 0; i < split.val.size(); ++i)
                yv(i, 0) = table.labels(split.val[i], col);
        } else {
            const std::size_t classes = mc.layers.back().units;
            Vector ids(split.train.size());
            for (std::size_t i = 0; i < split.train.size(); ++i)
                ids[i] = table.labels(split.train[i], best_col);
            y = one_hot(ids, classes);
            Vector vids(split.val.size());
            for (std::size_t i = 0; i < split.val.size(); ++i)
                vids[i] = table.labels(split.val[i], best_col);
            yv = one_hot(vids, classes);
        }
        const MlpModel model =
            mlp_train(mc, x, y, preset.schema_id, split.val.empty() ? nullptr : &xv,
                      split.val.empty() ? nullptr : &yv);
        wrapper["model"] = nlohmann::json::parse(mlp_to_json(model));
    }
    return wrapper.dump();
}

// In-memory trained model handle used by evaluation.
struct LoadedModel {
    PresetModelKind kind;
    GbdtModel gbdt;
    MlpModel mlp;
    std::string schema_id;
    std::string dataset_tag;

    Vector predict_row(const Vector& row) const {
        if (kind == PresetModelKind::Gbdt) return gbdt_predict_row(gbdt, row);
        return mlp_predict_row(mlp, row);
    }
};

LoadedModel parse_model_wrapper(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    LoadedModel lm;
    lm.schema_id = j.at("schema_id").get<std::string>();
    lm.dataset_tag = j.at("dataset_tag").get<std::string>();
    const std::string type = j.at("model").at("type").get<std::string>();
    if (type == "gbdt") {
        lm.kind = PresetModelKind::Gbdt;
        lm.gbdt = gbdt_from_json(j.at("model").dump());
    } else {
        lm.kind = PresetModelKind::Mlp;
        lm.mlp = mlp_from_json(j.at("model").dump());
    }
    return lm;
}

LoadedModel load_model(const ExperimentConfig& cfg, const std::string& preset_name) {
    const fs::path p = model_path(cfg, preset_name);
    if (!fs::exists(p)) throw MissingModelError("model not trained: " + preset_name);
    return parse_model_wrapper(read_text_file(p));
}

// ---------------------------------------------------------------- evaluate

struct TestData {
    std::vector<EvalInstance> instances;
    std::map<std::string, std::vector<FeatureVector>> features;  // by schema
};

TestData load_test_data(const ExperimentConfig& cfg) {
    TestData td;
    if (cfg.case_study == CaseStudy::Simplex) {
        for (const auto& e : read_lp_dataset(cfg.out_dir / kTestFile)) {
            EvalInstance inst;
            inst.id = e.instance.id;
            inst.costs.assign(e.record.iterations.begin(), e.record.iterations.end());
            td.instances.push_back(std::move(inst));
        }
    } else {
        for (const auto& e : read_graph_dataset(cfg.out_dir / kTestFile)) {
            EvalInstance inst;
            inst.id = e.graph.id;
            inst.costs.assign(e.record.times_s.begin(), e.record.times_s.end());
            inst.density = density(e.graph);
            td.instances.push_back(std::move(inst));
        }
    }
    for (const std::string& schema : schemas_for(cfg.case_study)) {
        const FeatureTable table = read_feature_csv(feature_csv_path(cfg, schema, "test"));
        if (table.dataset_tag != config_tag(cfg))
            throw Error("stale features for schema " + schema + ": dataset tag mismatch");
        if (table.ids.size() != td.instances.size())
            throw MissingRecordError("feature/test size mismatch for schema " + schema);
        std::vector<FeatureVector> fvs(table.ids.size());
        for (std::size_t i = 0; i < table.ids.size(); ++i) {
            if (table.ids[i] != td.instances[i].id)
                throw MissingRecordError("feature id order mismatch at row " + std::to_string(i));
            fvs[i].schema_id = schema;
            fvs[i].values.assign(table.features.row(i),
                                 table.features.row(i) + table.features.cols());
        }
        td.features.emplace(schema, std::move(fvs));
    }
    return td;
}

SelectionPolicy policy_from_models(const std::string& name, const Preset& preset,
                                   std::vector<LoadedModel> models) {
    SelectionPolicy policy;
    policy.name = name;
    auto shared = std::make_shared<std::vector<LoadedModel>>(std::move(models));
    if (preset.role == PresetRole::DirectClassifier) {
        policy.kind = PolicyKind::DirectClassifier;
        policy.class_probs = [shared, schema = preset.schema_id](const FeatureVector& fv) {
            if (fv.schema_id != schema)
                throw SchemaMismatchError("classifier expects schema " + schema);
            return shared->front().predict_row(fv.values);
        };
    } else {
        policy.kind = PolicyKind::RuntimeRegressors;
        for (std::size_t a = 0; a < shared->size(); ++a)
            policy.cost_predictors.push_back(
                [shared, a, schema = preset.schema_id](const FeatureVector& fv) {
                    if (fv.schema_id != schema)
                        throw SchemaMismatchError("regressor expects schema " + schema);
                    return (*shared)[a].predict_row(fv.values)[0];
                });
    }
    return policy;
}

struct NamedPolicy {
    SelectionPolicy policy;
    std::string schema_id;  // empty when no features needed
    bool trained = false;
};

std::vector<NamedPolicy> fixed_policies(CaseStudy cs) {
    std::vector<NamedPolicy> out;
    if (cs == CaseStudy::Simplex) {
        for (PivotRuleKind r : kAllPivotRules)
            out.push_back({SelectionPolicy::fixed(static_cast<std::size_t>(r),
                                                  pivot_rule_name(r)),
                           "", false});
    } else {
        for (ApspAlgo a : kAllApspAlgos)
            out.push_back({SelectionPolicy::fixed(static_cast<std::size_t>(a),
                                                  apsp_algo_name(a)),
                           "", false});
    }
    return out;
}

// Trained policies from on-disk models (bundles first, then classifiers).
std::vector<NamedPolicy> trained_policies(
    const ExperimentConfig& cfg,
    const std::function<LoadedModel(const std::string&)>& loader) {
    std::vector<NamedPolicy> out;
    for (const PolicyBundle& bundle : regressor_bundles(cfg.case_study)) {
        std::vector<LoadedModel> models;
        for (const std::string& name : bundle.preset_names) models.push_back(loader(name));
        const Preset& first = preset_by_name(bundle.preset_names.front());
        out.push_back({policy_from_models(bundle.policy_name, first, std::move(models)),
                       first.schema_id, true});
    }
    for (const Preset& preset : presets_for(cfg.case_study)) {
        if (preset.role != PresetRole::DirectClassifier) continue;
        std::vector<LoadedModel> one;
        one.push_back(loader(preset.name));
        out.push_back({policy_from_models(preset.name, preset, std::move(one)),
                       preset.schema_id, true});
    }
    return out;
}

PolicyReport run_policy(const NamedPolicy& np, const TestData& td) {
    static const std::vector<FeatureVector> kNone;
    const std::vector<FeatureVector>& fvs =
        np.schema_id.empty() ? kNone : td.features.at(np.schema_id);
    return evaluate(np.policy, fvs, td.instances);
}

Vector charged_costs(const PolicyReport& rep, const std::vector<EvalInstance>& instances) {
    Vector out(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i)
        out[i] = instances[i].costs[rep.choices[i]];
    return out;
}

std::string format_eval_text(const ExperimentConfig& cfg, const EvaluationOutcome& out) {
    std::ostringstream os;
    const bool simplex = cfg.case_study == CaseStudy::Simplex;
    os << "case study: " << case_study_name(cfg.case_study) << "   scale: " << cfg.scale
       << "   seed: " << cfg.seed << "   test instances: "
       << out.oracle.choices.size() << "\n\n";

    std::vector<const PolicyEvaluation*> rows;
    for (const auto& p : out.policies) rows.push_back(&p);
    std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
        return a->report.mean_cost > b->report.mean_cost;
    });

    const char* cost_head = simplex ? "mean iterations" : "total seconds";
    os << std::left;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-24s %16s %12s\n", "policy", cost_head, "accuracy");
    os << buf << std::string(54, '-') << "\n";
    for (const auto* p : rows) {
        const double cost = simplex ? p->report.mean_cost : p->report.total_cost;
        std::snprintf(buf, sizeof(buf), "%-24s %16.4f %11.2f%%\n", p->report.name.c_str(), cost,
                      100.0 * p->report.accuracy);
        os << buf;
    }
    const double oracle_cost = simplex ? out.oracle.mean_cost : out.oracle.total_cost;
    std::snprintf(buf, sizeof(buf), "%-24s %16.4f %11.2f%%\n", out.oracle.name.c_str(),
                  oracle_cost, 100.0);
    os << buf;

    if (simplex) {
        os << "\nper-instance comparison vs steepest edge\n";
        std::snprintf(buf, sizeof(buf), "%-24s %10s %10s %14s\n", "policy", "best", "worst",
                      "wilcoxon p");
        os << buf << std::string(62, '-') << "\n";
        for (const auto& p : out.policies) {
            if (!p.trained) continue;
            std::snprintf(buf, sizeof(buf), "%-24s %9.2f%% %9.2f%% %14.6g\n",
                          p.report.name.c_str(), 100.0 * p.ratios.best, 100.0 * p.ratios.worst,
                          p.vs_reference ? p.vs_reference->p_value : 1.0);
            os << buf;
        }
    }

    if (!out.matrix_policies.empty()) {
        auto print_matrix = [&](const char* title, const Matrix& m) {
            os << "\n" << title << " (wilcoxon p over " << cfg.repetitions
               << " retraining repetitions)\n";
            os << std::setw(18) << "";
            for (const auto& name : out.matrix_policies) os << std::setw(18) << name;
            os << "\n";
            for (std::size_t i = 0; i < out.matrix_policies.size(); ++i) {
                os << std::setw(18) << out.matrix_policies[i];
                for (std::size_t j = 0; j < out.matrix_policies.size(); ++j) {
                    if (i == j)
                        os << std::setw(18) << "-";
                    else {
                        std::snprintf(buf, sizeof(buf), "%.6g", m(i, j));
                        os << std::setw(18) << buf;
                    }
                }
                os << "\n";
            }
        };
        print_matrix("accuracy comparison", out.accuracy_pvalues);
        print_matrix("total-cost comparison", out.cost_pvalues);
    }
    return os.str();
}

nlohmann::json eval_to_json(const ExperimentConfig& cfg, const EvaluationOutcome& out) {
    nlohmann::json j;
    j["case_study"] = case_study_name(cfg.case_study);
    j["scale"] = cfg.scale;
    j["seed"] = cfg.seed;
    nlohmann::json policies = nlohmann::json::array();
    for (const auto& p : out.policies) {
        nlohmann::json pj;
        pj["name"] = p.report.name;
        pj["trained"] = p.trained;
        pj["accuracy"] = p.report.accuracy;
        pj["mean_cost"] = p.report.mean_cost;
        pj["total_cost"] = p.report.total_cost;
        pj["best_ratio"] = p.ratios.best;
        pj["worst_ratio"] = p.ratios.worst;
        if (p.vs_reference) {
            pj["wilcoxon_vs_reference"] = {{"w", p.vs_reference->w},
                                           {"n_effective", p.vs_reference->n_effective},
                                           {"p_value", p.vs_reference->p_value}};
        }
        policies.push_back(std::move(pj));
    }
    j["policies"] = std::move(policies);
    j["oracle"] = {{"name", out.oracle.name},
                   {"mean_cost", out.oracle.mean_cost},
                   {"total_cost", out.oracle.total_cost}};
    if (!out.matrix_policies.empty()) {
        j["matrix_policies"] = out.matrix_policies;
        j["accuracy_pvalues"] = out.accuracy_pvalues.data();
        j["cost_pvalues"] = out.cost_pvalues.data();
    }
    return j;
}

void write_per_instance_csv(const ExperimentConfig& cfg, const TestData& td,
                            const PolicyEvaluation& policy) {
    std::ostringstream csv;
    csv << "instance_id,true_best,chosen,cost_chosen,cost_best,density,n\n";
    // n recovered from 1/n is only available for graphs; emit 0 for LPs.
    for (std::size_t i = 0; i < td.instances.size(); ++i) {
        const EvalInstance& inst = td.instances[i];
        const std::size_t best = true_best(inst);
        const std::size_t chosen = policy.report.choices[i];
        csv << inst.id << ',' << best << ',' << chosen << ','
            << double_to_string(inst.costs[chosen]) << ','
            << double_to_string(inst.costs[best]) << ',' << double_to_string(inst.density)
            << ",0\n";
    }
    write_text_file(cfg.out_dir / "reports" /
                        ("per_instance-" + policy.report.name + ".csv"),
                    csv.str());
}

}  // namespace

// ------------------------------------------------------------ configuration

ExperimentConfig default_config(CaseStudy cs, const std::string& scale) {
    ExperimentConfig cfg;
    cfg.case_study = cs;
    cfg.scale = scale;
    if (cs == CaseStudy::Simplex) {
        if (scale == "smoke") {
            cfg.lp.m_min = 15; cfg.lp.m_max = 30;
            cfg.lp.n_min = 10; cfg.lp.n_max = 20;
            cfg.train_count = 60;
            cfg.test_count = 20;
            cfg.repetitions = 0;
        } else if (scale == "desk") {
            cfg.lp.m_min = 40; cfg.lp.m_max = 120;
            cfg.lp.n_min = 20; cfg.lp.n_max = 60;
            cfg.train_count = 2000;
            cfg.test_count = 500;
            cfg.repetitions = 3;
        } else if (scale == "paper") {
            cfg.lp.m_min = 120; cfg.lp.m_max = 200;
            cfg.lp.n_min = 50; cfg.lp.n_max = 100;
            cfg.train_count = 24634;
            cfg.test_count = 7279;
            cfg.repetitions = 30;
        } else {
            throw InvalidParamError("unknown scale: " + scale);
        }
    } else {
        if (scale == "smoke") {
            cfg.graph = {20, 60, 1};
            cfg.train_count = 48;
            cfg.test_count = 16;
            cfg.repetitions = 0;
        } else if (scale == "desk") {
            cfg.graph = {20, 300, 3};
            cfg.train_count = 600;
            cfg.test_count = 200;
            cfg.repetitions = 3;
        } else if (scale == "paper") {
            cfg.graph = {20, 1250, 5};
            cfg.train_count = 2309;
            cfg.test_count = 1125;
            cfg.repetitions = 30;
        } else {
            throw InvalidParamError("unknown scale: " + scale);
        }
    }
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["case_study"] = case_study_name(cfg.case_study);
    j["scale"] = cfg.scale;
    j["seed"] = cfg.seed;
    j["train_count"] = cfg.train_count;
    j["test_count"] = cfg.test_count;
    j["validation_fraction"] = cfg.validation_fraction;
    j["lp"] = {{"m_min", cfg.lp.m_min},       {"m_max", cfg.lp.m_max},
               {"n_min", cfg.lp.n_min},       {"n_max", cfg.lp.n_max},
               {"p_min", cfg.lp.p_min},       {"p_max", cfg.lp.p_max},
               {"sigma_min", cfg.lp.sigma_min}, {"sigma_max", cfg.lp.sigma_max},
               {"gamma_min", cfg.lp.gamma_min}, {"gamma_max", cfg.lp.gamma_max},
               {"beta_fraction", cfg.lp.beta_fraction}};
    j["graph"] = {{"n_min", cfg.graph.n_min},
                  {"n_max", cfg.graph.n_max},
                  {"repeats", cfg.graph.repeats}};
    j["repetitions"] = cfg.repetitions;
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    cfg.case_study = case_study_from_name(j.at("case_study").get<std::string>());
    cfg.scale = j.at("scale").get<std::string>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.train_count = j.at("train_count").get<std::size_t>();
    cfg.test_count = j.at("test_count").get<std::size_t>();
    cfg.validation_fraction = j.at("validation_fraction").get<double>();
    const auto& lp = j.at("lp");
    cfg.lp.m_min = lp.at("m_min").get<std::size_t>();
    cfg.lp.m_max = lp.at("m_max").get<std::size_t>();
    cfg.lp.n_min = lp.at("n_min").get<std::size_t>();
    cfg.lp.n_max = lp.at("n_max").get<std::size_t>();
    cfg.lp.p_min = lp.at("p_min").get<double>();
    cfg.lp.p_max = lp.at("p_max").get<double>();
    cfg.lp.sigma_min = lp.at("sigma_min").get<double>();
    cfg.lp.sigma_max = lp.at("sigma_max").get<double>();
    cfg.lp.gamma_min = lp.at("gamma_min").get<double>();
    cfg.lp.gamma_max = lp.at("gamma_max").get<double>();
    cfg.lp.beta_fraction = lp.at("beta_fraction").get<double>();
    const auto& g = j.at("graph");
    cfg.graph.n_min = g.at("n_min").get<std::size_t>();
    cfg.graph.n_max = g.at("n_max").get<std::size_t>();
    cfg.graph.repeats = g.at("repeats").get<std::size_t>();
    cfg.repetitions = j.at("repetitions").get<std::size_t>();
    return cfg;
}

std::string config_tag(const ExperimentConfig& cfg) { return hash_hex(config_to_json(cfg)); }

std::size_t effective_workers(const ExperimentConfig& cfg) {
    if (const char* env = std::getenv("PORTFOLIO_SELECT_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    if (cfg.workers > 0) return cfg.workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<std::string> schemas_for(CaseStudy cs) {
    std::vector<std::string> out;
    for (const Preset& p : presets_for(cs))
        if (std::find(out.begin(), out.end(), p.schema_id) == out.end())
            out.push_back(p.schema_id);
    return out;
}

// ------------------------------------------------------------------ stages

void cmd_generate(const ExperimentConfig& cfg) {
    ensure_config_on_disk(cfg);
    if (cfg.case_study == CaseStudy::Simplex)
        generate_simplex_dataset(cfg);
    else
        generate_apsp_dataset(cfg);
}

void cmd_featurize(const ExperimentConfig& cfg, const std::string& schema_id) {
    ensure_config_on_disk(cfg);
    featurize_split(cfg, schema_id, "train");
    featurize_split(cfg, schema_id, "test");
    update_manifest(cfg, {"features/" + schema_id + ".train.csv",
                          "features/" + schema_id + ".test.csv"});
}

void cmd_train(const ExperimentConfig& cfg, const std::string& preset_name) {
    ensure_config_on_disk(cfg);
    const Preset& preset = preset_by_name(preset_name);
    if (preset.case_study != cfg.case_study)
        throw InvalidParamError("preset " + preset_name + " belongs to the other case study");
    const FeatureTable table =
        read_feature_csv(feature_csv_path(cfg, preset.schema_id, "train"));
    const std::string wrapper = train_preset(cfg, preset, table, 0);

    write_text_file(model_path(cfg, preset_name), wrapper);
    const nlohmann::json j = nlohmann::json::parse(wrapper);
    nlohmann::json history;
    if (j.at("model").contains("history"))
        history = j.at("model").at("history");
    else
        history = {{"train_loss", j.at("model").at("history_loss")}};
    write_text_file(cfg.out_dir / "models" / (preset_name + ".history.json"),
                    history.dump(2) + "\n");
    update_manifest(cfg, {"models/" + preset_name + ".json",
                          "models/" + preset_name + ".history.json"});
}

const PolicyEvaluation* EvaluationOutcome::best_trained() const {
    const PolicyEvaluation* best = nullptr;
    for (const auto& p : policies)
        if (p.trained && (!best || p.report.total_cost < best->report.total_cost)) best = &p;
    return best;
}

const PolicyEvaluation* EvaluationOutcome::best_fixed() const {
    const PolicyEvaluation* best = nullptr;
    for (const auto& p : policies)
        if (!p.trained && p.report.name != "density-heuristic" &&
            (!best || p.report.total_cost < best->report.total_cost))
            best = &p;
    return best;
}

const PolicyEvaluation* EvaluationOutcome::find(const std::string& name) const {
    for (const auto& p : policies)
        if (p.report.name == name) return &p;
    return nullptr;
}

EvaluationOutcome cmd_evaluate(const ExperimentConfig& cfg) {
    ensure_config_on_disk(cfg);
    const TestData td = load_test_data(cfg);

    EvaluationOutcome out;
    out.case_study = cfg.case_study;

    std::map<std::string, LoadedModel> cache;
    auto loader = [&](const std::string& name) -> LoadedModel {
        auto it = cache.find(name);
        if (it == cache.end()) {
            LoadedModel lm = load_model(cfg, name);
            if (lm.dataset_tag != config_tag(cfg))
                throw Error("stale model " + name + ": dataset tag mismatch");
            it = cache.emplace(name, std::move(lm)).first;
        }
        return it->second;
    };

    std::vector<NamedPolicy> policies = fixed_policies(cfg.case_study);
    for (NamedPolicy& np : trained_policies(cfg, loader)) policies.push_back(std::move(np));
    if (cfg.case_study == CaseStudy::Apsp) {
        SelectionPolicy heuristic = SelectionPolicy::density_heuristic(0.5);
        heuristic.below_algo = static_cast<std::size_t>(ApspAlgo::Peng);
        heuristic.above_algo = static_cast<std::size_t>(ApspAlgo::FloydWarshall);
        policies.push_back({std::move(heuristic), "", false});
    }

    const std::string reference_name =
        cfg.case_study == CaseStudy::Simplex ? pivot_rule_name(PivotRuleKind::SteepestEdge)
                                             : apsp_algo_name(ApspAlgo::FloydWarshall);
    PolicyReport reference;
    for (const NamedPolicy& np : policies) {
        PolicyEvaluation pe;
        pe.report = run_policy(np, td);
        pe.trained = np.trained;
        out.policies.push_back(std::move(pe));
        if (out.policies.back().report.name == reference_name)
            reference = out.policies.back().report;
    }
    out.oracle = oracle_report(td.instances);

    const Vector ref_costs = charged_costs(reference, td.instances);
    for (PolicyEvaluation& pe : out.policies) {
        pe.ratios = best_worst_ratios(pe.report, reference, td.instances);
        if (pe.trained && cfg.case_study == CaseStudy::Simplex) {
            const Vector costs = charged_costs(pe.report, td.instances);
            pe.vs_reference = wilcoxon_signed_rank(costs, ref_costs);
        }
    }

    // Tables 5/6 analogue: pairwise Wilcoxon over per-repetition metrics.
    if (cfg.case_study == CaseStudy::Apsp && cfg.repetitions >= 2) {
        const std::vector<std::string> matrix_names = {
            "apsp-svd-nn", "apsp-deg-nn", "apsp-runtime-nn", "apsp-svd-tree", "apsp-deg-tree"};
        std::map<std::string, FeatureTable> train_tables;
        for (const std::string& schema : schemas_for(cfg.case_study))
            train_tables.emplace(schema,
                                 read_feature_csv(feature_csv_path(cfg, schema, "train")));

        Matrix acc(matrix_names.size(), cfg.repetitions);
        Matrix cost(matrix_names.size(), cfg.repetitions);
        for (std::size_t r = 0; r < cfg.repetitions; ++r) {
            std::cerr << "[evaluate] repetition " << (r + 1) << "/" << cfg.repetitions << "\n";
            const std::uint64_t salt = 0x9e3779b97f4a7c15ULL * (r + 1);
            std::map<std::string, LoadedModel> rep_models;
            auto rep_loader = [&](const std::string& name) -> LoadedModel {
                auto it = rep_models.find(name);
                if (it == rep_models.end()) {
                    const Preset& preset = preset_by_name(name);
                    const std::string wrapper =
                        train_preset(cfg, preset, train_tables.at(preset.schema_id), salt);
                    it = rep_models.emplace(name, parse_model_wrapper(wrapper)).first;
                }
                return it->second;
            };
            std::vector<NamedPolicy> rep_policies = trained_policies(cfg, rep_loader);
            for (std::size_t m = 0; m < matrix_names.size(); ++m) {
                for (const NamedPolicy& np : rep_policies) {
                    if (np.policy.name != matrix_names[m]) continue;
                    const PolicyReport rep = run_policy(np, td);
                    acc(m, r) = rep.accuracy;
                    cost(m, r) = rep.total_cost;
                }
            }
        }
        out.matrix_policies = matrix_names;
        out.accuracy_pvalues = Matrix(matrix_names.size(), matrix_names.size());
        out.cost_pvalues = Matrix(matrix_names.size(), matrix_names.size());
        for (std::size_t i = 0; i < matrix_names.size(); ++i)
            for (std::size_t j = 0; j < matrix_names.size(); ++j) {
                if (i == j) continue;
                const std::span<const double> ai(acc.row(i), cfg.repetitions);
                const std::span<const double> aj(acc.row(j), cfg.repetitions);
                const std::span<const double> ci(cost.row(i), cfg.repetitions);
                const std::span<const double> cj(cost.row(j), cfg.repetitions);
                out.accuracy_pvalues(i, j) = wilcoxon_signed_rank(ai, aj).p_value;
                out.cost_pvalues(i, j) = wilcoxon_signed_rank(ci, cj).p_value;
            }
    }

    write_text_file(cfg.out_dir / "reports" / "evaluation.txt", format_eval_text(cfg, out));
    write_text_file(cfg.out_dir / "reports" / "evaluation.json",
                    eval_to_json(cfg, out).dump(2) + "\n");
    if (const PolicyEvaluation* best = out.best_trained())
        write_per_instance_csv(cfg, td, *best);
    update_manifest(cfg, {"reports/evaluation.txt", "reports/evaluation.json"});
    return out;
}

void cmd_report(const ExperimentConfig& cfg) {
    ensure_config_on_disk(cfg);
    std::vector<std::string> artifacts;
    for (const Preset& preset : presets_for(cfg.case_study)) {
        if (preset.model_kind != PresetModelKind::Gbdt) continue;
        const fs::path p = model_path(cfg, preset.name);
        if (!fs::exists(p)) continue;
        const LoadedModel lm = parse_model_wrapper(read_text_file(p));
        const Vector gains = gbdt_feature_gain(lm.gbdt);
        const FeatureSchema& schema = feature_schema(preset.schema_id);

        std::vector<std::size_t> order(gains.size());
        for (std::size_t i = 0; i < gains.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

        std::ostringstream txt, csv;
        txt << "feature gains for " << preset.name << " (schema " << preset.schema_id << ")\n";
        csv << "feature,gain\n";
        for (std::size_t i = 0; i < order.size(); ++i) {
            csv << schema.names[order[i]] << ',' << double_to_string(gains[order[i]]) << '\n';
            if (i < 30 && gains[order[i]] > 0.0) {
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%-24s %.6g\n",
                              schema.names[order[i]].c_str(), gains[order[i]]);
                txt << buf;
            }
        }
        write_text_file(cfg.out_dir / "reports" / ("gains-" + preset.name + ".txt"), txt.str());
        write_text_file(cfg.out_dir / "reports" / ("gains-" + preset.name + ".csv"), csv.str());
        artifacts.push_back("reports/gains-" + preset.name + ".txt");
        artifacts.push_back("reports/gains-" + preset.name + ".csv");
    }
    if (!artifacts.empty()) update_manifest(cfg, artifacts);
}

bool ReproduceOutcome::all_hard_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AcceptanceCheck& c) { return c.passed || !c.hard; });
}

ReproduceOutcome cmd_reproduce(const ExperimentConfig& cfg) {
    std::cerr << "[reproduce] stage 1/5: generate\n";
    cmd_generate(cfg);
    std::cerr << "[reproduce] stage 2/5: featurize\n";
    for (const std::string& schema : schemas_for(cfg.case_study)) cmd_featurize(cfg, schema);
    std::cerr << "[reproduce] stage 3/5: train\n";
    for (const Preset& preset : presets_for(cfg.case_study)) {
        std::cerr << "[reproduce]   training " << preset.name << "\n";
        cmd_train(cfg, preset.name);
    }
    std::cerr << "[reproduce] stage 4/5: evaluate\n";
    ReproduceOutcome out{cmd_evaluate(cfg), {}};
    cmd_report(cfg);
    std::cerr << "[reproduce] stage 5/5: acceptance checks\n";

    const EvaluationOutcome& ev = out.evaluation;
    const PolicyEvaluation* best_trained = ev.best_trained();
    const PolicyEvaluation* best_fixed = ev.best_fixed();
    char detail[256];

    if (cfg.case_study == CaseStudy::Simplex) {
        {
            AcceptanceCheck c;
            c.name = "selection-beats-fixed-rule";
            const double trained_mean = best_trained->report.mean_cost;
            const double fixed_mean = best_fixed->report.mean_cost;
            const double gap = (trained_mean - ev.oracle.mean_cost) / ev.oracle.mean_cost;
            c.passed = trained_mean <= fixed_mean && gap <= 0.15;
            std::snprintf(detail, sizeof(detail),
                          "best trained %s mean %.4f vs best fixed %s mean %.4f, oracle %.4f "
                          "(gap %.2f%%, limit 15%%)",
                          best_trained->report.name.c_str(), trained_mean,
                          best_fixed->report.name.c_str(), fixed_mean, ev.oracle.mean_cost,
                          100.0 * gap);
            c.detail = detail;
            out.checks.push_back(c);
        }
        {
            AcceptanceCheck c;
            c.name = "steepest-edge-near-optimal";
            c.hard = false;
            const double se = ev.find(pivot_rule_name(PivotRuleKind::SteepestEdge))
                                  ->report.mean_cost;
            const double ratio = se / ev.oracle.mean_cost;
            c.passed = ratio <= 1.10;
            std::snprintf(detail, sizeof(detail),
                          "steepest-edge mean %.4f = %.4fx oracle (soft limit 1.10x)", se, ratio);
            c.detail = detail;
            out.checks.push_back(c);
        }
    } else {
        {
            AcceptanceCheck c;
            c.name = "selection-beats-fixed-choice";
            const double trained_total = best_trained->report.total_cost;
            const double fixed_total = best_fixed->report.total_cost;
            const double ratio = trained_total / ev.oracle.total_cost;
            c.passed = trained_total < fixed_total && ratio <= 1.05;
            std::snprintf(detail, sizeof(detail),
                          "best trained %s total %.3fs vs best fixed %s total %.3fs, oracle "
                          "%.3fs (%.4fx, limit 1.05x)",
                          best_trained->report.name.c_str(), trained_total,
                          best_fixed->report.name.c_str(), fixed_total, ev.oracle.total_cost,
                          ratio);
            c.detail = detail;
            out.checks.push_back(c);
        }
        {
            AcceptanceCheck c;
            c.name = "density-heuristic-gap";
            const PolicyEvaluation* heuristic = ev.find("density-heuristic");
            const double gap = best_trained->report.accuracy - heuristic->report.accuracy;
            c.passed = gap >= 0.05;
            std::snprintf(detail, sizeof(detail),
                          "best trained accuracy %.2f%% vs heuristic %.2f%% (gap %.2f pp, "
                          "needs >= 5 pp)",
                          100.0 * best_trained->report.accuracy,
                          100.0 * heuristic->report.accuracy, 100.0 * gap);
            c.detail = detail;
            out.checks.push_back(c);
        }
    }

    nlohmann::json aj = nlohmann::json::array();
    for (const AcceptanceCheck& c : out.checks) {
        std::cout << (c.passed ? "[PASS] " : (c.hard ? "[FAIL] " : "[WARN] ")) << c.name << ": "
                  << c.detail << "\n";
        aj.push_back({{"name", c.name}, {"hard", c.hard}, {"passed", c.passed},
                      {"detail", c.detail}});
    }
    write_text_file(cfg.out_dir / "reports" / "acceptance.json", aj.dump(2) + "\n");
    return out;
}

}  // namespace portfolio
