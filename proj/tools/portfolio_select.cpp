// Command-line front end: generate datasets, extract features, train the
// preset models, evaluate selection policies, and reproduce the full
// experiment pipelines end to end.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "portfolio/dataset.hpp"
#include "portfolio/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAcceptanceFailure = 2;

struct CommonArgs {
    std::string case_study = "simplex";
    std::string scale = "desk";
    std::string config_path;
    std::string out_dir = "runs/default";
    std::uint64_t seed = 1;
    std::size_t repetitions = static_cast<std::size_t>(-1);
    std::size_t workers = 0;
    bool parallel_generation = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_case = true) {
    if (with_case)
        cmd->add_option("--case", args.case_study, "case study: simplex or apsp")
            ->check(CLI::IsMember({"simplex", "apsp"}));
    cmd->add_option("--scale", args.scale, "experiment scale")
        ->check(CLI::IsMember({"smoke", "desk", "paper"}));
    cmd->add_option("--config", args.config_path, "configuration JSON path (overrides --scale)");
    cmd->add_option("--seed", args.seed, "master RNG seed");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--repetitions", args.repetitions,
                    "retraining repetitions behind the Wilcoxon matrices");
    cmd->add_option("--workers", args.workers, "worker threads (0 = auto)");
    cmd->add_flag("--parallel-generation", args.parallel_generation,
                  "parallelize untimed (simplex) dataset generation");
}

portfolio::ExperimentConfig build_config(const CommonArgs& args) {
    portfolio::ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        cfg = portfolio::config_from_json(portfolio::read_text_file(args.config_path));
    } else {
        cfg = portfolio::default_config(portfolio::case_study_from_name(args.case_study),
                                        args.scale);
        cfg.seed = args.seed;
    }
    cfg.out_dir = args.out_dir;
    cfg.workers = args.workers;
    cfg.parallel_generation = args.parallel_generation;
    if (args.repetitions != static_cast<std::size_t>(-1)) cfg.repetitions = args.repetitions;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algorithm-portfolio selection experiments (simplex pivot rules and "
                 "all-pairs shortest paths)"};
    app.require_subcommand(1);

    CommonArgs gen_args, feat_args, train_args, eval_args, report_args, repro_args;
    std::string schema_id, preset_name;

    CLI::App* gen = app.add_subcommand("generate", "generate instances and ground-truth records");
    add_common(gen, gen_args);

    CLI::App* feat = app.add_subcommand("featurize", "extract features into CSV tables");
    add_common(feat, feat_args);
    feat->add_option("--schema", schema_id, "feature schema id (default: all for the case study)");

    CLI::App* train = app.add_subcommand("train", "train preset models");
    add_common(train, train_args);
    train->add_option("--preset", preset_name, "preset name (default: all for the case study)");

    CLI::App* eval = app.add_subcommand("evaluate", "evaluate selection policies on the test set");
    add_common(eval, eval_args);

    CLI::App* report = app.add_subcommand("report", "emit feature-gain tables");
    add_common(report, report_args);

    CLI::App* repro = app.add_subcommand("reproduce", "run the full pipeline plus acceptance checks");
    repro->add_option("case", repro_args.case_study, "case study: simplex or apsp")
        ->check(CLI::IsMember({"simplex", "apsp"}));
    add_common(repro, repro_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            portfolio::cmd_generate(build_config(gen_args));
        } else if (feat->parsed()) {
            const auto cfg = build_config(feat_args);
            if (!schema_id.empty()) {
                portfolio::cmd_featurize(cfg, schema_id);
            } else {
                for (const std::string& s : portfolio::schemas_for(cfg.case_study))
                    portfolio::cmd_featurize(cfg, s);
            }
        } else if (train->parsed()) {
            const auto cfg = build_config(train_args);
            if (!preset_name.empty()) {
                portfolio::cmd_train(cfg, preset_name);
            } else {
                for (const auto& p : portfolio::presets_for(cfg.case_study))
                    portfolio::cmd_train(cfg, p.name);
            }
        } else if (eval->parsed()) {
            const auto cfg = build_config(eval_args);
            portfolio::cmd_evaluate(cfg);
            std::cout << portfolio::read_text_file(cfg.out_dir / "reports" / "evaluation.txt");
        } else if (report->parsed()) {
            portfolio::cmd_report(build_config(report_args));
        } else if (repro->parsed()) {
            const auto cfg = build_config(repro_args);
            const auto outcome = portfolio::cmd_reproduce(cfg);
            std::cout << portfolio::read_text_file(cfg.out_dir / "reports" / "evaluation.txt");
            if (!outcome.all_hard_passed()) return kExitAcceptanceFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
