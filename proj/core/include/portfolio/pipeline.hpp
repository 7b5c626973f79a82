#pragma once

#include <filesystem>
#include <optional>

#include "portfolio/dataset.hpp"
#include "portfolio/eval.hpp"
#include "portfolio/presets.hpp"
#include "portfolio/wilcoxon.hpp"

namespace portfolio {

std::string tool_version();

struct GraphGenRanges {
    std::size_t n_min = 20;
    std::size_t n_max = 300;
    std::size_t repeats = 3;  // timed repeats per algorithm (plus one warm-up)
};

struct ExperimentConfig {
    CaseStudy case_study = CaseStudy::Simplex;
    std::string scale = "desk";
    std::uint64_t seed = 1;
    std::filesystem::path out_dir;
    std::size_t train_count = 2000;
    std::size_t test_count = 500;
    double validation_fraction = 0.10;
    LpGenConfig lp;
    GraphGenRanges graph;
    std::size_t repetitions = 30;  // retrain count behind the Wilcoxon matrices
    std::size_t workers = 0;       // 0 = PORTFOLIO_SELECT_WORKERS or hardware
    bool parallel_generation = false;
};

// Scale presets: smoke (minutes), desk (about an hour end to end), paper
// (the published instance counts; expect a long run).
ExperimentConfig default_config(CaseStudy cs, const std::string& scale);

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
std::string config_tag(const ExperimentConfig& cfg);  // content hash of the config
std::size_t effective_workers(const ExperimentConfig& cfg);

// Feature schemas the case study's presets consume.
std::vector<std::string> schemas_for(CaseStudy cs);

// Stage entry points. Each writes artifacts under cfg.out_dir, refreshes the
// manifest, and is deterministic in (config, seed, tool version).
void cmd_generate(const ExperimentConfig& cfg);
void cmd_featurize(const ExperimentConfig& cfg, const std::string& schema_id);
void cmd_train(const ExperimentConfig& cfg, const std::string& preset_name);

struct PolicyEvaluation {
    PolicyReport report;
    bool trained = false;
    RatioSummary ratios;               // vs the reference fixed policy
    std::optional<WilcoxonResult> vs_reference;  // per-instance costs (simplex)
};

struct EvaluationOutcome {
    CaseStudy case_study;
    std::vector<PolicyEvaluation> policies;  // fixed, trained, heuristic
    PolicyReport oracle;
    // Pairwise Wilcoxon p-values over per-repetition metrics (apsp).
    std::vector<std::string> matrix_policies;
    Matrix accuracy_pvalues;
    Matrix cost_pvalues;

    const PolicyEvaluation* best_trained() const;
    const PolicyEvaluation* best_fixed() const;
    const PolicyEvaluation* find(const std::string& name) const;
};

EvaluationOutcome cmd_evaluate(const ExperimentConfig& cfg);
void cmd_report(const ExperimentConfig& cfg);

struct AcceptanceCheck {
    std::string name;
    bool hard = true;
    bool passed = false;
    std::string detail;
};

struct ReproduceOutcome {
    EvaluationOutcome evaluation;
    std::vector<AcceptanceCheck> checks;

    bool all_hard_passed() const;
};

// generate -> featurize -> train every preset -> evaluate -> scaled
// acceptance checks, with a one-line pass/fail summary per check.
ReproduceOutcome cmd_reproduce(const ExperimentConfig& cfg);

}  // namespace portfolio
