#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "portfolio/errors.hpp"
#include "portfolio/features.hpp"

namespace portfolio {

// One test instance as evaluation sees it: true per-algorithm costs
// (iterations or seconds) plus the density the heuristic policy reads.
struct EvalInstance {
    std::string id;
    Vector costs;        // one entry per portfolio member, fixed order
    double density = 0.0;
};

// True best algorithm, ties broken by the portfolio's fixed order.
std::size_t true_best(const EvalInstance& inst);

enum class PolicyKind { FixedChoice, DirectClassifier, RuntimeRegressors, DensityHeuristic };

struct SelectionPolicy {
    PolicyKind kind = PolicyKind::FixedChoice;
    std::string name;
    std::size_t fixed_algo = 0;
    double density_threshold = 0.5;
    // Peng-vs-FloydWarshall indices for the density heuristic.
    std::size_t below_algo = 0;
    std::size_t above_algo = 1;
    std::function<Vector(const FeatureVector&)> class_probs;  // DirectClassifier
    std::vector<std::function<double(const FeatureVector&)>> cost_predictors;  // RuntimeRegressors

    static SelectionPolicy fixed(std::size_t algo, std::string name);
    static SelectionPolicy density_heuristic(double threshold);
};

// Chosen algorithm index for one instance.
std::size_t select(const SelectionPolicy& policy, const FeatureVector& features,
                   const EvalInstance& inst);

struct PolicyReport {
    std::string name;
    double accuracy = 0.0;    // fraction of instances where the choice is the argmin
    double mean_cost = 0.0;   // mean of charged true costs
    double total_cost = 0.0;
    std::vector<std::size_t> choices;
};

// Charges the policy the recorded true cost of its choice; nothing re-runs.
PolicyReport evaluate(const SelectionPolicy& policy, const std::vector<FeatureVector>& features,
                      const std::vector<EvalInstance>& instances);

// The per-instance minimum ("best in theory").
PolicyReport oracle_report(const std::vector<EvalInstance>& instances);

struct RatioSummary {
    double best = 1.0;   // min over instances of policy cost / reference cost
    double worst = 1.0;  // max
    std::size_t skipped_zero_reference = 0;
};

RatioSummary best_worst_ratios(const PolicyReport& policy, const PolicyReport& reference,
                               const std::vector<EvalInstance>& instances);

}  // namespace portfolio
