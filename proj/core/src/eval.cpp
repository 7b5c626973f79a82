#include "portfolio/eval.hpp"

#include <algorithm>

namespace portfolio {

std::size_t true_best(const EvalInstance& inst) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < inst.costs.size(); ++a)
        if (inst.costs[a] < inst.costs[best]) best = a;
    return best;
}

SelectionPolicy SelectionPolicy::fixed(std::size_t algo, std::string name) {
    SelectionPolicy p;
    p.kind = PolicyKind::FixedChoice;
    p.fixed_algo = algo;
    p.name = std::move(name);
    return p;
}

SelectionPolicy SelectionPolicy::density_heuristic(double threshold) {
    SelectionPolicy p;
    p.kind = PolicyKind::DensityHeuristic;
    p.density_threshold = threshold;
    p.name = "density-heuristic";
    return p;
}

std::size_t select(const SelectionPolicy& policy, const FeatureVector& features,
                   const EvalInstance& inst) {
    switch (policy.kind) {
        case PolicyKind::FixedChoice:
            return policy.fixed_algo;
        case PolicyKind::DensityHeuristic:
            return inst.density < policy.density_threshold ? policy.below_algo
                                                           : policy.above_algo;
        case PolicyKind::DirectClassifier: {
            const Vector probs = policy.class_probs(features);
            std::size_t best = 0;
            for (std::size_t c = 1; c < probs.size(); ++c)
                if (probs[c] > probs[best]) best = c;
            return best;
        }
        case PolicyKind::RuntimeRegressors: {
            std::size_t best = 0;
            double best_cost = policy.cost_predictors[0](features);
            for (std::size_t a = 1; a < policy.cost_predictors.size(); ++a) {
                const double cost = policy.cost_predictors[a](features);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = a;
                }
            }
            return best;
        }
    }
    return 0;
}

PolicyReport evaluate(const SelectionPolicy& policy, const std::vector<FeatureVector>& features,
                      const std::vector<EvalInstance>& instances) {
    if (instances.empty()) throw MissingRecordError("evaluate: empty test set");
    const bool needs_features =
        policy.kind == PolicyKind::DirectClassifier || policy.kind == PolicyKind::RuntimeRegressors;
    if (needs_features && features.size() != instances.size())
        throw MissingRecordError("evaluate: features/instances size mismatch");

    PolicyReport rep;
    rep.name = policy.name;
    rep.choices.reserve(instances.size());
    static const FeatureVector kEmpty;
    std::size_t hits = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const EvalInstance& inst = instances[i];
        const std::size_t choice =
            select(policy, needs_features ? features[i] : kEmpty, inst);
        if (choice >= inst.costs.size())
            throw MissingRecordError("evaluate: choice has no recorded cost");
        rep.choices.push_back(choice);
        total += inst.costs[choice];
        if (choice == true_best(inst)) ++hits;
    }
    rep.total_cost = total;
    rep.mean_cost = total / static_cast<double>(instances.size());
    rep.accuracy = static_cast<double>(hits) / static_cast<double>(instances.size());
    return rep;
}

PolicyReport oracle_report(const std::vector<EvalInstance>& instances) {
    if (instances.empty()) throw MissingRecordError("oracle_report: empty test set");
    PolicyReport rep;
    rep.name = "best-in-theory";
    rep.accuracy = 1.0;
    for (const EvalInstance& inst : instances) {
        const std::size_t b = true_best(inst);
        rep.choices.push_back(b);
        rep.total_cost += inst.costs[b];
    }
    rep.mean_cost = rep.total_cost / static_cast<double>(instances.size());
    return rep;
}

RatioSummary best_worst_ratios(const PolicyReport& policy, const PolicyReport& reference,
                               const std::vector<EvalInstance>& instances) {
    RatioSummary out;
    bool first = true;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const double ref = instances[i].costs[reference.choices[i]];
        if (ref == 0.0) {
            ++out.skipped_zero_reference;
            continue;
        }
        const double ratio = instances[i].costs[policy.choices[i]] / ref;
        if (first) {
            out.best = out.worst = ratio;
            first = false;
        } else {
            out.best = std::min(out.best, ratio);
            out.worst = std::max(out.worst, ratio);
        }
    }
    return out;
}

}  // namespace portfolio
