#pragma once

#include <optional>
#include <string>
#include <vector>

#include "portfolio/gbdt.hpp"
#include "portfolio/mlp.hpp"

namespace portfolio {

enum class CaseStudy { Simplex, Apsp };

const char* case_study_name(CaseStudy cs);
CaseStudy case_study_from_name(const std::string& name);

enum class PresetModelKind { Gbdt, Mlp };

// A named training recipe: which learner, which hyperparameters, which
// feature schema, and how its predictions are used for selection.
enum class PresetRole {
    CostRegressor,     // one model per portfolio member, argmin of predictions
    DirectClassifier,  // one model, argmax class probability
};

struct Preset {
    std::string name;
    CaseStudy case_study = CaseStudy::Simplex;
    PresetModelKind model_kind = PresetModelKind::Gbdt;
    PresetRole role = PresetRole::DirectClassifier;
    std::string schema_id;
    // CostRegressor presets target one portfolio member (label column index).
    std::optional<std::size_t> target_algo;
    GbdtConfig gbdt;
    MlpConfig mlp;  // input_dim filled from the schema
};

const std::vector<Preset>& all_presets();
std::vector<Preset> presets_for(CaseStudy cs);
const Preset& preset_by_name(const std::string& name);  // throws MissingModelError

// Regressor bundles evaluated as one policy (e.g. the five per-rule
// iteration regressors form "lp-gbdt-regressors").
struct PolicyBundle {
    std::string policy_name;
    std::vector<std::string> preset_names;  // one per portfolio member, in order
};
std::vector<PolicyBundle> regressor_bundles(CaseStudy cs);

}  // namespace portfolio
