#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "portfolio/linalg.hpp"

namespace portfolio {

enum class LpForm { Inequality, Standard };  // Ax <= b, x >= 0  |  Ax = b, x >= 0

// Generator provenance: the hyperparameters an instance was drawn with, plus
// the planted optimum used as a correctness oracle.
struct GenMeta {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    double edge_prob = 0.0;       // ER bipartite pattern density p
    double coeff_mean = 0.0;      // mu_A
    double coeff_std = 0.0;       // sigma_A
    double basis_split = 0.0;     // gamma
    double fractional_primal = 0.0;  // lambda
    double beta_fraction = 0.5;   // Beta(a, a) parameter
    double planted_objective = 0.0;  // c^T alpha, optimal by construction
};

struct LpInstance {
    Matrix a;
    Vector b;
    Vector c;
    LpForm form = LpForm::Inequality;
    std::string id;
    std::optional<GenMeta> gen_meta;

    std::size_t num_constraints() const { return a.rows(); }
    std::size_t num_variables() const { return a.cols(); }
};

// Ordered set of m column indices with A_B non-singular.
struct Basis {
    std::vector<std::size_t> indices;
};

struct ReducedCosts {
    Vector z;  // length n; zero on basic columns
};

struct BasicSolution {
    Vector x;
    bool feasible = false;  // x >= -1e-9 componentwise
};

constexpr double kFeasibilityTol = 1e-9;

// Slack-variable augmentation: [A | I], c' = (c, 0), b' = b.
LpInstance to_standard_form(const LpInstance& lp);

// z_j = c_j - c_B^T A_B^{-1} A_j; throws SingularBasisError.
ReducedCosts reduced_costs(const LpInstance& lp, const Basis& basis);

// x with A x = b, x_j = 0 off-basis; throws SingularBasisError.
BasicSolution basic_solution(const LpInstance& lp, const Basis& basis);

// JSON (de)serialization; field names are part of the on-disk dataset format:
// {id, form, m, n, a (row-major), b, c, gen_meta}.
std::string lp_to_json(const LpInstance& lp);
LpInstance lp_from_json(const std::string& text);

}  // namespace portfolio
