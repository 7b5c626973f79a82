#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "portfolio/lp.hpp"

namespace portfolio {

// Enumerator order is the fixed tie-break order for argmin labels.
enum class PivotRuleKind { Dantzig = 0, Hybrid, Devex, SteepestEdge, GreatestImprovement };

constexpr std::array<PivotRuleKind, 5> kAllPivotRules = {
    PivotRuleKind::Dantzig, PivotRuleKind::Hybrid, PivotRuleKind::Devex,
    PivotRuleKind::SteepestEdge, PivotRuleKind::GreatestImprovement};

const char* pivot_rule_name(PivotRuleKind kind);  // "dantzig", "hybrid", ...
PivotRuleKind pivot_rule_from_name(const std::string& name);

struct PivotRule {
    PivotRuleKind kind = PivotRuleKind::Dantzig;
    // Hybrid only: stay on Dantzig while more than this many columns improve.
    // 0 = auto (a quarter of the column count).
    std::size_t hybrid_switch = 0;
};

enum class SolveStatus { Optimal, Unbounded, Infeasible, IterationLimit };

const char* solve_status_name(SolveStatus status);

struct SimplexResult {
    SolveStatus status = SolveStatus::Optimal;
    double objective = 0.0;
    Vector x;
    std::size_t iterations = 0;  // basis changes, phase I + phase II
    PivotRuleKind rule = PivotRuleKind::Dantzig;
};

// One iteration's view of a standard-form LP under a basis: reduced costs,
// the basic point, and the quantities pivot rules score candidates with.
class SimplexState {
public:
    SimplexState(const LpInstance& lp, Basis basis);  // throws SingularBasisError

    const LpInstance& lp() const { return *lp_; }
    const Basis& basis() const { return basis_; }
    const Vector& reduced() const { return z_; }
    const Vector& basic_x() const { return xb_; }  // length m, basis order
    double objective() const { return objective_; }

    // Nonbasic columns with z_j > tol, ascending index.
    const std::vector<std::size_t>& improving() const { return improving_; }

    Vector column_direction(std::size_t j) const;  // d = A_B^{-1} A_j
    Vector binv_row(std::size_t r) const;          // row r of A_B^{-1}

    // Ratio-test step length for entering column j (+inf when unbounded).
    double step_length(const Vector& d) const;
    // Objective increment z_j * theta_j used by greatest improvement.
    double objective_increment(std::size_t j) const;
    // z_j / sqrt(1 + |d_j|^2); the steepest-edge score. The unit component of
    // the entering variable is part of the edge norm.
    double steepest_rate(std::size_t j) const;

    static constexpr double kReducedCostTol = 1e-9;
    static constexpr double kRatioTol = 1e-9;

private:
    const LpInstance* lp_;
    Basis basis_;
    std::unique_ptr<LuFactor> lu_;
    Vector xb_;
    Vector z_;
    std::vector<std::size_t> improving_;
    double objective_ = 0.0;
};

// Per-solve mutable pivot-rule state (devex reference weights, hybrid latch).
struct PivotRuleState {
    bool hybrid_switched = false;
    Vector devex_weights;  // empty until first devex pick
    static constexpr double kDevexResetThreshold = 1e7;
};

// Entering column per the rule, or nullopt at optimality.
std::optional<std::size_t> choose_pivot(const PivotRule& rule, const SimplexState& state,
                                        PivotRuleState& rs);

// Two-phase primal simplex. `lp` must be in standard form. Iterations are
// counted across both phases. A slack basis is used directly when the
// instance carries one and b >= 0; otherwise phase I runs with artificials.
SimplexResult solve(const LpInstance& lp, const PivotRule& rule, std::size_t limit);

// Iteration counts for all five rules plus the argmin label.
struct SolveRecord {
    std::string instance_id;
    std::array<std::size_t, 5> iterations{};  // indexed by PivotRuleKind
    std::array<SolveStatus, 5> statuses{};
    std::array<double, 5> objectives{};
    PivotRuleKind best_rule = PivotRuleKind::Dantzig;

    std::size_t best_iterations() const;
};

// Solves under every rule with limit 50*(m+n) of the given instance
// (inequality instances are put in standard form first).
SolveRecord run_portfolio(const LpInstance& lp);

std::string solve_record_to_json(const SolveRecord& rec);
SolveRecord solve_record_from_json(const std::string& text);

}  // namespace portfolio
