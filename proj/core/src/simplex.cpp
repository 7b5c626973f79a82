#include "portfolio/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace portfolio {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateStepTol = 1e-9;
constexpr std::size_t kBlandTrigger = 100;  // consecutive degenerate pivots
}  // namespace

const char* pivot_rule_name(PivotRuleKind kind) {
    switch (kind) {
        case PivotRuleKind::Dantzig: return "dantzig";
        case PivotRuleKind::Hybrid: return "hybrid";
        case PivotRuleKind::Devex: return "devex";
        case PivotRuleKind::SteepestEdge: return "steepest";
        case PivotRuleKind::GreatestImprovement: return "greatest";
    }
    return "?";
}

PivotRuleKind pivot_rule_from_name(const std::string& name) {
    for (PivotRuleKind k : kAllPivotRules)
        if (name == pivot_rule_name(k)) return k;
    throw InvalidParamError("unknown pivot rule: " + name);
}

const char* solve_status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::IterationLimit: return "iteration_limit";
    }
    return "?";
}

SimplexState::SimplexState(const LpInstance& lp, Basis basis)
    : lp_(&lp), basis_(std::move(basis)) {
    const std::size_t m = lp.num_constraints();
    const std::size_t n = lp.num_variables();
    if (basis_.indices.size() != m) throw SingularBasisError("basis size mismatch");

    Matrix ab(m, m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i) ab(i, k) = lp.a(i, basis_.indices[k]);
    try {
        lu_ = std::make_unique<LuFactor>(ab);
    } catch (const SingularMatrixError&) {
        throw SingularBasisError("singular basis");
    }

    xb_ = lu_->solve(lp.b);
    Vector cb(m);
    for (std::size_t k = 0; k < m; ++k) cb[k] = lp.c[basis_.indices[k]];
    objective_ = dot(cb, xb_);

    const Vector y = lu_->solve_transpose(cb);
    z_ = lp.c;
    for (std::size_t i = 0; i < m; ++i) {
        const double yi = y[i];
        if (yi == 0.0) continue;
        const double* arow = lp.a.row(i);
        for (std::size_t j = 0; j < n; ++j) z_[j] -= yi * arow[j];
    }
    std::vector<bool> in_basis(n, false);
    for (std::size_t k : basis_.indices) in_basis[k] = true;
    for (std::size_t j = 0; j < n; ++j) {
        if (in_basis[j]) {
            z_[j] = 0.0;
        } else if (z_[j] > kReducedCostTol) {
            improving_.push_back(j);
        }
    }
}

Vector SimplexState::column_direction(std::size_t j) const {
    const std::size_t m = lp_->num_constraints();
    Vector aj(m);
    for (std::size_t i = 0; i < m; ++i) aj[i] = lp_->a(i, j);
    return lu_->solve(aj);
}

Vector SimplexState::binv_row(std::size_t r) const {
    Vector e(lp_->num_constraints(), 0.0);
    e[r] = 1.0;
    return lu_->solve_transpose(e);
}

double SimplexState::step_length(const Vector& d) const {
    double theta = kInf;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] > kRatioTol) theta = std::min(theta, std::max(xb_[i], 0.0) / d[i]);
    }
    return theta;
}

double SimplexState::objective_increment(std::size_t j) const {
    const Vector d = column_direction(j);
    const double theta = step_length(d);
    if (theta == kInf) return kInf;
    return z_[j] * theta;
}

double SimplexState::steepest_rate(std::size_t j) const {
    const Vector d = column_direction(j);
    return z_[j] / std::sqrt(1.0 + dot(d, d));
}

namespace {

std::size_t devex_pick(const SimplexState& state, PivotRuleState& rs) {
    if (rs.devex_weights.size() != state.lp().num_variables())
        rs.devex_weights.assign(state.lp().num_variables(), 1.0);
    const Vector& z = state.reduced();
    std::size_t best = state.improving().front();
    double best_score = -1.0;
    for (std::size_t j : state.improving()) {
        const double score = z[j] * z[j] / rs.devex_weights[j];
        if (score > best_score) {
            best_score = score;
            best = j;
        }
    }
    return best;
}

std::size_t steepest_pick(const SimplexState& state) {
    std::size_t best = state.improving().front();
    double best_rate = -kInf;
    for (std::size_t j : state.improving()) {
        const double rate = state.steepest_rate(j);
        if (rate > best_rate) {
            best_rate = rate;
            best = j;
        }
    }
    return best;
}

}  // namespace

std::optional<std::size_t> choose_pivot(const PivotRule& rule, const SimplexState& state,
                                        PivotRuleState& rs) {
    const auto& improving = state.improving();
    if (improving.empty()) return std::nullopt;
    const Vector& z = state.reduced();

    switch (rule.kind) {
        case PivotRuleKind::Dantzig: {
            std::size_t best = improving.front();
            for (std::size_t j : improving)
                if (z[j] > z[best]) best = j;
            return best;
        }
        case PivotRuleKind::GreatestImprovement: {
            std::size_t best = improving.front();
            double best_inc = -kInf;
            for (std::size_t j : improving) {
                const double inc = state.objective_increment(j);
                if (inc > best_inc) {
                    best_inc = inc;
                    best = j;
                }
            }
            return best;
        }
        case PivotRuleKind::SteepestEdge:
            return steepest_pick(state);
        case PivotRuleKind::Devex:
            return devex_pick(state, rs);
        case PivotRuleKind::Hybrid: {
            const std::size_t threshold =
                rule.hybrid_switch > 0 ? rule.hybrid_switch : state.lp().num_variables() / 4;
            if (!rs.hybrid_switched && improving.size() <= threshold) rs.hybrid_switched = true;
            if (rs.hybrid_switched) return steepest_pick(state);
            std::size_t best = improving.front();
            for (std::size_t j : improving)
                if (z[j] > z[best]) best = j;
            return best;
        }
    }
    return std::nullopt;
}

namespace {

// Leaving row by minimum ratio; ties resolved lexicographically on the rows
// of [x_B | A_B^{-1}] scaled by the pivot entry, which prevents cycling.
std::optional<std::size_t> ratio_test(const SimplexState& state, const Vector& d) {
    const std::size_t m = d.size();
    double theta = kInf;
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < m; ++i) {
        if (d[i] <= SimplexState::kRatioTol) continue;
        const double ratio = std::max(state.basic_x()[i], 0.0) / d[i];
        if (ratio < theta - 1e-12) {
            theta = ratio;
            tied.assign(1, i);
        } else if (ratio <= theta + 1e-12) {
            tied.push_back(i);
        }
    }
    if (tied.empty()) return std::nullopt;  // unbounded direction
    if (tied.size() == 1) return tied[0];

    std::vector<Vector> rows(tied.size());
    for (std::size_t t = 0; t < tied.size(); ++t) rows[t] = state.binv_row(tied[t]);
    std::size_t winner = 0;
    for (std::size_t t = 1; t < tied.size(); ++t) {
        const Vector& a = rows[winner];
        const Vector& b = rows[t];
        const double da = d[tied[winner]];
        const double db = d[tied[t]];
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double va = a[j] / da;
            const double vb = b[j] / db;
            if (std::abs(va - vb) <= 1e-12) continue;
            if (vb < va) winner = t;
            break;
        }
    }
    return tied[winner];
}

std::optional<std::size_t> bland_entering(const SimplexState& state) {
    if (state.improving().empty()) return std::nullopt;
    return state.improving().front();  // ascending index already
}

std::size_t bland_leaving(const SimplexState& state, const Vector& d) {
    double theta = kInf;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] <= SimplexState::kRatioTol) continue;
        theta = std::min(theta, std::max(state.basic_x()[i], 0.0) / d[i]);
    }
    std::size_t row = d.size();
    std::size_t best_var = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] <= SimplexState::kRatioTol) continue;
        const double ratio = std::max(state.basic_x()[i], 0.0) / d[i];
        if (ratio <= theta + 1e-12 && state.basis().indices[i] < best_var) {
            best_var = state.basis().indices[i];
            row = i;
        }
    }
    return row;
}

void devex_update(const SimplexState& state, PivotRuleState& rs, std::size_t entering,
                  std::size_t row, const Vector& d) {
    if (rs.devex_weights.empty()) return;
    const double pivot = d[row];
    if (std::abs(pivot) < 1e-12) return;
    const double wq = rs.devex_weights[entering];
    const Vector rho = state.binv_row(row);
    const LpInstance& lp = state.lp();
    const std::size_t n = lp.num_variables();
    Vector alpha(n, 0.0);  // pivot row of the updated tableau over all columns
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double ri = rho[i];
        if (ri == 0.0) continue;
        const double* arow = lp.a.row(i);
        for (std::size_t j = 0; j < n; ++j) alpha[j] += ri * arow[j];
    }
    std::vector<bool> in_basis(n, false);
    for (std::size_t k : state.basis().indices) in_basis[k] = true;
    for (std::size_t j = 0; j < n; ++j) {
        if (in_basis[j] || j == entering) continue;
        const double ratio = alpha[j] / pivot;
        rs.devex_weights[j] = std::max(rs.devex_weights[j], ratio * ratio * wq);
    }
    const std::size_t leaving_var = state.basis().indices[row];
    rs.devex_weights[leaving_var] = std::max(wq / (pivot * pivot), 1.0);
    rs.devex_weights[entering] = 1.0;

    for (double w : rs.devex_weights) {
        if (w > PivotRuleState::kDevexResetThreshold) {
            rs.devex_weights.assign(rs.devex_weights.size(), 1.0);
            break;
        }
    }
}

struct PhaseResult {
    SolveStatus status = SolveStatus::Optimal;
    Basis basis;
    double objective = 0.0;
    Vector x;
};

PhaseResult run_phase(const LpInstance& lp, Basis basis, const PivotRule& rule,
                      std::size_t limit, std::size_t& iterations) {
    PivotRuleState rs;
    bool bland_mode = false;
    std::size_t degenerate_streak = 0;
    double last_objective = -kInf;

    while (true) {
        SimplexState state(lp, basis);
        if (state.objective() > last_objective + 1e-12 * (1.0 + std::abs(last_objective))) {
            if (bland_mode) bland_mode = false;
            degenerate_streak = 0;
            last_objective = state.objective();
        }

        std::optional<std::size_t> entering =
            bland_mode ? bland_entering(state) : choose_pivot(rule, state, rs);
        if (!entering) {
            PhaseResult out;
            out.status = SolveStatus::Optimal;
            out.basis = state.basis();
            out.objective = state.objective();
            out.x = Vector(lp.num_variables(), 0.0);
            for (std::size_t k = 0; k < out.basis.indices.size(); ++k)
                out.x[out.basis.indices[k]] = state.basic_x()[k];
            return out;
        }
        if (iterations >= limit) {
            PhaseResult out;
            out.status = SolveStatus::IterationLimit;
            out.basis = state.basis();
            out.objective = state.objective();
            return out;
        }

        const Vector d = state.column_direction(*entering);
        std::optional<std::size_t> row;
        if (bland_mode) {
            const std::size_t r = bland_leaving(state, d);
            if (r < d.size()) row = r;
        } else {
            row = ratio_test(state, d);
        }
        if (!row) {
            PhaseResult out;
            out.status = SolveStatus::Unbounded;
            out.basis = state.basis();
            out.objective = state.objective();
            return out;
        }

        const double theta = std::max(state.basic_x()[*row], 0.0) / d[*row];
        if (theta <= kDegenerateStepTol) {
            if (++degenerate_streak >= kBlandTrigger) bland_mode = true;
        } else {
            degenerate_streak = 0;
        }

        if (rule.kind == PivotRuleKind::Devex && !bland_mode)
            devex_update(state, rs, *entering, *row, d);

        basis = state.basis();
        basis.indices[*row] = *entering;
        ++iterations;
    }
}

// True when the trailing m columns are exactly the identity (a slack block).
bool has_slack_identity(const LpInstance& lp) {
    const std::size_t m = lp.num_constraints();
    const std::size_t n = lp.num_variables();
    if (n < m) return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (lp.a(i, n - m + j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

}  // namespace

SimplexResult solve(const LpInstance& lp, const PivotRule& rule, std::size_t limit) {
    if (lp.form != LpForm::Standard)
        throw InvalidParamError("solve: instance must be in standard form");
    const std::size_t m = lp.num_constraints();
    const std::size_t n = lp.num_variables();

    SimplexResult result;
    result.rule = rule.kind;
    std::size_t iterations = 0;

    Basis basis;
    const LpInstance* phase2_lp = &lp;
    LpInstance reduced;  // rows dropped when phase I finds redundancy

    const bool b_nonneg = std::all_of(lp.b.begin(), lp.b.end(), [](double v) { return v >= 0.0; });
    if (b_nonneg && has_slack_identity(lp)) {
        basis.indices.resize(m);
        for (std::size_t i = 0; i < m; ++i) basis.indices[i] = n - m + i;
    } else {
        // Phase I: flip negative rows, append artificials, minimize their sum.
        LpInstance aux;
        aux.form = LpForm::Standard;
        aux.a = Matrix(m, n + m);
        aux.b = lp.b;
        aux.c = Vector(n + m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
            aux.b[i] = sign * lp.b[i];
            for (std::size_t j = 0; j < n; ++j) aux.a(i, j) = sign * lp.a(i, j);
            aux.a(i, n + i) = 1.0;
            aux.c[n + i] = -1.0;
        }
        Basis art;
        art.indices.resize(m);
        for (std::size_t i = 0; i < m; ++i) art.indices[i] = n + i;

        PhaseResult p1 = run_phase(aux, art, rule, limit, iterations);
        if (p1.status == SolveStatus::IterationLimit) {
            result.status = SolveStatus::IterationLimit;
            result.iterations = iterations;
            return result;
        }
        if (p1.objective < -1e-7) {
            result.status = SolveStatus::Infeasible;
            result.iterations = iterations;
            return result;
        }

        // Drive leftover artificials out of the basis. An artificial that
        // cannot leave marks its original constraint row as redundant.
        std::vector<bool> drop_row(m, false);
        std::vector<bool> drop_position(m, false);
        for (std::size_t r = 0; r < m; ++r) {
            if (p1.basis.indices[r] < n) continue;
            SimplexState st(aux, p1.basis);
            const Vector rho = st.binv_row(r);
            std::vector<bool> in_basis(n, false);
            for (std::size_t k : p1.basis.indices)
                if (k < n) in_basis[k] = true;
            std::size_t pick = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (in_basis[j]) continue;
                double v = 0.0;
                for (std::size_t i = 0; i < m; ++i) v += rho[i] * aux.a(i, j);
                if (std::abs(v) > 1e-9) {
                    pick = j;
                    break;
                }
            }
            if (pick < n) {
                p1.basis.indices[r] = pick;
                ++iterations;
            } else {
                drop_row[p1.basis.indices[r] - n] = true;
                drop_position[r] = true;
            }
        }

        if (std::any_of(drop_row.begin(), drop_row.end(), [](bool b) { return b; })) {
            reduced.form = LpForm::Standard;
            reduced.id = lp.id;
            reduced.gen_meta = lp.gen_meta;
            std::size_t kept = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (!drop_row[i]) ++kept;
            reduced.a = Matrix(kept, n);
            reduced.b = Vector(kept);
            reduced.c = lp.c;
            std::size_t out_i = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (drop_row[i]) continue;
                for (std::size_t j = 0; j < n; ++j) reduced.a(out_i, j) = lp.a(i, j);
                reduced.b[out_i] = lp.b[i];
                ++out_i;
            }
            Basis trimmed;
            for (std::size_t r = 0; r < m; ++r)
                if (!drop_position[r]) trimmed.indices.push_back(p1.basis.indices[r]);
            basis = trimmed;
            phase2_lp = &reduced;
        } else {
            basis = p1.basis;
        }
    }

    PhaseResult p2 = run_phase(*phase2_lp, basis, rule, limit, iterations);
    result.status = p2.status;
    result.iterations = iterations;
    if (p2.status == SolveStatus::Optimal) {
        result.objective = p2.objective;
        result.x = p2.x;
        result.x.resize(n, 0.0);
    } else {
        result.objective = p2.objective;
    }
    return result;
}

std::size_t SolveRecord::best_iterations() const {
    return *std::min_element(iterations.begin(), iterations.end());
}

SolveRecord run_portfolio(const LpInstance& lp) {
    const LpInstance std_lp = lp.form == LpForm::Standard ? lp : to_standard_form(lp);
    const std::size_t limit = 50 * (lp.num_constraints() + lp.num_variables());

    SolveRecord rec;
    rec.instance_id = lp.id;
    for (PivotRuleKind kind : kAllPivotRules) {
        const auto idx = static_cast<std::size_t>(kind);
        const SimplexResult res = solve(std_lp, PivotRule{kind}, limit);
        rec.iterations[idx] = res.status == SolveStatus::IterationLimit ? limit : res.iterations;
        rec.statuses[idx] = res.status;
        rec.objectives[idx] = res.objective;
    }
    rec.best_rule = PivotRuleKind::Dantzig;
    for (PivotRuleKind kind : kAllPivotRules) {
        const auto idx = static_cast<std::size_t>(kind);
        if (rec.iterations[idx] < rec.iterations[static_cast<std::size_t>(rec.best_rule)])
            rec.best_rule = kind;
    }
    return rec;
}

std::string solve_record_to_json(const SolveRecord& rec) {
    nlohmann::json iters, statuses;
    for (PivotRuleKind kind : kAllPivotRules) {
        const auto idx = static_cast<std::size_t>(kind);
        iters[pivot_rule_name(kind)] = rec.iterations[idx];
        statuses[pivot_rule_name(kind)] = solve_status_name(rec.statuses[idx]);
    }
    nlohmann::json j;
    j["instance_id"] = rec.instance_id;
    j["iterations"] = iters;
    j["statuses"] = statuses;
    j["objectives"] = rec.objectives;
    j["best_rule"] = pivot_rule_name(rec.best_rule);
    return j.dump();
}

SolveRecord solve_record_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SolveRecord rec;
    rec.instance_id = j.at("instance_id").get<std::string>();
    for (PivotRuleKind kind : kAllPivotRules) {
        const auto idx = static_cast<std::size_t>(kind);
        rec.iterations[idx] = j.at("iterations").at(pivot_rule_name(kind)).get<std::size_t>();
        const std::string s = j.at("statuses").at(pivot_rule_name(kind)).get<std::string>();
        for (int si = 0; si < 4; ++si) {
            const auto status = static_cast<SolveStatus>(si);
            if (s == solve_status_name(status)) rec.statuses[idx] = status;
        }
    }
    if (j.contains("objectives")) {
        const auto obj = j.at("objectives").get<std::vector<double>>();
        std::copy(obj.begin(), obj.end(), rec.objectives.begin());
    }
    rec.best_rule = pivot_rule_from_name(j.at("best_rule").get<std::string>());
    return rec;
}

}  // namespace portfolio
