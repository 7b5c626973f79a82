#include "portfolio/lp.hpp"

#include <cmath>

#include <json.hpp>

namespace portfolio {

LpInstance to_standard_form(const LpInstance& lp) {
    const std::size_t m = lp.num_constraints();
    const std::size_t n = lp.num_variables();
    LpInstance out;
    out.a = Matrix(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.a(i, j) = lp.a(i, j);
        out.a(i, n + i) = 1.0;
    }
    out.b = lp.b;
    out.c = lp.c;
    out.c.resize(n + m, 0.0);
    out.form = LpForm::Standard;
    out.id = lp.id;
    out.gen_meta = lp.gen_meta;
    return out;
}

namespace {

Matrix basis_matrix(const LpInstance& lp, const Basis& basis) {
    const std::size_t m = lp.num_constraints();
    Matrix ab(m, m);
    for (std::size_t k = 0; k < basis.indices.size(); ++k)
        for (std::size_t i = 0; i < m; ++i) ab(i, k) = lp.a(i, basis.indices[k]);
    return ab;
}

LuFactor factor_basis(const LpInstance& lp, const Basis& basis) {
    if (basis.indices.size() != lp.num_constraints())
        throw SingularBasisError("basis size does not match constraint count");
    try {
        return LuFactor(basis_matrix(lp, basis));
    } catch (const SingularMatrixError&) {
        throw SingularBasisError("basis matrix is singular");
    }
}

}  // namespace

ReducedCosts reduced_costs(const LpInstance& lp, const Basis& basis) {
    const LuFactor lu = factor_basis(lp, basis);
    const std::size_t m = lp.num_constraints();
    Vector cb(m);
    for (std::size_t k = 0; k < m; ++k) cb[k] = lp.c[basis.indices[k]];
    const Vector y = lu.solve_transpose(cb);  // A_B^T y = c_B

    ReducedCosts rc;
    rc.z = lp.c;
    for (std::size_t i = 0; i < m; ++i) {
        const double yi = y[i];
        if (yi == 0.0) continue;
        const double* arow = lp.a.row(i);
        for (std::size_t j = 0; j < lp.num_variables(); ++j) rc.z[j] -= yi * arow[j];
    }
    for (std::size_t k : basis.indices) rc.z[k] = 0.0;
    return rc;
}

BasicSolution basic_solution(const LpInstance& lp, const Basis& basis) {
    const LuFactor lu = factor_basis(lp, basis);
    const Vector xb = lu.solve(lp.b);
    BasicSolution out;
    out.x = Vector(lp.num_variables(), 0.0);
    out.feasible = true;
    for (std::size_t k = 0; k < basis.indices.size(); ++k) {
        out.x[basis.indices[k]] = xb[k];
        if (xb[k] < -kFeasibilityTol) out.feasible = false;
    }
    return out;
}

std::string lp_to_json(const LpInstance& lp) {
    nlohmann::json j;
    j["id"] = lp.id;
    j["form"] = lp.form == LpForm::Inequality ? "inequality" : "standard";
    j["m"] = lp.num_constraints();
    j["n"] = lp.num_variables();
    j["a"] = lp.a.data();
    j["b"] = lp.b;
    j["c"] = lp.c;
    if (lp.gen_meta) {
        const GenMeta& g = *lp.gen_meta;
        j["gen_meta"] = {{"seed", g.seed},
                         {"index", g.index},
                         {"edge_prob", g.edge_prob},
                         {"coeff_mean", g.coeff_mean},
                         {"coeff_std", g.coeff_std},
                         {"basis_split", g.basis_split},
                         {"fractional_primal", g.fractional_primal},
                         {"beta_fraction", g.beta_fraction},
                         {"planted_objective", g.planted_objective}};
    } else {
        j["gen_meta"] = nullptr;
    }
    return j.dump();
}

LpInstance lp_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    LpInstance lp;
    lp.id = j.at("id").get<std::string>();
    lp.form = j.at("form").get<std::string>() == "inequality" ? LpForm::Inequality
                                                              : LpForm::Standard;
    const auto m = j.at("m").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    lp.a = Matrix(m, n);
    lp.a.data() = j.at("a").get<std::vector<double>>();
    lp.b = j.at("b").get<Vector>();
    lp.c = j.at("c").get<Vector>();
    if (!j.at("gen_meta").is_null()) {
        const auto& g = j.at("gen_meta");
        GenMeta meta;
        meta.seed = g.at("seed").get<std::uint64_t>();
        meta.index = g.at("index").get<std::uint64_t>();
        meta.edge_prob = g.at("edge_prob").get<double>();
        meta.coeff_mean = g.at("coeff_mean").get<double>();
        meta.coeff_std = g.at("coeff_std").get<double>();
        meta.basis_split = g.at("basis_split").get<double>();
        meta.fractional_primal = g.at("fractional_primal").get<double>();
        meta.beta_fraction = g.at("beta_fraction").get<double>();
        meta.planted_objective = g.at("planted_objective").get<double>();
        lp.gen_meta = meta;
    }
    return lp;
}

}  // namespace portfolio
