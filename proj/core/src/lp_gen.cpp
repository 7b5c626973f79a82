#include "portfolio/lp_gen.hpp"

#include <algorithm>
#include <cmath>

namespace portfolio {

LpInstance generate_lp(const LpGenConfig& cfg, std::uint64_t index) {
    Rng rng = Rng::child(cfg.seed, index);

    const auto m = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(cfg.m_min), static_cast<std::int64_t>(cfg.m_max)));
    const auto n = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(cfg.n_min), static_cast<std::int64_t>(cfg.n_max)));
    const double p = rng.uniform(cfg.p_min, cfg.p_max);
    const double mu_a = rng.normal();
    const double sigma_a = rng.uniform(cfg.sigma_min, cfg.sigma_max);
    const double gamma = rng.uniform(cfg.gamma_min, cfg.gamma_max);
    const double lambda = rng.normal();

    // Sparsity pattern from an ER bipartite constraint-variable graph; empty
    // rows/columns get one forced edge so no variable or constraint is inert.
    std::vector<std::vector<bool>> pattern(m, std::vector<bool>(n, false));
    std::vector<std::size_t> row_deg(m, 0), col_deg(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng.bernoulli(p)) {
                pattern[i][j] = true;
                ++row_deg[i];
                ++col_deg[j];
            }
    for (std::size_t i = 0; i < m; ++i) {
        if (row_deg[i] > 0) continue;
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        pattern[i][j] = true;
        ++row_deg[i];
        ++col_deg[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (col_deg[j] > 0) continue;
        const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m) - 1));
        pattern[i][j] = true;
        ++row_deg[i];
        ++col_deg[j];
    }

    LpInstance lp;
    lp.form = LpForm::Inequality;
    lp.a = Matrix(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (pattern[i][j]) lp.a(i, j) = rng.normal(mu_a, sigma_a);

    // Planted primal alpha and dual beta. gamma picks each support; lambda
    // sets the integer scale and Beta(1/2,1/2) the fractional part.
    const double scale = std::floor(std::exp(lambda));
    Vector alpha(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        if (rng.bernoulli(gamma)) alpha[j] = scale + rng.beta_half_half();
    Vector beta(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (rng.bernoulli(gamma)) beta[i] = scale + rng.beta_half_half();

    // Complementary slackness fixes b and c: slack only where the dual is
    // inactive, dual slack only where alpha sits at its bound.
    lp.b = matvec(lp.a, alpha);
    for (std::size_t i = 0; i < m; ++i)
        if (beta[i] == 0.0) lp.b[i] += rng.uniform() * (1.0 + scale);
    lp.c = matvec_transpose(lp.a, beta);
    for (std::size_t j = 0; j < n; ++j)
        if (alpha[j] == 0.0) lp.c[j] -= rng.uniform() * (1.0 + scale);

    GenMeta meta;
    meta.seed = cfg.seed;
    meta.index = index;
    meta.edge_prob = p;
    meta.coeff_mean = mu_a;
    meta.coeff_std = sigma_a;
    meta.basis_split = gamma;
    meta.fractional_primal = lambda;
    meta.beta_fraction = cfg.beta_fraction;
    meta.planted_objective = dot(lp.c, alpha);
    lp.gen_meta = meta;
    lp.id = "lp-s" + std::to_string(cfg.seed) + "-i" + std::to_string(index);
    return lp;
}

std::vector<LpDatasetEntry> generate_lp_dataset(
    const LpGenConfig& cfg, std::size_t count,
    const std::function<void(const std::string&)>& on_skip) {
    std::vector<LpDatasetEntry> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        LpInstance lp = generate_lp(cfg, i);
        SolveRecord rec = run_portfolio(lp);
        const bool all_optimal =
            std::all_of(rec.statuses.begin(), rec.statuses.end(),
                        [](SolveStatus s) { return s == SolveStatus::Optimal; });
        if (!all_optimal) {
            if (on_skip) on_skip(lp.id);
            continue;
        }
        out.push_back({std::move(lp), std::move(rec)});
    }
    return out;
}

}  // namespace portfolio
