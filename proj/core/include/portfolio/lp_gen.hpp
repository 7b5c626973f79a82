#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "portfolio/lp.hpp"
#include "portfolio/rng.hpp"
#include "portfolio/simplex.hpp"

namespace portfolio {

// Per-instance hyperparameters are drawn from these ranges/distributions:
// p ~ U(p_range), mu_A ~ N(0,1), sigma_A ~ U(1,10), gamma ~ U(0.2,0.8),
// lambda ~ N(0,1), Beta fraction a = 0.5.
struct LpGenConfig {
    std::size_t m_min = 120, m_max = 200;
    std::size_t n_min = 50, n_max = 100;
    double p_min = 0.2, p_max = 0.8;
    double sigma_min = 1.0, sigma_max = 10.0;
    double gamma_min = 0.2, gamma_max = 0.8;
    double beta_fraction = 0.5;
    std::uint64_t seed = 0;
};

// One inequality-form instance, feasible and bounded by construction: the
// planted pair (alpha, beta) satisfies complementary slackness, so the
// optimal objective is exactly c^T alpha (stored in gen_meta).
LpInstance generate_lp(const LpGenConfig& cfg, std::uint64_t index);

struct LpDatasetEntry {
    LpInstance instance;
    SolveRecord record;
};

// Generates `count` instances and labels each with the five-rule portfolio.
// Instances where any rule fails to reach Optimal are skipped (reported via
// on_skip), never relabeled. Deterministic in (cfg.seed, index).
std::vector<LpDatasetEntry> generate_lp_dataset(
    const LpGenConfig& cfg, std::size_t count,
    const std::function<void(const std::string&)>& on_skip = {});

}  // namespace portfolio
