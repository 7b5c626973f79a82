#pragma once

#include <cstddef>
#include <span>

namespace portfolio {

struct WilcoxonResult {
    double w = 0.0;               // min(W+, W-)
    std::size_t n_effective = 0;  // pairs with nonzero difference
    double p_value = 1.0;         // two-sided
    bool all_zero = false;        // every difference was zero
};

// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped,
// tied absolute differences get average ranks. The null distribution is exact
// for n_effective <= 25 and a tie-corrected, continuity-corrected normal
// approximation beyond that.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

}  // namespace portfolio
