#include "portfolio/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "portfolio/errors.hpp"

namespace portfolio {

namespace {

// Exact right/left tail of W+ over all 2^n sign assignments. Average ranks
// are multiples of 1/2, so doubling them makes every achievable sum an
// integer and the distribution a plain subset-sum count.
double exact_two_sided_p(const std::vector<double>& ranks, double w_plus) {
    const std::size_t n = ranks.size();
    std::vector<std::uint64_t> doubled(n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        doubled[i] = static_cast<std::uint64_t>(std::llround(2.0 * ranks[i]));
        total += doubled[i];
    }
    std::vector<std::uint64_t> count(total + 1, 0);
    count[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t r = doubled[i];
        for (std::uint64_t s = total + 1; s-- > r;) count[s] += count[s - r];
    }
    const auto w2 = static_cast<std::uint64_t>(std::llround(2.0 * w_plus));
    std::uint64_t below = 0, above = 0;
    for (std::uint64_t s = 0; s <= total; ++s) {
        if (s <= w2) below += count[s];
        if (s >= w2) above += count[s];
    }
    const double denom = std::ldexp(1.0, static_cast<int>(n));  // 2^n
    const double p = 2.0 * std::min(static_cast<double>(below), static_cast<double>(above)) / denom;
    return std::min(p, 1.0);
}

double normal_two_sided_p(const std::vector<double>& ranks, double w_plus,
                          const std::vector<std::size_t>& tie_sizes) {
    const auto n = static_cast<double>(ranks.size());
    const double mu = n * (n + 1.0) / 4.0;
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    for (std::size_t t : tie_sizes) {
        const auto td = static_cast<double>(t);
        var -= td * (td * td - 1.0) / 48.0;
    }
    if (var <= 0.0) return 1.0;
    double num = w_plus - mu;
    // Continuity correction toward the mean.
    if (num > 0.5) num -= 0.5;
    else if (num < -0.5) num += 0.5;
    else num = 0.0;
    const double z = num / std::sqrt(var);
    return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        throw InvalidParamError("wilcoxon: need equal-length non-empty samples");

    std::vector<double> diffs;
    diffs.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }

    WilcoxonResult res;
    res.n_effective = diffs.size();
    if (diffs.empty()) {
        res.all_zero = true;
        res.p_value = 1.0;
        return res;
    }

    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(diffs[a]) < std::abs(diffs[b]);
    });

    std::vector<double> ranks(n, 0.0);
    std::vector<std::size_t> tie_sizes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        if (j - i > 1) tie_sizes.push_back(j - i);
        i = j;
    }

    double w_plus = 0.0, w_minus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        (diffs[i] > 0.0 ? w_plus : w_minus) += ranks[i];
    res.w = std::min(w_plus, w_minus);

    std::vector<double> sorted_ranks(ranks);
    res.p_value = n <= 25 ? exact_two_sided_p(sorted_ranks, w_plus)
                          : normal_two_sided_p(sorted_ranks, w_plus, tie_sizes);
    return res;
}

}  // namespace portfolio
