#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "portfolio/linalg.hpp"

namespace test_util {

inline portfolio::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed,
                                       double lo = -1.0, double hi = 1.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    portfolio::Matrix m(rows, cols);
    for (double& v : m.data()) v = dist(gen);
    return m;
}

inline portfolio::Vector random_vector(std::size_t n, std::uint32_t seed, double lo = -1.0,
                                       double hi = 1.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    portfolio::Vector v(n);
    for (double& x : v) x = dist(gen);
    return v;
}

// Diagonally dominant, hence comfortably non-singular.
inline portfolio::Matrix well_conditioned(std::size_t n, std::uint32_t seed) {
    portfolio::Matrix m = random_matrix(n, n, seed);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n);
    return m;
}

// Independent oracle: largest eigenvalues of a symmetric matrix by power iteration
// with deflation. Test-only; deliberately not the Jacobi path used in
// production code.
inline std::vector<double> power_iteration_eigenvalues(portfolio::Matrix a, std::size_t count,
                                                       std::uint32_t seed) {
    const std::size_t n = a.rows();
    std::vector<double> values;
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t k = 0; k < count && k < n; ++k) {
        portfolio::Vector v(n);
        for (double& x : v) x = dist(gen);
        double lambda = 0.0;
        for (int it = 0; it < 20000; ++it) {
            portfolio::Vector w = portfolio::matvec(a, v);
            const double norm = portfolio::norm2(w);
            if (norm < 1e-300) break;
            for (double& x : w) x /= norm;
            const double next = portfolio::dot(w, portfolio::matvec(a, w));
            const bool done = std::abs(next - lambda) <= 1e-13 * std::max(1.0, std::abs(next));
            lambda = next;
            v = w;
            if (done && it > 50) break;
        }
        values.push_back(lambda);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) -= lambda * v[i] * v[j];
    }
    return values;
}

}  // namespace test_util
