#pragma once

#include <cstddef>
#include <vector>

#include "portfolio/errors.hpp"

namespace portfolio {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Everything in this project is desk scale
// (m, n up to a couple thousand), so dense storage is the right default.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
Vector matvec_transpose(const Matrix& a, const Vector& x);  // A^T x

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double inf_norm(const Vector& v);
double frobenius_norm(const Matrix& a);

// The six per-vector statistics used throughout feature extraction.
// std_dev is the population form; smallest_nonzero_abs is 0 for an all-zero
// vector (sentinel keeping feature vectors finite).
struct StatSummary {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
    double norm = 0.0;
    double smallest_nonzero_abs = 0.0;
};

StatSummary vector_stats(const Vector& v);  // throws EmptyVectorError on empty input

// LU factorization with partial pivoting. Pivots below kPivotTol are treated
// as singular (degenerate basis signal for the simplex engine).
class LuFactor {
public:
    static constexpr double kPivotTol = 1e-12;

    explicit LuFactor(const Matrix& a);  // throws SingularMatrixError
    Vector solve(const Vector& rhs) const;            // A x = rhs
    Vector solve_transpose(const Vector& rhs) const;  // A^T y = rhs
    std::size_t size() const { return lu_.rows(); }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;  // perm_[i] = original row now at position i
};

Vector solve_linear(const Matrix& a, const Vector& rhs);

// Symmetric eigendecomposition by cyclic Jacobi rotations.
// values descending; vectors' columns are the matching orthonormal eigenvectors.
struct SymEig {
    Vector values;
    Matrix vectors;
};

SymEig jacobi_eigen(const Matrix& sym);

// Rank-k SVD: a ~ u * diag(sigma) * vt with sigma descending.
// Factors are zero-padded when k exceeds min(rows, cols) so downstream feature
// vectors keep a fixed length. Sign convention: the largest-magnitude entry of
// every left singular vector is non-negative.
struct TruncatedSvd {
    Matrix u;      // m x k
    Vector sigma;  // k
    Matrix vt;     // k x n
    std::size_t k = 0;
};

TruncatedSvd truncated_svd(const Matrix& a, std::size_t k);

}  // namespace portfolio
