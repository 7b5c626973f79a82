#include "portfolio/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace portfolio {

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double* crow = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += arow[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_transpose(const Matrix& a, const Vector& x) {
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += arow[j] * xi;
    }
    return y;
}

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double inf_norm(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

StatSummary vector_stats(const Vector& v) {
    if (v.empty()) throw EmptyVectorError("vector_stats: empty vector");
    StatSummary s;
    s.min = v[0];
    s.max = v[0];
    double sum = 0.0;
    double sumsq = 0.0;
    double smallest = 0.0;
    for (double x : v) {
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
        sum += x;
        sumsq += x * x;
        const double ax = std::abs(x);
        if (x != 0.0 && (smallest == 0.0 || ax < smallest)) smallest = ax;
    }
    const double n = static_cast<double>(v.size());
    s.mean = sum / n;
    double var = 0.0;
    for (double x : v) var += (x - s.mean) * (x - s.mean);
    s.std_dev = std::sqrt(var / n);
    s.norm = std::sqrt(sumsq);
    s.smallest_nonzero_abs = smallest;
    return s;
}

LuFactor::LuFactor(const Matrix& a) : lu_(a), perm_(a.rows()) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw SingularMatrixError("LuFactor: matrix not square");
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < kPivotTol) throw SingularMatrixError("LuFactor: pivot below tolerance");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv_piv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) * inv_piv;
            lu_(i, k) = f;
            if (f == 0.0) continue;
            const double* krow = lu_.row(k);
            double* irow = lu_.row(i);
            for (std::size_t j = k + 1; j < n; ++j) irow[j] -= f * krow[j];
        }
    }
}

Vector LuFactor::solve(const Vector& rhs) const {
    const std::size_t n = size();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    // Ly = Pb (unit lower), then Ux = y.
    for (std::size_t i = 1; i < n; ++i) {
        const double* irow = lu_.row(i);
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= irow[j] * x[j];
        x[i] = s;
    }
    for (std::size_t ip = n; ip-- > 0;) {
        const double* irow = lu_.row(ip);
        double s = x[ip];
        for (std::size_t j = ip + 1; j < n; ++j) s -= irow[j] * x[j];
        x[ip] = s / irow[ip];
    }
    return x;
}

Vector LuFactor::solve_transpose(const Vector& rhs) const {
    // PA = LU so A^T = U^T L^T P; solve U^T w = rhs, L^T z = w, y = P^T z.
    const std::size_t n = size();
    Vector w(rhs);
    for (std::size_t i = 0; i < n; ++i) {
        double s = w[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * w[j];
        w[i] = s / lu_(i, i);
    }
    for (std::size_t ip = n; ip-- > 0;) {
        double s = w[ip];
        for (std::size_t j = ip + 1; j < n; ++j) s -= lu_(j, ip) * w[j];
        w[ip] = s;
    }
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[perm_[i]] = w[i];
    return y;
}

Vector solve_linear(const Matrix& a, const Vector& rhs) {
    return LuFactor(a).solve(rhs);
}

SymEig jacobi_eigen(const Matrix& sym) {
    const std::size_t n = sym.rows();
    Matrix g(sym);
    Matrix v = Matrix::identity(n);
    if (n == 0) return {Vector{}, v};

    const int max_sweeps = 60;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(g(i, j)));
    const double stop = 1e-14 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(g(p, q)));
        if (off <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double gpq = g(p, q);
                if (std::abs(gpq) <= stop) continue;
                const double theta = (g(q, q) - g(p, p)) / (2.0 * gpq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double gip = g(i, p), giq = g(i, q);
                    g(i, p) = c * gip - s * giq;
                    g(i, q) = s * gip + c * giq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double gpj = g(p, j), gqj = g(q, j);
                    g(p, j) = c * gpj - s * gqj;
                    g(q, j) = s * gpj + c * gqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Vector diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = g(i, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return diag[a] > diag[b]; });

    SymEig out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

namespace {

// Deterministic completion: extend the first `have` orthonormal columns of m
// (dim x k) to `want` columns by Gram-Schmidt over the standard basis.
void complete_orthonormal(Matrix& m, std::size_t have, std::size_t want) {
    const std::size_t dim = m.rows();
    std::size_t next = have;
    for (std::size_t e = 0; e < dim && next < want; ++e) {
        Vector cand(dim, 0.0);
        cand[e] = 1.0;
        for (std::size_t c = 0; c < next; ++c) {
            double proj = 0.0;
            for (std::size_t i = 0; i < dim; ++i) proj += cand[i] * m(i, c);
            for (std::size_t i = 0; i < dim; ++i) cand[i] -= proj * m(i, c);
        }
        const double nrm = norm2(cand);
        if (nrm < 0.5) continue;  // e_i mostly inside the span; try the next one
        for (std::size_t i = 0; i < dim; ++i) m(i, next) = cand[i] / nrm;
        ++next;
    }
}

}  // namespace

TruncatedSvd truncated_svd(const Matrix& a, std::size_t k) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    TruncatedSvd out;
    out.k = k;
    out.u = Matrix(m, k);
    out.sigma = Vector(k, 0.0);
    out.vt = Matrix(k, n);
    if (m == 0 || n == 0 || k == 0) return out;

    const std::size_t r = std::min(m, n);
    const std::size_t kk = std::min(k, r);

    // Eigendecompose the smaller Gram matrix, then recover the other factor.
    const bool gram_right = n <= m;  // A^T A when n <= m, else A A^T
    Matrix gram(r, r);
    if (gram_right) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double s = 0.0;
                for (std::size_t t = 0; t < m; ++t) s += a(t, i) * a(t, j);
                gram(i, j) = s;
                gram(j, i) = s;
            }
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                double s = 0.0;
                const double* ri = a.row(i);
                const double* rj = a.row(j);
                for (std::size_t t = 0; t < n; ++t) s += ri[t] * rj[t];
                gram(i, j) = s;
                gram(j, i) = s;
            }
    }

    const SymEig eig = jacobi_eigen(gram);
    Vector sigma(r);
    for (std::size_t i = 0; i < r; ++i) sigma[i] = std::sqrt(std::max(eig.values[i], 0.0));
    const double sig_tol = 1e-12 * std::max(sigma.empty() ? 0.0 : sigma[0], 1.0);

    Matrix u(m, kk);
    Matrix v(n, kk);
    std::size_t solid_u = kk, solid_v = kk;
    if (gram_right) {
        for (std::size_t c = 0; c < kk; ++c)
            for (std::size_t i = 0; i < n; ++i) v(i, c) = eig.vectors(i, c);
        for (std::size_t c = 0; c < kk; ++c) {
            if (sigma[c] <= sig_tol) {
                solid_u = std::min(solid_u, c);
                continue;
            }
            for (std::size_t i = 0; i < m; ++i) {
                double s = 0.0;
                const double* arow = a.row(i);
                for (std::size_t j = 0; j < n; ++j) s += arow[j] * v(j, c);
                u(i, c) = s / sigma[c];
            }
        }
        complete_orthonormal(u, solid_u, kk);
    } else {
        for (std::size_t c = 0; c < kk; ++c)
            for (std::size_t i = 0; i < m; ++i) u(i, c) = eig.vectors(i, c);
        for (std::size_t c = 0; c < kk; ++c) {
            if (sigma[c] <= sig_tol) {
                solid_v = std::min(solid_v, c);
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t i = 0; i < m; ++i) s += a(i, j) * u(i, c);
                v(j, c) = s / sigma[c];
            }
        }
        complete_orthonormal(v, solid_v, kk);
    }

    // Deterministic signs: flip each (u column, vt row) pair so u's
    // largest-magnitude entry is non-negative.
    for (std::size_t c = 0; c < kk; ++c) {
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (std::abs(u(i, c)) > best) {
                best = std::abs(u(i, c));
                arg = i;
            }
        }
        if (u(arg, c) < 0.0) {
            for (std::size_t i = 0; i < m; ++i) u(i, c) = -u(i, c);
            for (std::size_t j = 0; j < n; ++j) v(j, c) = -v(j, c);
        }
    }

    for (std::size_t c = 0; c < kk; ++c) {
        out.sigma[c] = sigma[c];
        for (std::size_t i = 0; i < m; ++i) out.u(i, c) = u(i, c);
        for (std::size_t j = 0; j < n; ++j) out.vt(c, j) = v(j, c);
    }
    return out;
}

}  // namespace portfolio
