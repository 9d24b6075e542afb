#include "oilrisk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oilrisk/errors.hpp"

namespace oilrisk {

std::vector<double> Matrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void Matrix::set_column(std::size_t j, std::span<const double> values) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> matvec_t(const Matrix& a, std::span<const double> x) {
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += a(i, j) * xi;
    }
    return out;
}

Matrix cross_weighted(const Matrix& x, std::span<const double> w) {
    const std::size_t p = x.cols();
    Matrix m(p, p, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double wi = w[i];
        const auto row = x.row_span(i);
        for (std::size_t a = 0; a < p; ++a) {
            const double wa = wi * row[a];
            for (std::size_t b = a; b < p; ++b) m(a, b) += wa * row[b];
        }
    }
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < a; ++b) m(a, b) = m(b, a);
    }
    return m;
}

std::vector<double> householder_lstsq(const Matrix& x, std::span<const double> y,
                                      double rcond) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (y.size() != n) throw std::invalid_argument("householder_lstsq: size mismatch");
    if (n < p) throw DataError("least squares needs at least as many rows as columns");

    // Work on a copy of [X | y]; R overwrites X, Q'y overwrites y.
    Matrix a = x;
    std::vector<double> b(y.begin(), y.end());

    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            a(k, k) = 0.0;
            continue;  // pivot zero; rank check below rejects it
        }
        const double alpha = a(k, k) >= 0 ? -norm : norm;
        // v = x_k - alpha e_k, scaled so v[k] = 1
        std::vector<double> v(n - k);
        v[0] = a(k, k) - alpha;
        for (std::size_t i = k + 1; i < n; ++i) v[i - k] = a(i, k);
        const double vkk = v[0];
        if (vkk == 0.0) continue;  // already triangular in this column
        double vtv = 0.0;
        for (double vi : v) vtv += vi * vi;
        const double beta = 2.0 / vtv;

        for (std::size_t j = k; j < p; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * a(i, j);
            const double f = beta * dot;
            for (std::size_t i = k; i < n; ++i) a(i, j) -= f * v[i - k];
        }
        double dotb = 0.0;
        for (std::size_t i = k; i < n; ++i) dotb += v[i - k] * b[i];
        const double fb = beta * dotb;
        for (std::size_t i = k; i < n; ++i) b[i] -= fb * v[i - k];
    }

    double max_diag = 0.0;
    for (std::size_t k = 0; k < p; ++k) max_diag = std::max(max_diag, std::abs(a(k, k)));
    if (max_diag == 0.0) throw DataError("design matrix is zero");
    for (std::size_t k = 0; k < p; ++k) {
        if (std::abs(a(k, k)) < rcond * max_diag) {
            throw DataError("design matrix is rank deficient (column " + std::to_string(k) + ")");
        }
    }

    std::vector<double> beta(p, 0.0);
    for (std::size_t k = p; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < p; ++j) s -= a(k, j) * beta[j];
        beta[k] = s / a(k, k);
    }
    return beta;
}

bool cholesky_solve(Matrix a, std::vector<double> b, std::vector<double>& out) {
    const std::size_t p = a.rows();
    if (a.cols() != p || b.size() != p) return false;
    // Lower Cholesky in place.
    for (std::size_t j = 0; j < p; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double l = std::sqrt(d);
        a(j, j) = l;
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / l;
        }
    }
    // Forward then backward substitution.
    for (std::size_t i = 0; i < p; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * b[k];
        b[i] = s / a(i, i);
    }
    for (std::size_t i = p; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < p; ++k) s -= a(k, i) * b[k];
        b[i] = s / a(i, i);
    }
    out = std::move(b);
    return true;
}

EigenSym jacobi_eigen_sym(Matrix a, double tol, int max_sweeps) {
    const std::size_t p = a.rows();
    if (a.cols() != p) throw std::invalid_argument("jacobi_eigen_sym: matrix not square");

    Matrix v(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) v(i, i) = 1.0;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) s += a(i, j) * a(i, j);
        }
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
        for (std::size_t i = 0; i + 1 < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                const double apq = a(i, j);
                if (apq == 0.0) continue;
                const double app = a(i, i);
                const double aqq = a(j, j);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < p; ++k) {
                    const double aki = a(k, i);
                    const double akj = a(k, j);
                    a(k, i) = c * aki - s * akj;
                    a(k, j) = s * aki + c * akj;
                }
                for (std::size_t k = 0; k < p; ++k) {
                    const double aik = a(i, k);
                    const double ajk = a(j, k);
                    a(i, k) = c * aik - s * ajk;
                    a(j, k) = s * aik + c * ajk;
                }
                for (std::size_t k = 0; k < p; ++k) {
                    const double vki = v(k, i);
                    const double vkj = v(k, j);
                    v(k, i) = c * vki - s * vkj;
                    v(k, j) = s * vki + c * vkj;
                }
            }
        }
    }

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(p);
    for (std::size_t i = 0; i < p; ++i) diag[i] = a(i, i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return diag[l] > diag[r]; });

    EigenSym result;
    result.values.resize(p);
    result.vectors = Matrix(p, p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
        result.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < p; ++i) result.vectors(i, k) = v(i, order[k]);
    }
    return result;
}

}  // namespace oilrisk
