#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oilrisk {

// Dense row-major matrix. Small problems only (p is a dozen or two here),
// so no blocking or expression templates.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::vector<double> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> values);

    [[nodiscard]] std::span<const double> row_span(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> matvec(const Matrix& a, std::span<const double> x);      // A x
std::vector<double> matvec_t(const Matrix& a, std::span<const double> x);    // A' x

// X' diag(w) X  (p x p, symmetric)
Matrix cross_weighted(const Matrix& x, std::span<const double> w);

// Least squares via Householder QR. Throws DataError when the design is
// rank deficient (|r_jj| below tol relative to the largest pivot).
std::vector<double> householder_lstsq(const Matrix& x, std::span<const double> y,
                                      double rcond = 1e-10);

// In-place Cholesky solve for a symmetric positive definite system.
// Returns false if the factorization breaks down.
bool cholesky_solve(Matrix a, std::vector<double> b, std::vector<double>& out);

struct EigenSym {
    std::vector<double> values;  // descending
    Matrix vectors;              // columns are the matching eigenvectors
};

// Cyclic Jacobi rotations for a symmetric matrix; sweeps until the
// off-diagonal Frobenius norm falls below `tol`.
EigenSym jacobi_eigen_sym(Matrix a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace oilrisk
