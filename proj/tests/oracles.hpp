// Test-only oracles, independent of the library's solver paths.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "doctest.h"
#include "oilrisk/linalg.hpp"
#include "oilrisk/quantreg.hpp"

namespace oracles {

// Plain Gaussian elimination with partial pivoting on a dense square system.
inline std::optional<std::vector<double>> gauss_solve(std::vector<std::vector<double>> a,
                                                      std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
        }
        if (std::abs(a[pivot][k]) < 1e-12) return std::nullopt;
        std::swap(a[k], a[pivot]);
        std::swap(b[k], b[pivot]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
        x[k] = s / a[k][k];
    }
    return x;
}

// OLS through the normal equations, solved by Gaussian elimination.
inline std::vector<double> ols_normal_equations(const oilrisk::Matrix& x,
                                                std::span<const double> y) {
    const std::size_t p = x.cols();
    std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t a = 0; a < p; ++a) {
            xty[a] += x(i, a) * y[i];
            for (std::size_t b = 0; b < p; ++b) xtx[a][b] += x(i, a) * x(i, b);
        }
    }
    auto beta = gauss_solve(std::move(xtx), std::move(xty));
    REQUIRE(beta.has_value());
    return *beta;
}

// Exhaustive quantile-regression oracle: a minimizer of the check loss exists
// at a coefficient vector interpolating p observations, so enumerate every
// nonsingular p-subset and take the best loss.
struct QrOracleResult {
    double loss = std::numeric_limits<double>::infinity();
    std::vector<double> beta;
};

inline void enumerate_subsets(std::size_t n, std::size_t p,
                              std::vector<std::size_t>& subset, std::size_t from,
                              const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (subset.size() == p) {
        fn(subset);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        subset.push_back(i);
        enumerate_subsets(n, p, subset, i + 1, fn);
        subset.pop_back();
    }
}

inline QrOracleResult qr_vertex_oracle(const oilrisk::Matrix& x, std::span<const double> y,
                                       double tau) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    QrOracleResult best;
    std::vector<std::size_t> subset;
    enumerate_subsets(n, p, subset, 0, [&](const std::vector<std::size_t>& rows) {
        std::vector<std::vector<double>> a(p, std::vector<double>(p));
        std::vector<double> b(p);
        for (std::size_t k = 0; k < p; ++k) {
            for (std::size_t j = 0; j < p; ++j) a[k][j] = x(rows[k], j);
            b[k] = y[rows[k]];
        }
        const auto beta = gauss_solve(std::move(a), std::move(b));
        if (!beta) return;
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fit = 0.0;
            for (std::size_t j = 0; j < p; ++j) fit += x(i, j) * (*beta)[j];
            loss += oilrisk::check_loss(y[i] - fit, tau);
        }
        if (loss < best.loss) {
            best.loss = loss;
            best.beta = *beta;
        }
    });
    return best;
}

// Random design helpers.
inline oilrisk::Matrix random_design(std::mt19937_64& rng, std::size_t n, std::size_t p,
                                     bool intercept = true) {
    std::normal_distribution<double> normal(0.0, 1.0);
    oilrisk::Matrix x(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            x(i, j) = (intercept && j == 0) ? 1.0 : normal(rng);
        }
    }
    return x;
}

}  // namespace oracles
