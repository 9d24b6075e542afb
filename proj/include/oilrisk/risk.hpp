#pragma once

#include <span>
#include <string>
#include <vector>

#include "oilrisk/linalg.hpp"

namespace oilrisk {

// r_t = p_t / p_{t-1} - 1; requires strictly positive prices.
std::vector<double> simple_returns(std::span<const double> prices);

struct VarCvar {
    double var = 0.0;   // empirical (1-level) quantile, lower order statistic
    double cvar = 0.0;  // mean of returns at or below the VaR
};

// Historical VaR/CVaR at `level` in (0,1). The VaR is the 1-based order
// statistic at index ceil((1-level)*n); no interpolation or smoothing.
// Requires n >= 10.
VarCvar var_cvar(std::span<const double> returns, double level);

struct RiskRow {
    double level;
    VarCvar metrics;
};
std::vector<RiskRow> risk_report(std::span<const double> returns);  // 90/95/99%

struct PcaResult {
    std::vector<std::string> names;
    std::vector<double> eigenvalues;  // descending
    std::vector<double> proportions;  // eigenvalue shares, sum to 1
    Matrix loadings;                  // orthonormal columns
};

// Eigen-decomposition of the correlation (default) or covariance matrix of
// the columns, via cyclic Jacobi rotations. A zero-variance column under
// correlation mode is a domain error naming the column.
PcaResult pca(const Matrix& columns, const std::vector<std::string>& names,
              bool use_correlation = true);

}  // namespace oilrisk
