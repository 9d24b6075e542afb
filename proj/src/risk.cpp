#include "oilrisk/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oilrisk/errors.hpp"

namespace oilrisk {

std::vector<double> simple_returns(std::span<const double> prices) {
    if (prices.size() < 2) {
        throw std::invalid_argument("simple_returns needs at least 2 prices");
    }
    for (double p : prices) {
        if (!(p > 0.0)) {
            throw std::domain_error("simple_returns: non-positive price " + std::to_string(p));
        }
    }
    std::vector<double> out(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        out[t - 1] = prices[t] / prices[t - 1] - 1.0;
    }
    return out;
}

VarCvar var_cvar(std::span<const double> returns, double level) {
    const std::size_t n = returns.size();
    if (n < 10) throw std::invalid_argument("var_cvar: need at least 10 returns");
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("var_cvar: level must lie in (0,1)");
    }

    std::vector<double> sorted(returns.begin(), returns.end());
    std::sort(sorted.begin(), sorted.end());

    // Lower order statistic: 1-based index ceil((1-level)*n). The small
    // backoff keeps (1-level)*n from drifting just above an integer in
    // floating point.
    const double raw = (1.0 - level) * static_cast<double>(n);
    std::size_t idx = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    idx = std::clamp<std::size_t>(idx, 1, n);

    VarCvar out;
    out.var = sorted[idx - 1];
    double tail_sum = 0.0;
    std::size_t tail_count = 0;
    for (double r : sorted) {
        if (r <= out.var) {
            tail_sum += r;
            ++tail_count;
        } else {
            break;
        }
    }
    out.cvar = tail_sum / static_cast<double>(tail_count);
    return out;
}

std::vector<RiskRow> risk_report(std::span<const double> returns) {
    std::vector<RiskRow> rows;
    for (double level : {0.90, 0.95, 0.99}) {
        rows.push_back({level, var_cvar(returns, level)});
    }
    return rows;
}

PcaResult pca(const Matrix& columns, const std::vector<std::string>& names,
              bool use_correlation) {
    const std::size_t n = columns.rows();
    const std::size_t k = columns.cols();
    if (names.size() != k) throw std::invalid_argument("pca: name count mismatch");
    if (n <= k) throw std::invalid_argument("pca: need more rows than columns");

    std::vector<double> mean(k, 0.0), sd(k, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        const auto col = columns.column(j);
        mean[j] = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(n);
        double ss = 0.0;
        for (double v : col) ss += (v - mean[j]) * (v - mean[j]);
        const double var = ss / static_cast<double>(n - 1);
        if (use_correlation) {
            if (var <= 0.0) {
                throw std::domain_error("pca: column '" + names[j] +
                                        "' has zero variance under correlation mode");
            }
            sd[j] = std::sqrt(var);
        }
    }

    Matrix cov(k, k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            const double da = (columns(i, a) - mean[a]) / sd[a];
            for (std::size_t b = a; b < k; ++b) {
                const double db = (columns(i, b) - mean[b]) / sd[b];
                cov(a, b) += da * db;
            }
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            cov(a, b) /= static_cast<double>(n - 1);
            cov(b, a) = cov(a, b);
        }
    }

    const auto eig = jacobi_eigen_sym(cov);
    double total = 0.0;
    for (double v : eig.values) {
        if (v < -1e-10) throw DataError("pca: negative eigenvalue " + std::to_string(v));
        total += v;
    }
    if (!(total > 0.0)) throw DataError("pca: all eigenvalues are zero");

    PcaResult result;
    result.names = names;
    result.eigenvalues = eig.values;
    result.loadings = eig.vectors;
    result.proportions.resize(k);
    for (std::size_t j = 0; j < k; ++j) result.proportions[j] = eig.values[j] / total;
    return result;
}

}  // namespace oilrisk
