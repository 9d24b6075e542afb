#include "oilrisk/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oilrisk/errors.hpp"

namespace oilrisk {

namespace {

void require_positive(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!(v > 0.0)) {
            throw std::domain_error(std::string(what) + ": non-positive value " +
                                    std::to_string(v));
        }
    }
}

// Lag (rows consumed at the head) of each transform.
std::size_t transform_lag(TransformTag tag) {
    switch (tag) {
        case TransformTag::ExcessLogReturn:
        case TransformTag::LogChange: return 1;
        case TransformTag::SecondLogDiff: return 2;
        case TransformTag::Level: return 0;
    }
    return 0;
}

}  // namespace

std::vector<double> monthly_riskfree(std::span<const double> annual_pct_yield) {
    std::vector<double> out(annual_pct_yield.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (annual_pct_yield[i] / 100.0) / 12.0;
    }
    return out;
}

std::vector<double> excess_log_return(std::span<const double> prices,
                                      std::span<const double> riskfree_annual_pct) {
    if (prices.size() != riskfree_annual_pct.size()) {
        throw DataError("excess_log_return: price and riskfree series are misaligned");
    }
    if (prices.size() < 2) {
        throw std::invalid_argument("excess_log_return needs at least 2 observations");
    }
    require_positive(prices, "excess_log_return");
    std::vector<double> out(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        const double rf = (riskfree_annual_pct[t] / 100.0) / 12.0;
        out[t - 1] = std::log(prices[t] / prices[t - 1]) - rf;
    }
    return out;
}

std::vector<double> log_change(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("log_change needs at least 2 observations");
    }
    require_positive(values, "log_change");
    std::vector<double> out(values.size() - 1);
    for (std::size_t t = 1; t < values.size(); ++t) {
        out[t - 1] = std::log(values[t] / values[t - 1]);
    }
    return out;
}

std::vector<double> second_log_diff(std::span<const double> values) {
    if (values.size() < 3) {
        throw std::invalid_argument("second_log_diff needs at least 3 observations");
    }
    require_positive(values, "second_log_diff");
    std::vector<double> out(values.size() - 2);
    for (std::size_t t = 2; t < values.size(); ++t) {
        out[t - 2] = std::log(values[t] / values[t - 1]) - std::log(values[t - 1] / values[t - 2]);
    }
    return out;
}

TimeSeries spread(const TimeSeries& long_leg, const TimeSeries& short_leg) {
    long_leg.validate();
    short_leg.validate();
    if (long_leg.size() != short_leg.size()) {
        throw DataError("spread: series '" + long_leg.name + "' and '" + short_leg.name +
                        "' cover different months");
    }
    TimeSeries out;
    out.name = long_leg.name + "-" + short_leg.name;
    out.observations.reserve(long_leg.size());
    for (std::size_t i = 0; i < long_leg.size(); ++i) {
        const auto& a = long_leg.observations[i];
        const auto& b = short_leg.observations[i];
        if (a.month != b.month) {
            throw DataError("spread: month mismatch at " + format_month(a.month) + " vs " +
                            format_month(b.month));
        }
        if (!a.value || !b.value) {
            throw DataError("spread: missing value at " + format_month(a.month));
        }
        out.observations.push_back({a.month, *a.value - *b.value});
    }
    return out;
}

std::vector<std::vector<double>> quantile_normalize(
    const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) return {};
    const std::size_t n = columns.front().size();
    if (n < 2) throw DataError("quantile_normalize: columns need at least 2 rows");
    for (const auto& col : columns) {
        if (col.size() != n) throw DataError("quantile_normalize: ragged columns");
    }
    const std::size_t k = columns.size();

    // Reference distribution: per-rank mean of the sorted columns.
    std::vector<std::vector<double>> sorted(k);
    for (std::size_t j = 0; j < k; ++j) {
        sorted[j] = columns[j];
        std::sort(sorted[j].begin(), sorted[j].end());
    }
    std::vector<double> reference(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += sorted[j][r];
        reference[r] = s / static_cast<double>(k);
    }

    // Ranks resolve ties positionally (stable by input order), so every
    // column's sorted output is exactly the reference sequence.
    std::vector<std::vector<double>> out(k, std::vector<double>(n));
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return columns[j][a] < columns[j][b];
        });
        for (std::size_t r = 0; r < n; ++r) out[j][order[r]] = reference[r];
    }
    return out;
}

Matrix quantile_normalize(const Matrix& columns) {
    std::vector<std::vector<double>> cols(columns.cols());
    for (std::size_t j = 0; j < columns.cols(); ++j) cols[j] = columns.column(j);
    const auto normalized = quantile_normalize(cols);
    Matrix out(columns.rows(), columns.cols());
    for (std::size_t j = 0; j < columns.cols(); ++j) out.set_column(j, normalized[j]);
    return out;
}

FactorPanel build_factor_panel(const RawPanel& raw, const RunConfig& config,
                               bool apply_quantile_normalize) {
    if (config.factors.empty()) throw ConfigError("factor list is empty");
    const std::size_t n = raw.months.size();

    std::size_t max_lag = 1;  // the target's excess return consumes one row
    for (const auto& f : config.factors) {
        max_lag = std::max(max_lag, transform_lag(f.tag));
    }
    if (n <= max_lag) {
        throw DataError("panel too short for the configured transforms");
    }
    const std::size_t out_rows = n - max_lag;

    auto tail = [&](std::vector<double> v) {
        return std::vector<double>(v.end() - static_cast<std::ptrdiff_t>(out_rows), v.end());
    };

    const auto riskfree_pct = raw.column(config.riskfree);

    FactorPanel panel;
    panel.months.assign(raw.months.end() - static_cast<std::ptrdiff_t>(out_rows),
                        raw.months.end());
    panel.target = tail(excess_log_return(raw.column(config.target), riskfree_pct));
    panel.riskfree = tail(monthly_riskfree(riskfree_pct));

    panel.factors = Matrix(out_rows, config.factors.size());
    for (std::size_t j = 0; j < config.factors.size(); ++j) {
        const auto& f = config.factors[j];
        const auto source = raw.column(f.source);
        std::vector<double> col;
        switch (f.tag) {
            case TransformTag::ExcessLogReturn:
                col = excess_log_return(source, riskfree_pct);
                break;
            case TransformTag::LogChange: col = log_change(source); break;
            case TransformTag::SecondLogDiff: col = second_log_diff(source); break;
            case TransformTag::Level: col = source; break;
        }
        panel.factors.set_column(j, tail(std::move(col)));
        panel.factor_names.push_back(f.name);
    }

    if (apply_quantile_normalize) {
        panel.factors = quantile_normalize(panel.factors);
    }
    panel.validate();
    return panel;
}

}  // namespace oilrisk
