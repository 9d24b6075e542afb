#pragma once

#include <span>
#include <string>
#include <vector>

#include "oilrisk/config.hpp"
#include "oilrisk/linalg.hpp"
#include "oilrisk/panel.hpp"
#include "oilrisk/timeseries.hpp"

namespace oilrisk {

// ER(t) = ln(p_t / p_{t-1}) - r_f(t), where r_f(t) converts the annualized
// percent yield of month t to a monthly decimal: (yield/100)/12.
// Output has length n-1. Throws std::domain_error on non-positive prices.
std::vector<double> excess_log_return(std::span<const double> prices,
                                      std::span<const double> riskfree_annual_pct);

// ln(v_t / v_{t-1}); length n-1. Throws std::domain_error on non-positive values.
std::vector<double> log_change(std::span<const double> values);

// ln(x_t/x_{t-1}) - ln(x_{t-1}/x_{t-2}); length n-2. Requires n >= 3 and
// strictly positive values.
std::vector<double> second_log_diff(std::span<const double> values);

// Elementwise long - short in percentage points. Both series must cover the
// same months with no missing values; misalignment is a DataError.
TimeSeries spread(const TimeSeries& long_leg, const TimeSeries& short_leg);

// Per-month monthly decimal riskfree from an annualized percent yield.
std::vector<double> monthly_riskfree(std::span<const double> annual_pct_yield);

// Rank-based quantile normalization. The reference distribution is the
// per-rank mean of the sorted columns; every value is replaced by the
// reference value at its within-column rank, ties receiving the mean of the
// tied ranks' reference values. Columns must be equal length (>= 2).
std::vector<std::vector<double>> quantile_normalize(
    const std::vector<std::vector<double>>& columns);
Matrix quantile_normalize(const Matrix& columns);

// Applies each factor's transform tag to the raw level panel, trims all
// columns to the common post-transform length and attaches the target
// excess return. Optionally quantile-normalizes the factor matrix (never
// the target).
FactorPanel build_factor_panel(const RawPanel& raw, const RunConfig& config,
                               bool apply_quantile_normalize = false);

}  // namespace oilrisk
