#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oilrisk/linalg.hpp"
#include "oilrisk/quantreg.hpp"
#include "oilrisk/testresult.hpp"

namespace oilrisk {

// Augmented Dickey-Fuller unit-root test, constant-only regression.
// Lag order chosen by AIC over 0..max_lag (default floor(12*(n/100)^0.25));
// p-value from the MacKinnon response-surface approximation.
TestResult adf_test(std::span<const double> series, std::optional<int> max_lag = {});

// Finite-sample ADF critical value for the constant-only case at level 1, 5
// or 10 (percent), from the MacKinnon response-surface coefficients.
double adf_critical_value(double level_pct, std::size_t nobs);

// JB = n/6 * (S^2 + (K-3)^2 / 4), p-value from chi2(2).
double jb_statistic(std::size_t n, double skewness, double kurtosis);
TestResult jarque_bera(std::span<const double> sample);

// Royston's AS R94 approximation; valid for 3 <= n <= 5000.
TestResult shapiro_wilk(std::span<const double> sample);

// K^2 = Z1(skew)^2 + Z2(kurt)^2, chi2(2); requires n >= 20.
TestResult dagostino_k2(std::span<const double> sample);

// A^2 on the standardized sample with the (1 + 0.75/n + 2.25/n^2) correction,
// judged against the tabled critical values; no p-value.
TestResult anderson_darling(std::span<const double> sample);

// LM = n R^2 of squared residuals on the design, chi2(p-1); the F variant
// is reported alongside.
TestResult breusch_pagan(const OlsFit& fit, const Matrix& design);

// DW = sum (e_t - e_{t-1})^2 / sum e_t^2. Statistic only; the verdict uses
// the 1.5-2.5 heuristic band (no exact bounds tables).
TestResult durbin_watson(std::span<const double> residuals);

// Auxiliary regression of residuals on the design plus residual lags 1..p
// (pre-sample lags zero-filled); LM = n R^2, chi2(lags), F variant included.
TestResult breusch_godfrey(const OlsFit& fit, const Matrix& design, int lags);

// RESET: F-test of fitted^2 and fitted^3 added to the design.
TestResult reset_test(const OlsFit& fit, const Matrix& design, std::span<const double> y);

// OLS-CUSUM parameter-stability test: sup_t |cumsum(e)_t| / (sigma sqrt(n)),
// critical values 1.63/1.36/1.22 at 1/5/10%, p-value from the boundary
// crossing series 2 * sum_k (-1)^{k+1} exp(-2 k^2 a^2).
TestResult cusum_ols(const OlsFit& fit);

// VIF_j = 1 / (1 - R2_j) from regressing column j on the rest + intercept.
std::vector<double> vif(const Matrix& factors, const std::vector<std::string>& names);

struct Descriptive {
    double mean = 0, median = 0, max = 0, min = 0;
    double std_dev = 0;   // n-1 denominator
    double skewness = 0;  // g1, biased moments
    double kurtosis = 0;  // raw Pearson kurtosis K (not excess), JB convention
};
Descriptive describe(std::span<const double> sample);

}  // namespace oilrisk
