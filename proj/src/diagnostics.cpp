#include "oilrisk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oilrisk/distributions.hpp"
#include "oilrisk/errors.hpp"

namespace oilrisk {

namespace {

struct Moments {
    double mean = 0, m2 = 0, m3 = 0, m4 = 0;  // biased central moments
};

Moments central_moments(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    Moments m;
    m.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    for (double v : x) {
        const double d = v - m.mean;
        m.m2 += d * d;
        m.m3 += d * d * d;
        m.m4 += d * d * d * d;
    }
    m.m2 /= n;
    m.m3 /= n;
    m.m4 /= n;
    return m;
}

double sum_squares(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return s;
}

// R^2 of `y` regressed on `design`; throws DataError on singular designs.
double aux_r2(const Matrix& design, std::span<const double> y) {
    const auto beta = householder_lstsq(design, y);
    const auto fitted = matvec(design, beta);
    const double n = static_cast<double>(y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double rss = 0.0, tss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        rss += (y[i] - fitted[i]) * (y[i] - fitted[i]);
        tss += (y[i] - mean) * (y[i] - mean);
    }
    if (tss <= 0.0) return 0.0;
    return 1.0 - rss / tss;
}

Verdict verdict_from_p(double p) { return p < 0.05 ? Verdict::Reject : Verdict::FailToReject; }

// ---------------------------------------------------------------------------
// ADF: MacKinnon response-surface constants, constant-only case.
// Critical values: cv = b0 + b1/T + b2/T^2 + b3/T^3 (MacKinnon 2010, "c").
// P-values: Phi(polynomial(t)) with the MacKinnon (1994) small/large-p fits.
// ---------------------------------------------------------------------------

constexpr double kAdfCrit[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},  // 1%
    {-2.86154, -2.8903, -4.234, -40.040},   // 5%
    {-2.56677, -1.5384, -2.809, 0.0},       // 10%
};

constexpr double kAdfTauStar = -1.61;
constexpr double kAdfTauMin = -18.83;
constexpr double kAdfTauMax = 2.74;
constexpr double kAdfSmallP[3] = {2.1659, 1.4412, 0.038269};
constexpr double kAdfLargeP[4] = {1.7339, 0.93202, 0.05971, 0.00737};

double adf_pvalue(double stat) {
    if (stat <= kAdfTauMin) return 0.0;
    if (stat >= kAdfTauMax) return 1.0;
    double poly;
    if (stat <= kAdfTauStar) {
        poly = kAdfSmallP[0] + kAdfSmallP[1] * stat + kAdfSmallP[2] * stat * stat;
    } else {
        poly = kAdfLargeP[0] + kAdfLargeP[1] * stat + kAdfLargeP[2] * stat * stat +
               kAdfLargeP[3] * stat * stat * stat;
    }
    return std::clamp(normal_cdf(poly), 0.0, 1.0);
}

struct AdfRegression {
    double tstat = 0.0;
    double rss = 0.0;
    std::size_t nobs = 0;
    std::size_t nparams = 0;
};

// Delta-y regressed on [1, y_{t-1}, dy_{t-1}..dy_{t-p}] over rows
// start_t..n-1 of the original series.
AdfRegression adf_regression(std::span<const double> y, int lag, std::size_t start_t) {
    const std::size_t n = y.size();
    const std::size_t rows = n - start_t;
    const std::size_t p = 2 + static_cast<std::size_t>(lag);
    if (rows <= p + 2) throw DataError("adf_test: series too short for the requested lags");

    Matrix x(rows, p);
    std::vector<double> dy(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = start_t + r;
        dy[r] = y[t] - y[t - 1];
        x(r, 0) = 1.0;
        x(r, 1) = y[t - 1];
        for (int l = 1; l <= lag; ++l) {
            x(r, 1 + static_cast<std::size_t>(l)) = y[t - l] - y[t - l - 1];
        }
    }

    const auto beta = householder_lstsq(x, dy);  // DataError if degenerate
    const auto fitted = matvec(x, beta);
    double rss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const double e = dy[r] - fitted[r];
        rss += e * e;
    }
    const double sigma2 = rss / static_cast<double>(rows - p);

    // Var(beta_1) from the (X'X)^{-1} diagonal.
    std::vector<double> ones(rows, 1.0);
    Matrix xtx = cross_weighted(x, ones);
    std::vector<double> e1(p, 0.0);
    e1[1] = 1.0;
    std::vector<double> col;
    if (!cholesky_solve(xtx, e1, col)) throw DataError("adf_test: degenerate regression");
    const double se = std::sqrt(sigma2 * col[1]);
    if (!(se > 0.0)) throw DataError("adf_test: degenerate regression");

    return {beta[1] / se, rss, rows, p};
}

}  // namespace

double adf_critical_value(double level_pct, std::size_t nobs) {
    int row;
    if (level_pct == 1.0) {
        row = 0;
    } else if (level_pct == 5.0) {
        row = 1;
    } else if (level_pct == 10.0) {
        row = 2;
    } else {
        throw std::invalid_argument("adf_critical_value: level must be 1, 5 or 10");
    }
    const double t = static_cast<double>(nobs);
    return kAdfCrit[row][0] + kAdfCrit[row][1] / t + kAdfCrit[row][2] / (t * t) +
           kAdfCrit[row][3] / (t * t * t);
}

TestResult adf_test(std::span<const double> series, std::optional<int> max_lag) {
    const std::size_t n = series.size();
    if (n < 20) throw std::invalid_argument("adf_test: need at least 20 observations");

    int maxlag;
    if (max_lag) {
        maxlag = *max_lag;
        if (maxlag < 0) throw std::invalid_argument("adf_test: max_lag must be >= 0");
        if (n < static_cast<std::size_t>(maxlag) + 12) {
            throw DataError("adf_test: series too short for max_lag " + std::to_string(maxlag));
        }
    } else {
        maxlag = static_cast<int>(
            std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
        maxlag = std::min<int>(maxlag, static_cast<int>(n) / 2 - 10);
        maxlag = std::max(maxlag, 0);
    }

    // AIC over a common sample so candidate fits are comparable.
    const std::size_t common_start = static_cast<std::size_t>(maxlag) + 1;
    int best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int lag = 0; lag <= maxlag; ++lag) {
        const auto reg = adf_regression(series, lag, common_start);
        const double nobs = static_cast<double>(reg.nobs);
        const double aic = nobs * std::log(reg.rss / nobs) +
                           2.0 * static_cast<double>(reg.nparams);
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = lag;
        }
    }

    // Final regression uses every row the chosen lag allows.
    const auto reg = adf_regression(series, best_lag, static_cast<std::size_t>(best_lag) + 1);

    TestResult result;
    result.name = "adf";
    result.statistic = reg.tstat;
    result.lags = best_lag;
    result.p_value = adf_pvalue(reg.tstat);
    result.verdict = verdict_from_p(*result.p_value);
    return result;
}

double jb_statistic(std::size_t n, double skewness, double kurtosis) {
    const double k3 = kurtosis - 3.0;
    return static_cast<double>(n) / 6.0 * (skewness * skewness + k3 * k3 / 4.0);
}

TestResult jarque_bera(std::span<const double> sample) {
    if (sample.size() < 8) throw std::invalid_argument("jarque_bera: need n >= 8");
    const auto m = central_moments(sample);
    if (m.m2 <= 0.0) throw std::domain_error("jarque_bera: sample has zero variance");
    const double s = m.m3 / std::pow(m.m2, 1.5);
    const double k = m.m4 / (m.m2 * m.m2);

    TestResult result;
    result.name = "jarque-bera";
    result.statistic = jb_statistic(sample.size(), s, k);
    result.df1 = 2.0;
    result.p_value = 1.0 - chi2_cdf(result.statistic, 2.0);
    result.verdict = verdict_from_p(*result.p_value);
    return result;
}

// Royston (1995), AS R94.
TestResult shapiro_wilk(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3 || n > 5000) throw std::invalid_argument("shapiro_wilk: n must be in [3, 5000]");

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double ssd = 0.0;
    for (double v : x) ssd += (v - mean) * (v - mean);
    if (ssd <= 0.0) throw std::domain_error("shapiro_wilk: sample has zero variance");

    std::vector<double> m(n);
    double ssumm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = normal_ppf((static_cast<double>(i + 1) - 0.375) /
                          (static_cast<double>(n) + 0.25));
        ssumm2 += m[i] * m[i];
    }

    std::vector<double> a(n, 0.0);
    const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
    auto poly1 = [&](double cn) {
        return -2.706056 * std::pow(rsn, 5) + 4.434685 * std::pow(rsn, 4) -
               2.071190 * std::pow(rsn, 3) - 0.147981 * rsn * rsn + 0.221157 * rsn + cn;
    };
    auto poly2 = [&](double cn1) {
        return -3.582633 * std::pow(rsn, 5) + 5.682633 * std::pow(rsn, 4) -
               1.752461 * std::pow(rsn, 3) - 0.293762 * rsn * rsn + 0.042981 * rsn + cn1;
    };

    const double root = std::sqrt(ssumm2);
    a[n - 1] = poly1(m[n - 1] / root);
    std::size_t mid_from = 1;
    double fac;
    if (n > 5) {
        a[n - 2] = poly2(m[n - 2] / root);
        mid_from = 2;
        fac = std::sqrt((ssumm2 - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
                        (1.0 - 2.0 * a[n - 1] * a[n - 1] - 2.0 * a[n - 2] * a[n - 2]));
        a[1] = -a[n - 2];
    } else {
        fac = std::sqrt((ssumm2 - 2.0 * m[n - 1] * m[n - 1]) /
                        (1.0 - 2.0 * a[n - 1] * a[n - 1]));
    }
    a[0] = -a[n - 1];
    for (std::size_t i = mid_from; i < n - mid_from; ++i) a[i] = m[i] / fac;

    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) num += a[i] * x[i];
    double w = num * num / ssd;
    w = std::min(w, 1.0 - 1e-15);

    double p;
    if (n == 3) {
        constexpr double kPi6 = 1.90985931710274;   // 6/pi
        constexpr double kStqr = 1.04719755119660;  // asin(sqrt(3/4))
        p = kPi6 * (std::asin(std::sqrt(w)) - kStqr);
        p = std::clamp(p, 0.0, 1.0);
    } else {
        double z;
        const double dn = static_cast<double>(n);
        if (n <= 11) {
            const double g = -2.273 + 0.459 * dn;
            const double mu = 0.5440 - 0.39978 * dn + 0.025054 * dn * dn -
                              0.0006714 * dn * dn * dn;
            const double sig = std::exp(1.3822 - 0.77857 * dn + 0.062767 * dn * dn -
                                        0.0020322 * dn * dn * dn);
            z = (-std::log(g - std::log1p(-w)) - mu) / sig;
        } else {
            const double u = std::log(dn);
            const double mu = -1.5861 - 0.31082 * u - 0.083751 * u * u + 0.0038915 * u * u * u;
            const double sig = std::exp(-0.4803 - 0.082676 * u + 0.0030302 * u * u);
            z = (std::log1p(-w) - mu) / sig;
        }
        p = 1.0 - normal_cdf(z);
    }

    TestResult result;
    result.name = "shapiro-wilk";
    result.statistic = w;
    result.p_value = p;
    result.verdict = verdict_from_p(p);
    return result;
}

// D'Agostino (1970) skewness and Anscombe-Glynn (1983) kurtosis transforms.
TestResult dagostino_k2(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 20) throw std::invalid_argument("dagostino_k2: need n >= 20");
    const auto mom = central_moments(sample);
    if (mom.m2 <= 0.0) throw std::domain_error("dagostino_k2: sample has zero variance");
    const double dn = static_cast<double>(n);
    const double g1 = mom.m3 / std::pow(mom.m2, 1.5);
    const double b2 = mom.m4 / (mom.m2 * mom.m2);

    // Skewness -> Z1
    const double y = g1 * std::sqrt((dn + 1.0) * (dn + 3.0) / (6.0 * (dn - 2.0)));
    const double beta2 = 3.0 * (dn * dn + 27.0 * dn - 70.0) * (dn + 1.0) * (dn + 3.0) /
                         ((dn - 2.0) * (dn + 5.0) * (dn + 7.0) * (dn + 9.0));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(std::log(std::sqrt(w2)));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    const double ya = y / alpha;
    const double z1 = delta * std::log(ya + std::sqrt(ya * ya + 1.0));

    // Kurtosis -> Z2
    const double eb2 = 3.0 * (dn - 1.0) / (dn + 1.0);
    const double vb2 = 24.0 * dn * (dn - 2.0) * (dn - 3.0) /
                       ((dn + 1.0) * (dn + 1.0) * (dn + 3.0) * (dn + 5.0));
    const double xk = (b2 - eb2) / std::sqrt(vb2);
    const double sqrtb1 = 6.0 * (dn * dn - 5.0 * dn + 2.0) / ((dn + 7.0) * (dn + 9.0)) *
                          std::sqrt(6.0 * (dn + 3.0) * (dn + 5.0) /
                                    (dn * (dn - 2.0) * (dn - 3.0)));
    const double aa = 6.0 + 8.0 / sqrtb1 *
                                (2.0 / sqrtb1 + std::sqrt(1.0 + 4.0 / (sqrtb1 * sqrtb1)));
    const double z2 = ((1.0 - 2.0 / (9.0 * aa)) -
                       std::cbrt((1.0 - 2.0 / aa) / (1.0 + xk * std::sqrt(2.0 / (aa - 4.0))))) *
                      std::sqrt(9.0 * aa / 2.0);

    TestResult result;
    result.name = "dagostino-k2";
    result.statistic = z1 * z1 + z2 * z2;
    result.df1 = 2.0;
    result.p_value = 1.0 - chi2_cdf(result.statistic, 2.0);
    result.verdict = verdict_from_p(*result.p_value);
    return result;
}

TestResult anderson_darling(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 8) throw std::invalid_argument("anderson_darling: need n >= 8");
    const double dn = static_cast<double>(n);

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / dn;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    if (ss <= 0.0) throw std::domain_error("anderson_darling: sample has zero variance");
    const double sd = std::sqrt(ss / (dn - 1.0));

    double a2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = (x[i] - mean) / sd;
        const double zrev = (x[n - 1 - i] - mean) / sd;
        const double cdf_lo = std::clamp(normal_cdf(zi), 1e-300, 1.0 - 1e-16);
        const double cdf_hi = std::clamp(normal_cdf(zrev), 1e-300, 1.0 - 1e-16);
        a2 += (2.0 * static_cast<double>(i + 1) - 1.0) *
              (std::log(cdf_lo) + std::log1p(-cdf_hi));
    }
    a2 = -dn - a2 / dn;
    const double corrected = a2 * (1.0 + 0.75 / dn + 2.25 / (dn * dn));

    TestResult result;
    result.name = "anderson-darling";
    result.statistic = corrected;
    result.critical_values = {{15.0, 0.546}, {10.0, 0.622}, {5.0, 0.746},
                              {2.0, 0.870}, {1.0, 1.035}};
    result.verdict = corrected > 0.746 ? Verdict::Reject : Verdict::FailToReject;
    return result;
}

TestResult breusch_pagan(const OlsFit& fit, const Matrix& design) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (fit.residuals.size() != n) {
        throw std::invalid_argument("breusch_pagan: fit and design disagree");
    }
    if (p < 2) throw std::invalid_argument("breusch_pagan: design has no regressors");

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = fit.residuals[i] * fit.residuals[i];

    TestResult result;
    result.name = "breusch-pagan";
    result.df1 = static_cast<double>(p - 1);
    result.df2 = static_cast<double>(n - p);

    const double mean_sq = std::accumulate(sq.begin(), sq.end(), 0.0) / static_cast<double>(n);
    double var_sq = 0.0;
    for (double v : sq) var_sq += (v - mean_sq) * (v - mean_sq);
    if (var_sq <= 0.0) {
        // Squared residuals are constant; no heteroskedasticity detectable.
        result.statistic = 0.0;
        result.p_value = 1.0;
        result.f_statistic = 0.0;
        result.f_p_value = 1.0;
        result.verdict = Verdict::FailToReject;
        return result;
    }

    const double r2 = aux_r2(design, sq);
    result.statistic = static_cast<double>(n) * r2;
    result.p_value = 1.0 - chi2_cdf(result.statistic, static_cast<double>(p - 1));
    result.f_statistic = (r2 / static_cast<double>(p - 1)) /
                         ((1.0 - r2) / static_cast<double>(n - p));
    result.f_p_value = 1.0 - f_cdf(*result.f_statistic, static_cast<double>(p - 1),
                                   static_cast<double>(n - p));
    result.verdict = verdict_from_p(*result.p_value);
    return result;
}

TestResult durbin_watson(std::span<const double> residuals) {
    const std::size_t n = residuals.size();
    if (n < 3) throw std::invalid_argument("durbin_watson: need n >= 3");
    const double rss = sum_squares(residuals);
    if (rss <= 0.0) throw std::domain_error("durbin_watson: residual sum of squares is zero");
    double num = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double d = residuals[t] - residuals[t - 1];
        num += d * d;
    }
    TestResult result;
    result.name = "durbin-watson";
    result.statistic = num / rss;
    // Heuristic band; DW has no exact p-value here.
    result.verdict = (result.statistic < 1.5 || result.statistic > 2.5) ? Verdict::Reject
                                                                        : Verdict::FailToReject;
    return result;
}

TestResult breusch_godfrey(const OlsFit& fit, const Matrix& design, int lags) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (lags <= 0) throw std::invalid_argument("breusch_godfrey: lags must be >= 1");
    if (static_cast<std::size_t>(lags) >= n) {
        throw std::invalid_argument("breusch_godfrey: lags must be < n");
    }
    if (fit.residuals.size() != n) {
        throw std::invalid_argument("breusch_godfrey: fit and design disagree");
    }

    const std::size_t paux = p + static_cast<std::size_t>(lags);
    Matrix aux(n, paux);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) aux(i, j) = design(i, j);
        for (int l = 1; l <= lags; ++l) {
            // Pre-sample residual lags are zero-filled.
            aux(i, p + static_cast<std::size_t>(l - 1)) =
                i >= static_cast<std::size_t>(l) ? fit.residuals[i - l] : 0.0;
        }
    }

    const double r2 = aux_r2(aux, fit.residuals);
    TestResult result;
    result.name = "breusch-godfrey";
    result.lags = lags;
    result.df1 = static_cast<double>(lags);
    result.df2 = static_cast<double>(n - paux);
    result.statistic = static_cast<double>(n) * r2;
    result.p_value = 1.0 - chi2_cdf(result.statistic, static_cast<double>(lags));
    result.f_statistic = (r2 / static_cast<double>(lags)) /
                         ((1.0 - r2) / static_cast<double>(n - paux));
    result.f_p_value = 1.0 - f_cdf(*result.f_statistic, static_cast<double>(lags),
                                   static_cast<double>(n - paux));
    result.verdict = verdict_from_p(*result.p_value);
    return result;
}

TestResult reset_test(const OlsFit& fit, const Matrix& design, std::span<const double> y) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (fit.fitted.size() != n || y.size() != n) {
        throw std::invalid_argument("reset_test: fit, design and y disagree");
    }
    const auto [lo, hi] = std::minmax_element(fit.fitted.begin(), fit.fitted.end());
    if (*hi - *lo <= 1e-12 * (1.0 + std::abs(*hi))) {
        throw DataError("reset_test: fitted values are constant");
    }

    Matrix aux(n, p + 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) aux(i, j) = design(i, j);
        aux(i, p) = fit.fitted[i] * fit.fitted[i];
        aux(i, p + 1) = aux(i, p) * fit.fitted[i];
    }

    const double rss_r = sum_squares(fit.residuals);
    const auto beta = householder_lstsq(aux, y);  // DataError when singular
    const auto fitted = matvec(aux, beta);
    double rss_u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - fitted[i];
        rss_u += e * e;
    }

    const double df2 = static_cast<double>(n - p - 2);
    TestResult result;
    result.name = "reset";
    result.statistic = ((rss_r - rss_u) / 2.0) / (rss_u / df2);
    result.df1 = 2.0;
    result.df2 = df2;
    result.p_value = 1.0 - f_cdf(result.statistic, 2.0, df2);
    result.verdict = verdict_from_p(*result.p_value);
    return result;
}

TestResult cusum_ols(const OlsFit& fit) {
    const std::size_t n = fit.residuals.size();
    const std::size_t p = fit.n_params();
    if (n <= p) throw std::invalid_argument("cusum_ols: need n > p");
    const double rss = sum_squares(fit.residuals);
    const double sigma = std::sqrt(rss / static_cast<double>(n - p));
    if (!(sigma > 0.0)) throw std::domain_error("cusum_ols: residual variance is zero");

    const double scale = 1.0 / (sigma * std::sqrt(static_cast<double>(n)));
    double cum = 0.0, sup = 0.0;
    for (double e : fit.residuals) {
        cum += e;
        sup = std::max(sup, std::abs(cum) * scale);
    }

    // Boundary crossing series P(sup |B| > a) = 2 sum (-1)^{k+1} exp(-2k^2a^2).
    double pv = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * sup * sup);
        pv += (k % 2 == 1) ? term : -term;
    }
    pv = std::clamp(pv, 0.0, 1.0);

    TestResult result;
    result.name = "cusum-ols";
    result.statistic = sup;
    result.p_value = pv;
    result.critical_values = {{1.0, 1.63}, {5.0, 1.36}, {10.0, 1.22}};
    result.verdict = sup > 1.36 ? Verdict::Reject : Verdict::FailToReject;
    return result;
}

std::vector<double> vif(const Matrix& factors, const std::vector<std::string>& names) {
    const std::size_t n = factors.rows();
    const std::size_t k = factors.cols();
    if (k < 2) throw std::invalid_argument("vif: need at least 2 factor columns");
    if (names.size() != k) throw std::invalid_argument("vif: name count mismatch");

    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        Matrix design(n, k);  // intercept + the other k-1 columns
        for (std::size_t i = 0; i < n; ++i) {
            design(i, 0) = 1.0;
            std::size_t c = 1;
            for (std::size_t q = 0; q < k; ++q) {
                if (q == j) continue;
                design(i, c++) = factors(i, q);
            }
        }
        const auto target = factors.column(j);
        double r2;
        try {
            r2 = aux_r2(design, target);
        } catch (const DataError&) {
            throw DataError("vif: infinite VIF for column '" + names[j] +
                            "' (perfect collinearity)");
        }
        if (r2 >= 1.0 - 1e-10) {
            throw DataError("vif: infinite VIF for column '" + names[j] +
                            "' (perfect collinearity)");
        }
        out[j] = 1.0 / (1.0 - r2);
    }
    return out;
}

Descriptive describe(std::span<const double> sample) {
    if (sample.size() < 2) throw std::invalid_argument("describe: need n >= 2");
    Descriptive d;
    const auto m = central_moments(sample);
    d.mean = m.mean;
    d.max = *std::max_element(sample.begin(), sample.end());
    d.min = *std::min_element(sample.begin(), sample.end());

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    d.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    d.std_dev = std::sqrt(m.m2 * static_cast<double>(n) / static_cast<double>(n - 1));
    if (m.m2 > 0.0) {
        d.skewness = m.m3 / std::pow(m.m2, 1.5);
        d.kurtosis = m.m4 / (m.m2 * m.m2);
    }
    return d;
}

}  // namespace oilrisk
