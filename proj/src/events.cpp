#include "oilrisk/events.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <cstdio>
#include <random>

#include "oilrisk/errors.hpp"
#include "oilrisk/linalg.hpp"

namespace oilrisk {

std::vector<NamedColumn> DummySet::as_columns() const {
    std::vector<NamedColumn> out;
    out.reserve(dummies.size());
    for (const auto& d : dummies) out.push_back({d.name, d.indicator});
    return out;
}

DummySet extreme_residuals(std::span<const double> residuals, std::span<const Month> months,
                           std::size_t k) {
    const std::size_t n = residuals.size();
    if (months.size() != n) {
        throw std::invalid_argument("extreme_residuals: residuals and months disagree");
    }
    if (k == 0) return {};
    if (k * 10 >= n) {
        throw std::invalid_argument("extreme_residuals: k must be below n/10");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(residuals[a]);
        const double mb = std::abs(residuals[b]);
        if (ma != mb) return ma > mb;
        return months[a] < months[b];  // equal magnitudes: earlier month first
    });

    DummySet set;
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t i = order[r];
        DummyVar d;
        d.month = months[i];
        d.residual = residuals[i];
        d.indicator.assign(n, 0.0);
        d.indicator[i] = 1.0;
        char buf[24];
        std::snprintf(buf, sizeof(buf), "D_%04d_%02d", d.month.year, d.month.month);
        d.name = buf;
        set.dummies.push_back(std::move(d));
    }
    return set;
}

std::vector<QrFit> refit_with_dummies(const FactorPanel& panel, const ModelSpec& spec,
                                      const DummySet& dummies, std::span<const double> taus,
                                      QrOptions options) {
    for (const auto& d : dummies.dummies) {
        if (d.month < panel.months.front() || panel.months.back() < d.month) {
            throw std::invalid_argument("refit_with_dummies: dummy month " +
                                        format_month(d.month) + " outside the panel");
        }
    }
    ModelSpec augmented = spec;
    for (const auto& col : dummies.as_columns()) augmented.dummies.push_back(col);

    std::vector<QrFit> fits;
    fits.reserve(taus.size());
    for (double tau : taus) {
        fits.push_back(fit_qr(panel, augmented, tau, options));
    }
    return fits;
}

ImpactReport causal_impact(std::span<const double> target, std::span<const Month> months,
                           const Matrix& controls,
                           const std::vector<std::string>& control_names,
                           Month intervention, int replications, std::uint64_t seed) {
    const std::size_t n = target.size();
    if (months.size() != n || controls.rows() != n) {
        throw std::invalid_argument("causal_impact: input lengths disagree");
    }
    if (replications < 100) {
        throw std::invalid_argument("causal_impact: replication count must be >= 100");
    }

    std::size_t split = 0;  // first post-period row
    while (split < n && months[split] < intervention) ++split;
    const std::size_t n_pre = split;
    const std::size_t n_post = n - split;
    if (n_post < 3) throw std::invalid_argument("causal_impact: post-period shorter than 3");
    if (n_pre < 24) throw std::invalid_argument("causal_impact: pre-period shorter than 24");

    const std::size_t p = controls.cols() + 1;
    Matrix pre(n_pre, p);
    std::vector<double> pre_y(n_pre);
    for (std::size_t i = 0; i < n_pre; ++i) {
        pre(i, 0) = 1.0;
        for (std::size_t j = 0; j < controls.cols(); ++j) pre(i, j + 1) = controls(i, j);
        pre_y[i] = target[i];
    }

    std::vector<std::string> names{"Intercept"};
    names.insert(names.end(), control_names.begin(), control_names.end());
    const auto fit = fit_ols(pre, pre_y, names);  // DataError when rank deficient

    ImpactReport report;
    report.intervention = intervention;
    report.pre_length = static_cast<int>(n_pre);
    report.post_length = static_cast<int>(n_post);
    report.post_months.assign(months.begin() + static_cast<std::ptrdiff_t>(split), months.end());

    std::vector<double> predicted(n_post);
    for (std::size_t i = 0; i < n_post; ++i) {
        double s = fit.coefficients[0];
        for (std::size_t j = 0; j < controls.cols(); ++j) {
            s += fit.coefficients[j + 1] * controls(split + i, j);
        }
        predicted[i] = s;
        report.actual.push_back(target[split + i]);
    }
    report.counterfactual = predicted;

    report.actual_cumulative =
        std::accumulate(report.actual.begin(), report.actual.end(), 0.0);
    report.actual_average = report.actual_cumulative / static_cast<double>(n_post);
    report.predicted_cumulative = std::accumulate(predicted.begin(), predicted.end(), 0.0);
    report.predicted_average = report.predicted_cumulative / static_cast<double>(n_post);

    // Residual bootstrap: regenerate the pre-period response from fitted
    // values plus resampled residuals, refit, and push the refitted model
    // through the post-period controls with fresh residual draws. Refitting
    // keeps parameter uncertainty inside the intervals.
    const int b = replications;
    std::vector<double> cum_draws(b);
    Matrix path_draws(static_cast<std::size_t>(b), n_post);
    std::vector<double> boot_y(n_pre);
    for (int rep = 0; rep < b; ++rep) {
        std::mt19937_64 rng(replicate_seed(seed, static_cast<std::uint64_t>(rep)));
        auto draw_residual = [&]() {
            const unsigned __int128 wide =
                static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(n_pre);
            return fit.residuals[static_cast<std::size_t>(wide >> 64)];
        };
        for (std::size_t i = 0; i < n_pre; ++i) boot_y[i] = fit.fitted[i] + draw_residual();
        const auto boot_beta = householder_lstsq(pre, boot_y);
        double cum = 0.0;
        for (std::size_t i = 0; i < n_post; ++i) {
            double value = boot_beta[0];
            for (std::size_t j = 0; j < controls.cols(); ++j) {
                value += boot_beta[j + 1] * controls(split + i, j);
            }
            value += draw_residual();
            path_draws(static_cast<std::size_t>(rep), i) = value;
            cum += value;
        }
        cum_draws[rep] = cum;
    }

    auto percentile = [](std::vector<double> v, double q) {
        std::sort(v.begin(), v.end());
        const double pos = q * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
        const double w = pos - static_cast<double>(lo);
        return v[lo] * (1.0 - w) + v[hi] * w;
    };

    std::vector<double> cum_sorted = cum_draws;
    const double cum_lo = percentile(cum_sorted, 0.025);
    const double cum_hi = percentile(cum_sorted, 0.975);
    report.predicted_cumulative_lower = cum_lo;
    report.predicted_cumulative_upper = cum_hi;
    report.predicted_average_lower = cum_lo / static_cast<double>(n_post);
    report.predicted_average_upper = cum_hi / static_cast<double>(n_post);

    report.absolute_effect_average = report.actual_average - report.predicted_average;
    report.absolute_effect_lower = report.actual_average - report.predicted_average_upper;
    report.absolute_effect_upper = report.actual_average - report.predicted_average_lower;

    report.relative_effect_pct =
        (report.actual_cumulative - report.predicted_cumulative) /
        report.predicted_cumulative * 100.0;
    // Interval endpoints follow the counterfactual draws; the wider predicted
    // cumulative maps to the lower relative effect.
    const double rel_a = (report.actual_cumulative - cum_hi) / cum_hi * 100.0;
    const double rel_b = (report.actual_cumulative - cum_lo) / cum_lo * 100.0;
    report.relative_effect_lower = std::min(rel_a, rel_b);
    report.relative_effect_upper = std::max(rel_a, rel_b);

    // One-sided tail area in the direction of the observed effect.
    int extreme = 0;
    if (report.actual_cumulative <= report.predicted_cumulative) {
        for (double c : cum_draws) {
            if (c <= report.actual_cumulative) ++extreme;
        }
    } else {
        for (double c : cum_draws) {
            if (c >= report.actual_cumulative) ++extreme;
        }
    }
    report.p_value = std::max(static_cast<double>(extreme) / static_cast<double>(b),
                              1.0 / static_cast<double>(b + 1));

    report.counterfactual_lower.resize(n_post);
    report.counterfactual_upper.resize(n_post);
    double cum_effect = 0.0;
    for (std::size_t i = 0; i < n_post; ++i) {
        report.counterfactual_lower[i] = percentile(path_draws.column(i), 0.025);
        report.counterfactual_upper[i] = percentile(path_draws.column(i), 0.975);
        const double effect = report.actual[i] - predicted[i];
        report.pointwise_effect.push_back(effect);
        cum_effect += effect;
        report.cumulative_effect.push_back(cum_effect);
    }
    return report;
}

}  // namespace oilrisk
