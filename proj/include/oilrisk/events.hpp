#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oilrisk/dates.hpp"
#include "oilrisk/linalg.hpp"
#include "oilrisk/panel.hpp"
#include "oilrisk/quantreg.hpp"

namespace oilrisk {

struct DummyVar {
    Month month;
    double residual = 0.0;          // residual value that triggered it
    std::vector<double> indicator;  // 1 at that month, 0 elsewhere
    std::string name;               // e.g. "D_2020_04"
};

struct DummySet {
    std::vector<DummyVar> dummies;  // ordered by |residual| descending

    [[nodiscard]] std::size_t size() const { return dummies.size(); }
    [[nodiscard]] std::vector<NamedColumn> as_columns() const;
};

// Picks the k largest-|residual| months and builds one indicator column per
// month; equal magnitudes break toward the earlier month. k = 0 yields an
// empty set; k >= n/10 is a usage error.
DummySet extreme_residuals(std::span<const double> residuals,
                           std::span<const Month> months, std::size_t k);

// Refits the model at every tau with the dummy columns appended.
std::vector<QrFit> refit_with_dummies(const FactorPanel& panel, const ModelSpec& spec,
                                      const DummySet& dummies,
                                      std::span<const double> taus, QrOptions options = {});

struct ImpactReport {
    Month intervention;
    int pre_length = 0;
    int post_length = 0;

    double actual_average = 0.0;
    double predicted_average = 0.0;
    double predicted_average_lower = 0.0;
    double predicted_average_upper = 0.0;

    double actual_cumulative = 0.0;
    double predicted_cumulative = 0.0;
    double predicted_cumulative_lower = 0.0;
    double predicted_cumulative_upper = 0.0;

    double absolute_effect_average = 0.0;  // actual - predicted, per month
    double absolute_effect_lower = 0.0;
    double absolute_effect_upper = 0.0;

    double relative_effect_pct = 0.0;
    double relative_effect_lower = 0.0;
    double relative_effect_upper = 0.0;

    double p_value = 1.0;  // one-sided tail area, floored at 1/(B+1)

    // Per-month plot data over the post period.
    std::vector<Month> post_months;
    std::vector<double> actual;
    std::vector<double> counterfactual;
    std::vector<double> counterfactual_lower;
    std::vector<double> counterfactual_upper;
    std::vector<double> pointwise_effect;
    std::vector<double> cumulative_effect;
};

// Regression-counterfactual intervention analysis: least squares of the
// target on the controls over the pre-period, counterfactual prediction over
// the post-period, and residual-bootstrap intervals (pre-period residuals
// resampled with replacement, the pre-period model refitted per replicate,
// B replicates, 2.5/97.5 percentiles). The intervention month opens the
// post-period. Requires >= 24 pre months and >= 3 post months.
ImpactReport causal_impact(std::span<const double> target, std::span<const Month> months,
                           const Matrix& controls,
                           const std::vector<std::string>& control_names,
                           Month intervention, int replications, std::uint64_t seed);

}  // namespace oilrisk
