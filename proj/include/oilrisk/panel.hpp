#pragma once

#include <string>
#include <vector>

#include "oilrisk/config.hpp"
#include "oilrisk/dates.hpp"
#include "oilrisk/linalg.hpp"
#include "oilrisk/timeseries.hpp"

namespace oilrisk {

// Inner-joined matrix of level series over the sample window. No missing
// values; one row per month actually shared by every configured series.
struct RawPanel {
    std::vector<Month> months;
    std::vector<std::string> names;  // column names (series ids / spread ids)
    Matrix values;                   // months.size() x names.size()

    [[nodiscard]] std::size_t column_index(const std::string& name) const;  // throws DataError
    [[nodiscard]] std::vector<double> column(const std::string& name) const;
};

// Joins the configured series (target, riskfree, every factor source and
// spread leg) on month over [start, end]; months carrying any missing value
// are dropped. Column order: target, riskfree, then factor sources in
// config order (spreads appear under their "A-B" id).
RawPanel assemble_panel(const std::vector<TimeSeries>& series, const RunConfig& config);

// Regression-ready panel: transformed factor columns plus the target excess
// return, trimmed to the common post-transform length.
struct FactorPanel {
    std::vector<Month> months;
    std::vector<double> target;    // excess log returns of the target
    std::vector<double> riskfree;  // monthly decimal r_f per row
    std::vector<std::string> factor_names;
    Matrix factors;  // months.size() x factor_names.size()

    void validate() const;  // lengths agree, all finite, names unique
    [[nodiscard]] std::size_t rows() const { return months.size(); }
    [[nodiscard]] std::size_t factor_index(const std::string& name) const;  // throws DataError
};

}  // namespace oilrisk
