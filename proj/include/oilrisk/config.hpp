#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "oilrisk/dates.hpp"

namespace oilrisk {

// How a raw level series becomes a regression column.
enum class TransformTag {
    ExcessLogReturn,  // ln(p_t/p_{t-1}) - monthly riskfree
    LogChange,        // ln(v_t/v_{t-1})
    SecondLogDiff,    // ln(x_t/x_{t-1}) - ln(x_{t-1}/x_{t-2})
    Level,            // passthrough (already stationary, e.g. a yield spread)
};

TransformTag parse_transform_tag(const std::string& text);
std::string transform_tag_name(TransformTag tag);

struct FactorSpec {
    std::string name;    // regression column name, e.g. "dPROD"
    std::string source;  // series id, or "A-B" for an elementwise spread
    TransformTag tag = TransformTag::SecondLogDiff;
};

// Declarative description of one pipeline run, loaded from a plain-text
// "key = value" file ('#' comments, comma-separated lists, repeated
// "factor" keys for the factor list).
struct RunConfig {
    std::filesystem::path data_dir;
    std::string target;    // target price series id
    std::string riskfree;  // annualized-percent yield series id
    std::vector<FactorSpec> factors;
    Month start;
    Month end;
    std::vector<double> quantiles;
    int dummy_count = 2;
    int bootstrap_reps = 1000;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = "out";
    Month impact_date{2020, 3};
    std::vector<std::string> impact_controls;
    bool quantile_normalize = false;
    bool seasonal_dummies = false;

    void validate() const;  // throws ConfigError
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace oilrisk
