#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oilrisk {

enum class Verdict { Reject, FailToReject };

// One diagnostic test outcome. Most tests carry a p-value; Anderson-Darling
// decides against a critical-value table, and the OLS-CUSUM test reports
// both (tabled critical values decide the verdict, the crossing-probability
// series supplies the p-value).
struct TestResult {
    std::string name;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::vector<std::pair<double, double>> critical_values;  // (level %, value)
    std::optional<int> lags;
    std::optional<double> df1;
    std::optional<double> df2;
    // Companion F-form where the test reports both an LM and an F variant.
    std::optional<double> f_statistic;
    std::optional<double> f_p_value;
    Verdict verdict = Verdict::FailToReject;

    [[nodiscard]] bool rejects() const { return verdict == Verdict::Reject; }
};

}  // namespace oilrisk
