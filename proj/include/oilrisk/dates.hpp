#pragma once

#include <compare>
#include <string>

namespace oilrisk {

// Calendar month. All series in this project are monthly; days inside a
// month are irrelevant and get coerced away on ingest.
struct Month {
    int year = 0;
    int month = 1;  // 1..12

    // Months since year 0, usable for distance/adjacency arithmetic.
    [[nodiscard]] int index() const { return year * 12 + (month - 1); }

    friend auto operator<=>(const Month& a, const Month& b) {
        return a.index() <=> b.index();
    }
    friend bool operator==(const Month& a, const Month& b) {
        return a.index() == b.index();
    }

    [[nodiscard]] Month next() const {
        return month == 12 ? Month{year + 1, 1} : Month{year, month + 1};
    }
};

// "YYYY-MM"
std::string format_month(const Month& m);

// "YYYY-MM-01" (FRED monthly file convention)
std::string format_month_day(const Month& m);

// Accepts "YYYY-MM" or "YYYY-MM-DD"; any day collapses to its month.
// Throws ParseError on malformed input.
Month parse_month(const std::string& text);

}  // namespace oilrisk
