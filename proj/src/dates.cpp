#include "oilrisk/dates.hpp"

#include <cctype>
#include <cstdio>

#include "oilrisk/errors.hpp"

namespace oilrisk {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t count) {
    if (from + count > s.size()) return false;
    for (std::size_t i = from; i < from + count; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

std::string format_month(const Month& m) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", m.year, m.month);
    return buf;
}

std::string format_month_day(const Month& m) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-01", m.year, m.month);
    return buf;
}

Month parse_month(const std::string& text) {
    // YYYY-MM or YYYY-MM-DD
    const bool with_day = text.size() == 10;
    if (!(text.size() == 7 || with_day) || !all_digits(text, 0, 4) || text[4] != '-' ||
        !all_digits(text, 5, 2)) {
        throw ParseError("malformed date '" + text + "' (expected YYYY-MM or YYYY-MM-DD)");
    }
    if (with_day && (text[7] != '-' || !all_digits(text, 8, 2))) {
        throw ParseError("malformed date '" + text + "' (expected YYYY-MM or YYYY-MM-DD)");
    }
    const int year = std::stoi(text.substr(0, 4));
    const int month = std::stoi(text.substr(5, 2));
    if (month < 1 || month > 12) {
        throw ParseError("malformed date '" + text + "' (month out of range)");
    }
    if (with_day) {
        const int day = std::stoi(text.substr(8, 2));
        if (day < 1 || day > 31) {
            throw ParseError("malformed date '" + text + "' (day out of range)");
        }
    }
    return Month{year, month};
}

}  // namespace oilrisk
