#include "oilrisk/timeseries.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oilrisk/errors.hpp"

namespace oilrisk {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_value(const std::string& field, const std::string& path, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": malformed value '" + field +
                         "'");
    }
    return v;
}

}  // namespace

void TimeSeries::validate() const {
    if (name.empty()) throw DataError("time series has an empty name");
    for (std::size_t i = 1; i < observations.size(); ++i) {
        const int prev = observations[i - 1].month.index();
        const int cur = observations[i].month.index();
        if (cur == prev) {
            throw DataError("series '" + name + "': duplicate month " +
                            format_month(observations[i].month));
        }
        if (cur < prev) {
            throw DataError("series '" + name + "': months out of order at " +
                            format_month(observations[i].month));
        }
    }
}

TimeSeries read_fred_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::string line;
    std::size_t line_no = 0;
    TimeSeries series;

    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    ++line_no;
    // UTF-8 BOM, if any
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    line = strip(line);
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
        throw ParseError(path.string() + ":1: header must be 'DATE,<SERIESID>'");
    }
    series.name = strip(line.substr(comma + 1));
    if (series.name.empty()) {
        throw ParseError(path.string() + ":1: header is missing the series id");
    }

    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t c = line.find(',');
        if (c == std::string::npos) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected 'date,value'");
        }
        const std::string date_field = strip(line.substr(0, c));
        const std::string value_field = strip(line.substr(c + 1));

        Month month;
        try {
            month = parse_month(date_field);
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }

        Observation obs{month, std::nullopt};
        if (value_field != ".") {
            obs.value = parse_value(value_field, path.string(), line_no);
        }

        if (!series.observations.empty()) {
            const int prev = series.observations.back().month.index();
            if (month.index() == prev) {
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": duplicate month " + format_month(month));
            }
            if (month.index() < prev) {
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": months out of order at " + format_month(month));
            }
        }
        series.observations.push_back(obs);
    }

    if (series.observations.empty()) {
        throw DataError(path.string() + ": no observations");
    }
    series.validate();
    return series;
}

void write_fred_csv(const TimeSeries& series, const std::filesystem::path& path) {
    series.validate();
    std::ostringstream out;
    out << "DATE," << series.name << "\n";
    for (const auto& obs : series.observations) {
        out << format_month_day(obs.month) << ",";
        if (obs.value) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", *obs.value);
            out << buf;
        } else {
            out << ".";
        }
        out << "\n";
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write " + path.string());
    file << out.str();
}

}  // namespace oilrisk
