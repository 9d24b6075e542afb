#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oilrisk/dates.hpp"

namespace oilrisk {

struct Observation {
    Month month;
    std::optional<double> value;  // nullopt = FRED "." missing marker
};

// One named, date-indexed monthly series.
struct TimeSeries {
    std::string name;
    std::vector<Observation> observations;

    // Enforces: non-empty name, strictly increasing months, one obs per month.
    void validate() const;

    [[nodiscard]] std::size_t size() const { return observations.size(); }
};

// Reads a FRED-export CSV: header "DATE,<SERIESID>", one ISO date and one
// decimal value (or ".") per row. LF or CRLF, optional UTF-8 BOM.
TimeSeries read_fred_csv(const std::filesystem::path& path);

// Inverse of read_fred_csv; missing observations are written back as ".".
void write_fred_csv(const TimeSeries& series, const std::filesystem::path& path);

}  // namespace oilrisk
