#include "oilrisk/panel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oilrisk/errors.hpp"

namespace oilrisk {

std::size_t RawPanel::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return j;
    }
    throw DataError("panel has no column '" + name + "'");
}

std::vector<double> RawPanel::column(const std::string& name) const {
    return values.column(column_index(name));
}

namespace {

// Series ids a config needs, in panel column order: target, riskfree, then
// factor sources in config order. A "A-B" source contributes its spread
// column (computed after the join) and requires both legs.
struct RequiredSeries {
    std::vector<std::string> plain;                             // join inputs
    std::vector<std::pair<std::string, std::string>> spreads;   // (long, short)
    std::vector<std::string> panel_columns;                     // output order
};

RequiredSeries required_series(const RunConfig& config) {
    RequiredSeries req;
    std::set<std::string> seen;
    auto add_plain = [&](const std::string& id) {
        if (seen.insert(id).second) req.plain.push_back(id);
    };
    add_plain(config.target);
    add_plain(config.riskfree);
    req.panel_columns.push_back(config.target);
    if (config.riskfree != config.target) req.panel_columns.push_back(config.riskfree);

    std::set<std::string> column_seen(req.panel_columns.begin(), req.panel_columns.end());
    for (const auto& f : config.factors) {
        const std::size_t dash = f.source.find('-');
        if (dash != std::string::npos) {
            const std::string long_leg = f.source.substr(0, dash);
            const std::string short_leg = f.source.substr(dash + 1);
            if (long_leg.empty() || short_leg.empty()) {
                throw ConfigError("malformed spread source '" + f.source + "'");
            }
            add_plain(long_leg);
            add_plain(short_leg);
            if (column_seen.insert(f.source).second) {
                req.spreads.emplace_back(long_leg, short_leg);
                req.panel_columns.push_back(f.source);
            }
        } else {
            add_plain(f.source);
            if (column_seen.insert(f.source).second) req.panel_columns.push_back(f.source);
        }
    }
    return req;
}

}  // namespace

RawPanel assemble_panel(const std::vector<TimeSeries>& series, const RunConfig& config) {
    std::map<std::string, const TimeSeries*> by_name;
    for (const auto& s : series) {
        s.validate();
        if (!by_name.emplace(s.name, &s).second) {
            throw DataError("duplicate series name '" + s.name + "'");
        }
    }

    const auto req = required_series(config);
    for (const auto& id : req.plain) {
        if (!by_name.count(id)) {
            throw ConfigError("configured series '" + id + "' is not present in the data");
        }
    }

    // Month -> value per plain series, restricted to the window.
    std::map<std::string, std::map<int, double>> values;
    for (const auto& id : req.plain) {
        auto& dest = values[id];
        for (const auto& obs : by_name.at(id)->observations) {
            if (obs.month < config.start || obs.month > config.end) continue;
            if (obs.value) dest[obs.month.index()] = *obs.value;
        }
    }

    // Months present (non-missing) in every series.
    std::vector<int> months;
    for (int idx = config.start.index(); idx <= config.end.index(); ++idx) {
        bool ok = true;
        for (const auto& id : req.plain) {
            if (!values.at(id).count(idx)) {
                ok = false;
                break;
            }
        }
        if (ok) months.push_back(idx);
    }
    if (months.empty()) {
        throw DataError("no common months across the configured series in the sample window");
    }

    RawPanel panel;
    panel.names = req.panel_columns;
    panel.months.reserve(months.size());
    for (int idx : months) {
        panel.months.push_back(Month{idx / 12, idx % 12 + 1});
    }
    panel.values = Matrix(months.size(), panel.names.size());
    for (std::size_t j = 0; j < panel.names.size(); ++j) {
        const std::string& id = panel.names[j];
        const bool plain = values.count(id) > 0;
        const std::size_t dash = id.find('-');
        for (std::size_t i = 0; i < months.size(); ++i) {
            if (plain) {
                panel.values(i, j) = values.at(id).at(months[i]);
            } else {
                panel.values(i, j) = values.at(id.substr(0, dash)).at(months[i]) -
                                     values.at(id.substr(dash + 1)).at(months[i]);
            }
        }
    }
    return panel;
}

void FactorPanel::validate() const {
    const std::size_t n = months.size();
    if (target.size() != n || riskfree.size() != n || factors.rows() != n ||
        factors.cols() != factor_names.size()) {
        throw DataError("factor panel dimensions disagree");
    }
    std::set<std::string> seen;
    for (const auto& name : factor_names) {
        if (!seen.insert(name).second) {
            throw DataError("duplicate factor column '" + name + "'");
        }
    }
    for (double v : target) {
        if (!std::isfinite(v)) throw DataError("non-finite target value");
    }
    for (double v : factors.data()) {
        if (!std::isfinite(v)) throw DataError("non-finite factor value");
    }
}

std::size_t FactorPanel::factor_index(const std::string& name) const {
    for (std::size_t j = 0; j < factor_names.size(); ++j) {
        if (factor_names[j] == name) return j;
    }
    throw DataError("factor panel has no column '" + name + "'");
}

}  // namespace oilrisk
