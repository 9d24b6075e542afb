#include "oilrisk/config.hpp"

#include <algorithm>
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

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& value, const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("key '" + key + "': malformed number '" + value + "'");
    }
    return v;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + value + "'");
}

Month parse_month_value(const std::string& value, const std::string& key) {
    try {
        return parse_month(value);
    } catch (const ParseError& e) {
        throw ConfigError("key '" + key + "': " + e.what());
    }
}

}  // namespace

TransformTag parse_transform_tag(const std::string& text) {
    if (text == "excess-log-return") return TransformTag::ExcessLogReturn;
    if (text == "log-change") return TransformTag::LogChange;
    if (text == "second-log-diff") return TransformTag::SecondLogDiff;
    if (text == "level") return TransformTag::Level;
    throw ConfigError("unknown transform tag '" + text + "'");
}

std::string transform_tag_name(TransformTag tag) {
    switch (tag) {
        case TransformTag::ExcessLogReturn: return "excess-log-return";
        case TransformTag::LogChange: return "log-change";
        case TransformTag::SecondLogDiff: return "second-log-diff";
        case TransformTag::Level: return "level";
    }
    return "?";
}

void RunConfig::validate() const {
    if (target.empty()) throw ConfigError("missing target series");
    if (riskfree.empty()) throw ConfigError("missing riskfree series");
    if (factors.empty()) throw ConfigError("factor list is empty");
    if (quantiles.empty()) throw ConfigError("quantile list is empty");
    for (double tau : quantiles) {
        if (!(tau > 0.0 && tau < 1.0)) {
            throw ConfigError("quantile " + std::to_string(tau) +
                              " outside the open interval (0,1)");
        }
    }
    if (!std::is_sorted(quantiles.begin(), quantiles.end())) {
        throw ConfigError("quantile list must be sorted ascending");
    }
    if (std::adjacent_find(quantiles.begin(), quantiles.end()) != quantiles.end()) {
        throw ConfigError("quantile list has duplicates");
    }
    if (bootstrap_reps < 100) throw ConfigError("bootstrap replication count must be >= 100");
    if (dummy_count < 0) throw ConfigError("dummy count must be >= 0");
    const int window = end.index() - start.index() + 1;
    if (window < 24) {
        throw ConfigError("sample window must span at least 24 months, got " +
                          std::to_string(window));
    }
    std::vector<std::string> names;
    for (const auto& f : factors) {
        if (f.name.empty() || f.source.empty()) {
            throw ConfigError("factor entries need a name and a source series");
        }
        names.push_back(f.name);
    }
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
        throw ConfigError("factor names must be unique");
    }
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    bool have_start = false, have_end = false;

    std::stringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }

        if (key == "data_dir") {
            cfg.data_dir = value;
        } else if (key == "target") {
            cfg.target = value;
        } else if (key == "riskfree") {
            cfg.riskfree = value;
        } else if (key == "start") {
            cfg.start = parse_month_value(value, key);
            have_start = true;
        } else if (key == "end") {
            cfg.end = parse_month_value(value, key);
            have_end = true;
        } else if (key == "quantiles") {
            cfg.quantiles.clear();
            for (const auto& q : split_list(value)) {
                cfg.quantiles.push_back(parse_number(q, key));
            }
        } else if (key == "dummies") {
            cfg.dummy_count = static_cast<int>(parse_number(value, key));
        } else if (key == "bootstrap") {
            cfg.bootstrap_reps = static_cast<int>(parse_number(value, key));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_number(value, key));
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "factor") {
            const auto parts = split_list(value);
            if (parts.size() != 3) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": factor entries are 'name, source, transform'");
            }
            cfg.factors.push_back(FactorSpec{parts[0], parts[1], parse_transform_tag(parts[2])});
        } else if (key == "impact_date") {
            cfg.impact_date = parse_month_value(value, key);
        } else if (key == "impact_controls") {
            cfg.impact_controls = split_list(value);
        } else if (key == "quantile_normalize") {
            cfg.quantile_normalize = parse_bool(value, key);
        } else if (key == "seasonal_dummies") {
            cfg.seasonal_dummies = parse_bool(value, key);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }

    if (!have_start || !have_end) throw ConfigError("missing sample window (start/end)");
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

}  // namespace oilrisk
