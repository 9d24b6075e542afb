#include "oilrisk/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "oilrisk/errors.hpp"
#include "oilrisk/transform.hpp"

namespace oilrisk {

namespace {

std::string full_precision(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed_decimals(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string verdict_text(const TestResult& t) {
    return t.rejects() ? "reject H0" : "fail to reject H0";
}

}  // namespace

Cell text_cell(std::string value) { return Cell{value, value}; }

Cell number_cell(double value, int display_decimals) {
    return Cell{full_precision(value), fixed_decimals(value, display_decimals)};
}

std::string significance_stars(double p_value) {
    if (p_value < 0.01) return "**";
    if (p_value < 0.05) return "*";
    return "";
}

Cell coefficient_cell(double coef, double se, double p_value) {
    Cell cell;
    cell.text = full_precision(coef);
    cell.display = fixed_decimals(coef, 2) + significance_stars(p_value) + " (" +
                   fixed_decimals(se, 2) + ")";
    return cell;
}

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) out += ",";
        out += csv_escape(table.columns[j]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ",";
            out += csv_escape(row[j].text);
        }
        out += "\n";
    }
    return out;
}

std::string render_markdown(const Table& table) {
    std::string out;
    out += "| ";
    for (const auto& c : table.columns) out += c + " | ";
    out += "\n|";
    for (std::size_t j = 0; j < table.columns.size(); ++j) out += " --- |";
    out += "\n";
    for (const auto& row : table.rows) {
        out += "| ";
        for (const auto& cell : row) {
            out += (cell.display.empty() ? cell.text : cell.display) + " | ";
        }
        out += "\n";
    }
    return out;
}

std::uint64_t config_fingerprint(const RunConfig& config) {
    std::ostringstream canon;
    canon << config.data_dir.string() << '|' << config.target << '|' << config.riskfree << '|'
          << format_month(config.start) << '|' << format_month(config.end) << '|';
    for (const auto& f : config.factors) {
        canon << f.name << ':' << f.source << ':' << transform_tag_name(f.tag) << ';';
    }
    canon << '|';
    for (double q : config.quantiles) canon << full_precision(q) << ',';
    canon << '|' << config.dummy_count << '|' << config.bootstrap_reps << '|' << config.seed
          << '|' << format_month(config.impact_date) << '|';
    for (const auto& c : config.impact_controls) canon << c << ',';
    canon << '|' << config.quantile_normalize << '|' << config.seasonal_dummies;

    // FNV-1a 64.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canon.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

struct StageGuard {
    template <typename F>
    static auto run(const std::string& stage, F&& f) {
        try {
            return f();
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(stage, e.what());
        }
    }
};

std::vector<NamedColumn> seasonal_indicator_columns(const std::vector<Month>& months) {
    std::vector<NamedColumn> cols;
    for (int m = 2; m <= 12; ++m) {
        NamedColumn col;
        char buf[8];
        std::snprintf(buf, sizeof(buf), "M_%02d", m);
        col.name = buf;
        col.values.resize(months.size(), 0.0);
        for (std::size_t i = 0; i < months.size(); ++i) {
            if (months[i].month == m) col.values[i] = 1.0;
        }
        cols.push_back(std::move(col));
    }
    return cols;
}

}  // namespace

std::vector<const Table*> PipelineReport::tables() const {
    return {&metadata,      &descriptive,   &baseline,       &heteroskedasticity,
            &autocorrelation, &normality,   &specification,  &dummy_table,
            &quantile_table, &stability,    &risk_table,     &pca_table,
            &impact_table,   &impact_series, &panel_dump};
}

PipelineReport run_pipeline(const RunConfig& base_config, const PipelineOverrides& overrides) {
    RunConfig config = base_config;
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.out_dir) config.out_dir = *overrides.out_dir;
    if (overrides.data_dir) config.data_dir = *overrides.data_dir;
    if (overrides.quantile_normalize) config.quantile_normalize = *overrides.quantile_normalize;
    if (overrides.impact_date) config.impact_date = *overrides.impact_date;
    config.validate();

    PipelineReport report;
    report.config = config;
    report.config_hash = config_fingerprint(config);

    // ---- ingest -----------------------------------------------------------
    RawPanel raw = StageGuard::run("ingest", [&] {
        std::set<std::string> ids{config.target, config.riskfree};
        for (const auto& f : config.factors) {
            const std::size_t dash = f.source.find('-');
            if (dash != std::string::npos) {
                ids.insert(f.source.substr(0, dash));
                ids.insert(f.source.substr(dash + 1));
            } else {
                ids.insert(f.source);
            }
        }
        for (const auto& c : config.impact_controls) ids.insert(c);

        std::vector<TimeSeries> series;
        for (const auto& id : ids) {
            const auto path = config.data_dir / (id + ".csv");
            auto s = read_fred_csv(path);
            if (s.name != id) {
                throw DataError("file " + path.string() + " declares series '" + s.name +
                                "', expected '" + id + "'");
            }
            series.push_back(std::move(s));
        }

        // Impact controls join the sample intersection alongside the factors.
        RunConfig join_cfg = config;
        for (const auto& c : config.impact_controls) {
            bool present = c == config.target || c == config.riskfree;
            for (const auto& f : join_cfg.factors) present = present || f.source == c;
            if (!present) {
                join_cfg.factors.push_back(FactorSpec{"__impact_" + c, c, TransformTag::Level});
            }
        }
        return assemble_panel(series, join_cfg);
    });

    // ---- transform --------------------------------------------------------
    report.panel = StageGuard::run("transform", [&] {
        return build_factor_panel(raw, config, config.quantile_normalize);
    });
    const FactorPanel& panel = report.panel;
    report.sample_window =
        format_month(panel.months.front()) + ".." + format_month(panel.months.back());

    ModelSpec spec;
    spec.target = "ER_" + config.target;
    spec.factors = panel.factor_names;
    spec.quantiles = config.quantiles;
    if (config.seasonal_dummies) {
        spec.dummies = seasonal_indicator_columns(panel.months);
    }

    // ---- descriptives: moments, ADF and VIF per transformed column --------
    StageGuard::run("descriptives", [&] {
        Table t;
        t.id = "descriptive";
        t.title = "Descriptive statistics of the transformed variables";
        t.columns = {"Variable", "Mean",     "Median", "Max",   "Min",  "StdDev",
                     "Skew",     "Kurtosis", "JB",     "JB p",  "ADF",  "ADF p", "VIF"};

        const auto vifs = vif(panel.factors, panel.factor_names);
        auto add_row = [&](const std::string& name, std::span<const double> values,
                           std::optional<double> vif_value) {
            const auto d = describe(values);
            const auto jb = jarque_bera(values);
            const auto adf = adf_test(values);
            std::vector<Cell> row{text_cell(name),          number_cell(d.mean),
                                  number_cell(d.median),    number_cell(d.max),
                                  number_cell(d.min),       number_cell(d.std_dev),
                                  number_cell(d.skewness),  number_cell(d.kurtosis),
                                  number_cell(jb.statistic), number_cell(*jb.p_value, 3),
                                  number_cell(adf.statistic), number_cell(*adf.p_value, 3)};
            row.push_back(vif_value ? number_cell(*vif_value) : text_cell(""));
            t.rows.push_back(std::move(row));
        };
        add_row(spec.target, panel.target, std::nullopt);
        for (std::size_t j = 0; j < panel.factor_names.size(); ++j) {
            add_row(panel.factor_names[j], panel.factors.column(j), vifs[j]);
        }
        report.descriptive = std::move(t);
        return 0;
    });

    // ---- baseline median regression ----------------------------------------
    Design design;
    StageGuard::run("baseline", [&] {
        design = build_design(panel, spec);
        report.baseline_fit = fit_qr(panel, spec, 0.5);
        const auto inference = bootstrap_se(panel, spec, 0.5, config.bootstrap_reps,
                                            config.seed);
        report.baseline_fit.std_errors = inference.std_errors;
        report.baseline_fit.p_values = inference.p_values;
        report.baseline_pseudo_r2 = report.baseline_fit.pseudo_r2;

        Table t;
        t.id = "baseline_qr";
        t.title = "Baseline median regression (tau = 0.5)";
        t.columns = {"Variable", "Coef", "StdErr", "p"};
        const auto& fit = report.baseline_fit;
        for (std::size_t j = 0; j < fit.names.size(); ++j) {
            if (fit.names[j] == "Intercept") continue;
            t.rows.push_back({text_cell(fit.names[j]), number_cell(fit.coefficients[j]),
                              number_cell(fit.std_errors[j]), number_cell(fit.p_values[j], 3)});
        }
        for (std::size_t j = 0; j < fit.names.size(); ++j) {
            if (fit.names[j] != "Intercept") continue;
            t.rows.push_back({text_cell("Intercept"), number_cell(fit.coefficients[j]),
                              number_cell(fit.std_errors[j]), number_cell(fit.p_values[j], 3)});
        }
        t.rows.push_back({text_cell("Pseudo R2"), number_cell(fit.pseudo_r2, 4), text_cell(""),
                          text_cell("")});
        report.baseline = std::move(t);
        return 0;
    });

    // ---- diagnostics on the least-squares companion fit --------------------
    OlsFit ols = StageGuard::run("diagnostics", [&] {
        auto fit = fit_ols(panel, spec);

        Table bp_table;
        bp_table.id = "breusch_pagan";
        bp_table.title = "Breusch-Pagan heteroskedasticity test";
        bp_table.columns = {"Test statistic", "p-value", "f-value", "f p-value"};
        const auto bp = breusch_pagan(fit, design.x);
        bp_table.rows.push_back({number_cell(bp.statistic), number_cell(*bp.p_value, 3),
                                 number_cell(*bp.f_statistic), number_cell(*bp.f_p_value, 3)});
        report.heteroskedasticity = std::move(bp_table);

        Table ac;
        ac.id = "autocorrelation";
        ac.title = "Autocorrelation tests";
        ac.columns = {"Test", "Statistic", "p-value", "f-value", "f p-value", "lag"};
        const auto dw = durbin_watson(fit.residuals);
        ac.rows.push_back({text_cell("Durbin-Watson"), number_cell(dw.statistic), text_cell(""),
                           text_cell(""), text_cell(""), text_cell("")});
        for (int lag : {6, 12}) {
            const auto bg = breusch_godfrey(fit, design.x, lag);
            ac.rows.push_back({text_cell("Breusch-Godfrey"), number_cell(bg.statistic),
                               number_cell(*bg.p_value, 3), number_cell(*bg.f_statistic),
                               number_cell(*bg.f_p_value, 3),
                               text_cell(std::to_string(lag))});
        }
        report.autocorrelation = std::move(ac);

        Table nt;
        nt.id = "normality";
        nt.title = "Normality tests on the baseline residuals";
        nt.columns = {"Test", "Statistic", "p-value", "Output"};
        const auto& resid = report.baseline_fit.residuals;
        const auto sw = shapiro_wilk(resid);
        const auto k2 = dagostino_k2(resid);
        const auto jb = jarque_bera(resid);
        const auto ad = anderson_darling(resid);
        nt.rows.push_back({text_cell("Shapiro-Wilk"), number_cell(sw.statistic, 3),
                           number_cell(*sw.p_value, 3), text_cell(verdict_text(sw))});
        nt.rows.push_back({text_cell("D'Agostino K2"), number_cell(k2.statistic),
                           number_cell(*k2.p_value, 3), text_cell(verdict_text(k2))});
        nt.rows.push_back({text_cell("Jarque-Bera"), number_cell(jb.statistic),
                           number_cell(*jb.p_value, 3), text_cell(verdict_text(jb))});
        std::string cv_note = "critical values";
        for (const auto& [level, value] : ad.critical_values) {
            cv_note += " " + fixed_decimals(value, 3) + "@" + fixed_decimals(level, 0) + "%";
        }
        nt.rows.push_back({text_cell("Anderson-Darling"), number_cell(ad.statistic),
                           text_cell(cv_note), text_cell(verdict_text(ad))});
        report.normality = std::move(nt);

        Table st;
        st.id = "specification";
        st.title = "Specification tests";
        st.columns = {"Test", "Statistic", "p-value", "Notes"};
        const auto reset = reset_test(fit, design.x, panel.target);
        st.rows.push_back({text_cell("RESET"), number_cell(reset.statistic, 3),
                           number_cell(*reset.p_value, 3), text_cell("powers 2,3")});

        // Joint F-test of the baseline-insignificant factors.
        std::vector<std::string> insignificant;
        for (std::size_t j = 0; j < report.baseline_fit.names.size(); ++j) {
            const auto& name = report.baseline_fit.names[j];
            if (name == "Intercept") continue;
            if (std::find(spec.factors.begin(), spec.factors.end(), name) ==
                spec.factors.end()) {
                continue;
            }
            if (report.baseline_fit.p_values[j] > 0.05) insignificant.push_back(name);
        }
        if (!insignificant.empty()) {
            const auto ftest = joint_zero_ftest(panel, spec, insignificant);
            std::string joined;
            for (const auto& name : insignificant) {
                joined += (joined.empty() ? "" : " ") + name;
            }
            st.rows.push_back({text_cell("Joint F (insignificant set = 0)"),
                               number_cell(ftest.statistic, 3), number_cell(*ftest.p_value, 3),
                               text_cell(joined)});
        } else {
            st.rows.push_back({text_cell("Joint F (insignificant set = 0)"), text_cell(""),
                               text_cell(""), text_cell("every factor significant at 5%")});
        }
        report.specification = std::move(st);
        return fit;
    });

    // ---- extreme residual dummies ------------------------------------------
    StageGuard::run("dummies", [&] {
        report.dummies = extreme_residuals(report.baseline_fit.residuals, panel.months,
                                           static_cast<std::size_t>(config.dummy_count));
        Table t;
        t.id = "dummies";
        t.title = "Dummy variables construction";
        t.columns = {"Date", "Residual"};
        for (const auto& d : report.dummies.dummies) {
            t.rows.push_back({text_cell(format_month(d.month)), number_cell(d.residual, 4)});
        }
        report.dummy_table = std::move(t);
        return 0;
    });

    // ---- multi-quantile refit with dummies ----------------------------------
    Design refit_design;
    StageGuard::run("refit", [&] {
        report.dummy_fits =
            refit_with_dummies(panel, spec, report.dummies, config.quantiles);

        ModelSpec augmented = spec;
        for (const auto& col : report.dummies.as_columns()) augmented.dummies.push_back(col);
        refit_design = build_design(panel, augmented);

        Table t;
        t.id = "quantile_estimates";
        t.title = "Parameter estimates across quantiles";
        t.columns = {"Variable", "tau", "Coef", "StdErr", "p", "Stars"};
        for (std::size_t q = 0; q < config.quantiles.size(); ++q) {
            auto& fit = report.dummy_fits[q];
            const auto inference = bootstrap_se(panel, augmented, fit.tau,
                                                config.bootstrap_reps, config.seed);
            fit.std_errors = inference.std_errors;
            fit.p_values = inference.p_values;
            for (std::size_t j = 0; j < fit.names.size(); ++j) {
                t.rows.push_back({text_cell(fit.names[j]),
                                  number_cell(fit.tau),
                                  number_cell(fit.coefficients[j]),
                                  number_cell(fit.std_errors[j]),
                                  number_cell(fit.p_values[j], 4),
                                  text_cell(significance_stars(fit.p_values[j]))});
            }
            t.rows.push_back({text_cell("Pseudo R2"), number_cell(fit.tau),
                              number_cell(fit.pseudo_r2, 4), text_cell(""), text_cell(""),
                              text_cell("")});
        }
        report.quantile_table = std::move(t);

        for (auto& w : crossing_warnings(refit_design.x, report.dummy_fits)) {
            report.warnings.push_back(std::move(w));
        }
        return 0;
    });

    // ---- parameter stability on the dummy-augmented OLS fit -----------------
    StageGuard::run("stability", [&] {
        ModelSpec augmented = spec;
        for (const auto& col : report.dummies.as_columns()) augmented.dummies.push_back(col);
        const auto fit = fit_ols(panel, augmented);
        const auto cs = cusum_ols(fit);

        Table t;
        t.id = "stability";
        t.title = "Parameter stability (OLS-CUSUM)";
        t.columns = {"Test statistic", "p-value", "Critical values", "Output"};
        std::string cv_note;
        for (const auto& [level, value] : cs.critical_values) {
            cv_note += (cv_note.empty() ? "" : " ") + fixed_decimals(value, 2) + "@" +
                       fixed_decimals(level, 0) + "%";
        }
        t.rows.push_back({number_cell(cs.statistic), number_cell(*cs.p_value, 3),
                          text_cell(cv_note), text_cell(verdict_text(cs))});
        report.stability = std::move(t);
        return 0;
    });

    // ---- value at risk on simple returns ------------------------------------
    StageGuard::run("risk", [&] {
        const auto returns = simple_returns(raw.column(config.target));
        Table t;
        t.id = "risk";
        t.title = "Value at risk (simple returns)";
        t.columns = {"Level", "VaR", "CVaR"};
        for (const auto& row : risk_report(returns)) {
            t.rows.push_back({text_cell(fixed_decimals(row.level * 100.0, 0) + "%"),
                              number_cell(row.metrics.var), number_cell(row.metrics.cvar)});
        }
        report.risk_table = std::move(t);
        return 0;
    });

    // ---- PCA of the factor matrix -------------------------------------------
    StageGuard::run("pca", [&] {
        const auto result = pca(panel.factors, panel.factor_names, true);
        Table t;
        t.id = "pca";
        t.title = "Principal components of the factor panel (correlation)";
        t.columns = {"Component", "Eigenvalue", "Proportion"};
        for (std::size_t j = 0; j < result.eigenvalues.size(); ++j) {
            t.rows.push_back({text_cell("PC" + std::to_string(j + 1)),
                              number_cell(result.eigenvalues[j], 4),
                              number_cell(result.proportions[j], 4)});
        }
        report.pca_table = std::move(t);
        return 0;
    });

    // ---- causal impact -------------------------------------------------------
    StageGuard::run("impact", [&] {
        Matrix controls(raw.months.size(), config.impact_controls.size());
        for (std::size_t j = 0; j < config.impact_controls.size(); ++j) {
            controls.set_column(j, raw.column(config.impact_controls[j]));
        }
        report.impact = causal_impact(raw.column(config.target), raw.months, controls,
                                      config.impact_controls, config.impact_date,
                                      config.bootstrap_reps, config.seed);

        Table t;
        t.id = "impact";
        t.title = "Causal impact of the intervention on " + config.target;
        t.columns = {"Metric", "Value", "Lower", "Upper"};
        const auto& im = report.impact;
        t.rows.push_back({text_cell("Post-period average (actual)"),
                          number_cell(im.actual_average), text_cell(""), text_cell("")});
        t.rows.push_back({text_cell("Post-period average (predicted)"),
                          number_cell(im.predicted_average),
                          number_cell(im.predicted_average_lower),
                          number_cell(im.predicted_average_upper)});
        t.rows.push_back({text_cell("Cumulative (actual)"), number_cell(im.actual_cumulative),
                          text_cell(""), text_cell("")});
        t.rows.push_back({text_cell("Cumulative (predicted)"),
                          number_cell(im.predicted_cumulative),
                          number_cell(im.predicted_cumulative_lower),
                          number_cell(im.predicted_cumulative_upper)});
        t.rows.push_back({text_cell("Absolute effect (average)"),
                          number_cell(im.absolute_effect_average),
                          number_cell(im.absolute_effect_lower),
                          number_cell(im.absolute_effect_upper)});
        t.rows.push_back({text_cell("Relative effect (%)"),
                          number_cell(im.relative_effect_pct, 1),
                          number_cell(im.relative_effect_lower, 1),
                          number_cell(im.relative_effect_upper, 1)});
        t.rows.push_back({text_cell("Tail-area p-value"), number_cell(im.p_value, 4),
                          text_cell(""), text_cell("")});
        report.impact_table = std::move(t);

        Table series;
        series.id = "impact_series";
        series.title = "Causal impact plot data";
        series.columns = {"Month",       "Actual",           "Counterfactual",
                          "Lower",       "Upper",            "PointwiseEffect",
                          "CumulativeEffect"};
        for (std::size_t i = 0; i < im.post_months.size(); ++i) {
            series.rows.push_back({text_cell(format_month(im.post_months[i])),
                                   number_cell(im.actual[i]), number_cell(im.counterfactual[i]),
                                   number_cell(im.counterfactual_lower[i]),
                                   number_cell(im.counterfactual_upper[i]),
                                   number_cell(im.pointwise_effect[i]),
                                   number_cell(im.cumulative_effect[i])});
        }
        report.impact_series = std::move(series);
        return 0;
    });

    // ---- panel dump + metadata ----------------------------------------------
    StageGuard::run("render", [&] {
        Table t;
        t.id = "panel";
        t.title = "Transformed factor panel";
        t.columns = {"Month", spec.target, "riskfree"};
        for (const auto& name : panel.factor_names) t.columns.push_back(name);
        for (std::size_t i = 0; i < panel.rows(); ++i) {
            std::vector<Cell> row{text_cell(format_month(panel.months[i])),
                                  number_cell(panel.target[i], 6),
                                  number_cell(panel.riskfree[i], 6)};
            for (std::size_t j = 0; j < panel.factor_names.size(); ++j) {
                row.push_back(number_cell(panel.factors(i, j), 6));
            }
            t.rows.push_back(std::move(row));
        }
        report.panel_dump = std::move(t);

        Table meta;
        meta.id = "metadata";
        meta.title = "Run metadata";
        meta.columns = {"Key", "Value"};
        char hash_buf[32];
        std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                      static_cast<unsigned long long>(report.config_hash));
        meta.rows.push_back({text_cell("config_hash"), text_cell(hash_buf)});
        meta.rows.push_back({text_cell("seed"), text_cell(std::to_string(config.seed))});
        meta.rows.push_back(
            {text_cell("bootstrap"), text_cell(std::to_string(config.bootstrap_reps))});
        meta.rows.push_back({text_cell("sample_window"), text_cell(report.sample_window)});
        meta.rows.push_back({text_cell("target"), text_cell(config.target)});
        meta.rows.push_back({text_cell("quantile_normalize"),
                             text_cell(config.quantile_normalize ? "true" : "false")});
        report.metadata = std::move(meta);
        return 0;
    });

    return report;
}

std::string render_report_markdown(const PipelineReport& report) {
    std::string md;
    md += "# Crude-oil factor risk report\n\n";
    md += "Sample window: " + report.sample_window + "\n\n";

    auto section = [&](const Table& t) {
        md += "## " + t.title + "\n\n";
        md += render_markdown(t);
        md += "\n";
    };

    section(report.metadata);
    section(report.descriptive);
    section(report.baseline);
    section(report.heteroskedasticity);
    section(report.autocorrelation);
    section(report.normality);
    section(report.specification);
    section(report.dummy_table);

    // Pivoted multi-quantile view: one column per tau, cells "coef** (se)".
    md += "## Parameter estimates across quantiles\n\n";
    if (!report.dummy_fits.empty()) {
        Table pivot;
        pivot.columns = {"Variable"};
        for (const auto& fit : report.dummy_fits) {
            pivot.columns.push_back("Qn(" + fixed_decimals(fit.tau, 2) + ")");
        }
        const auto& names = report.dummy_fits.front().names;
        for (std::size_t j = 0; j < names.size(); ++j) {
            std::vector<Cell> row{text_cell(names[j])};
            for (const auto& fit : report.dummy_fits) {
                row.push_back(coefficient_cell(fit.coefficients[j], fit.std_errors[j],
                                               fit.p_values[j]));
            }
            pivot.rows.push_back(std::move(row));
        }
        std::vector<Cell> r2_row{text_cell("Pseudo R2")};
        for (const auto& fit : report.dummy_fits) {
            r2_row.push_back(number_cell(fit.pseudo_r2, 2));
        }
        pivot.rows.push_back(std::move(r2_row));
        md += render_markdown(pivot);
        md += "\n* denotes p < 0.05; ** denotes p < 0.01\n\n";
    }

    section(report.stability);
    section(report.risk_table);
    section(report.pca_table);
    section(report.impact_table);

    if (!report.warnings.empty()) {
        md += "## Warnings\n\n";
        for (const auto& w : report.warnings) md += "- " + w + "\n";
        md += "\n";
    }
    return md;
}

void write_report(const PipelineReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto write_file = [&](const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write " + path.string());
        out << content;
        if (!out.good()) throw DataError("write failed for " + path.string());
        written.push_back(path);
    };

    try {
        for (const Table* t : report.tables()) {
            write_file(out_dir / (t->id + ".csv"), render_csv(*t));
        }
        write_file(out_dir / "report.md", render_report_markdown(report));
    } catch (...) {
        for (const auto& path : written) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
        throw;
    }
}

}  // namespace oilrisk
