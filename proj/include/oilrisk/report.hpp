#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oilrisk/config.hpp"
#include "oilrisk/diagnostics.hpp"
#include "oilrisk/events.hpp"
#include "oilrisk/panel.hpp"
#include "oilrisk/quantreg.hpp"
#include "oilrisk/risk.hpp"

namespace oilrisk {

// A rendered table cell: full-precision value for the CSV plus an optional
// preformatted display string for the markdown report.
struct Cell {
    std::string text;     // CSV field (full precision for numbers)
    std::string display;  // markdown rendering; falls back to `text` if empty
};

struct Table {
    std::string id;       // file stem for the per-table CSV
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

Cell text_cell(std::string value);
Cell number_cell(double value, int display_decimals = 2);
// "0.26** (0.04)" style coefficient cell: stars at p<0.05 / p<0.01.
Cell coefficient_cell(double coef, double se, double p_value);
std::string significance_stars(double p_value);

std::string render_csv(const Table& table);       // RFC-4180 style, LF line ends
std::string render_markdown(const Table& table);

struct PipelineReport {
    RunConfig config;
    std::uint64_t config_hash = 0;
    std::string sample_window;

    FactorPanel panel;
    Table metadata;
    Table descriptive;
    Table baseline;          // tau = 0.5 regression table
    double baseline_pseudo_r2 = 0.0;
    Table heteroskedasticity;
    Table autocorrelation;   // DW + BG rows
    Table normality;
    Table specification;     // RESET + joint F
    Table dummy_table;
    Table quantile_table;    // multi-quantile estimates
    Table stability;         // OLS-CUSUM
    Table risk_table;
    Table pca_table;
    Table impact_table;
    Table impact_series;
    Table panel_dump;
    std::vector<std::string> warnings;

    QrFit baseline_fit;
    std::vector<QrFit> dummy_fits;
    DummySet dummies;
    ImpactReport impact;

    [[nodiscard]] std::vector<const Table*> tables() const;
};

struct PipelineOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::filesystem::path> data_dir;
    std::optional<bool> quantile_normalize;
    std::optional<Month> impact_date;
};

// Runs ingest -> transform -> descriptives -> baseline QR -> diagnostics ->
// dummies -> multi-quantile refit -> stability -> risk -> PCA -> impact.
// Deterministic given config + seed. Any stage failure is rethrown as a
// StageError naming the stage; nothing is written until every stage is done.
PipelineReport run_pipeline(const RunConfig& config, const PipelineOverrides& overrides = {});

// Writes report.md plus one CSV per table into out_dir. If any write fails,
// files created by this call are removed before rethrowing.
void write_report(const PipelineReport& report, const std::filesystem::path& out_dir);

std::string render_report_markdown(const PipelineReport& report);

std::uint64_t config_fingerprint(const RunConfig& config);

}  // namespace oilrisk
