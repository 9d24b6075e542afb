#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oilrisk/errors.hpp"
#include "oilrisk/report.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> data_dir;
    bool quantile_normalize = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("config", flags.config_path, "run configuration file")->required();
    cmd->add_option("--seed", flags.seed, "override the configured random seed");
    cmd->add_option("--out", flags.out_dir, "override the configured output directory");
    cmd->add_option("--data-dir", flags.data_dir, "override the data directory");
    cmd->add_flag("--quantile-normalize", flags.quantile_normalize,
                  "quantile-normalize the factor matrix before fitting");
}

oilrisk::PipelineOverrides make_overrides(const CommonFlags& flags) {
    oilrisk::PipelineOverrides ov;
    ov.seed = flags.seed;
    if (flags.out_dir) ov.out_dir = *flags.out_dir;
    if (flags.data_dir) {
        ov.data_dir = *flags.data_dir;
    } else if (const char* env = std::getenv("OILRISK_DATA_DIR")) {
        ov.data_dir = std::string(env);
    }
    if (flags.quantile_normalize) ov.quantile_normalize = true;
    return ov;
}

int run_command(const CommonFlags& flags) {
    const auto config = oilrisk::load_run_config(flags.config_path);
    const auto overrides = make_overrides(flags);
    const auto report = oilrisk::run_pipeline(config, overrides);
    const auto out_dir = overrides.out_dir.value_or(config.out_dir);
    oilrisk::write_report(report, out_dir);
    std::cout << "wrote " << (out_dir / "report.md").string() << " and "
              << report.tables().size() << " CSV tables\n";
    for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
    return 0;
}

int describe_command(const CommonFlags& flags) {
    const auto config = oilrisk::load_run_config(flags.config_path);
    const auto report = oilrisk::run_pipeline(config, make_overrides(flags));
    std::cout << "## " << report.descriptive.title << "\n\n"
              << oilrisk::render_markdown(report.descriptive);
    if (flags.out_dir) {
        std::filesystem::create_directories(*flags.out_dir);
        const auto path = std::filesystem::path(*flags.out_dir) / "descriptive.csv";
        std::ofstream out(path, std::ios::binary);
        out << oilrisk::render_csv(report.descriptive);
        std::cout << "\nwrote " << path.string() << "\n";
    }
    return 0;
}

int qr_command(const CommonFlags& flags, double tau) {
    const auto config = oilrisk::load_run_config(flags.config_path);
    const auto report = oilrisk::run_pipeline(config, make_overrides(flags));

    // Pick the fitted quantile closest to the request; refuse a bad miss.
    const oilrisk::QrFit* chosen = nullptr;
    for (const auto& fit : report.dummy_fits) {
        if (!chosen || std::abs(fit.tau - tau) < std::abs(chosen->tau - tau)) chosen = &fit;
    }
    if (!chosen || std::abs(chosen->tau - tau) > 1e-9) {
        std::cerr << "error: tau " << tau << " is not in the configured quantile list\n";
        return 1;
    }
    std::cout << "Quantile regression at tau = " << chosen->tau << " (with event dummies)\n\n";
    oilrisk::Table t;
    t.columns = {"Variable", "Coef", "StdErr", "p"};
    for (std::size_t j = 0; j < chosen->names.size(); ++j) {
        t.rows.push_back({oilrisk::text_cell(chosen->names[j]),
                          oilrisk::number_cell(chosen->coefficients[j], 4),
                          oilrisk::number_cell(chosen->std_errors[j], 4),
                          oilrisk::number_cell(chosen->p_values[j], 4)});
    }
    t.rows.push_back({oilrisk::text_cell("Pseudo R2"),
                      oilrisk::number_cell(chosen->pseudo_r2, 4), oilrisk::text_cell(""),
                      oilrisk::text_cell("")});
    std::cout << oilrisk::render_markdown(t);
    return 0;
}

int impact_command(const CommonFlags& flags, const std::optional<std::string>& date) {
    const auto config = oilrisk::load_run_config(flags.config_path);
    auto overrides = make_overrides(flags);
    if (date) overrides.impact_date = oilrisk::parse_month(*date);
    const auto report = oilrisk::run_pipeline(config, overrides);
    std::cout << "## " << report.impact_table.title << "\n\n"
              << oilrisk::render_markdown(report.impact_table);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-factor quantile-regression pipeline for crude-oil excess returns"};
    app.require_subcommand(1);

    CommonFlags run_flags, describe_flags, qr_flags, impact_flags;
    double tau = 0.5;
    std::optional<std::string> impact_date;

    auto* run = app.add_subcommand("run", "run the full pipeline and write the report");
    add_common(run, run_flags);

    auto* describe = app.add_subcommand("describe", "print the descriptive-statistics table");
    add_common(describe, describe_flags);

    auto* qr = app.add_subcommand("qr", "print the quantile-regression table at one tau");
    add_common(qr, qr_flags);
    qr->add_option("--tau", tau, "quantile to report")->check(CLI::Range(0.0, 1.0));

    auto* impact = app.add_subcommand("impact", "print the causal-impact analysis");
    add_common(impact, impact_flags);
    impact->add_option("--date", impact_date, "intervention month (YYYY-MM)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(run_flags);
        if (describe->parsed()) return describe_command(describe_flags);
        if (qr->parsed()) return qr_command(qr_flags, tau);
        if (impact->parsed()) return impact_command(impact_flags, impact_date);
    } catch (const oilrisk::StageError& e) {
        std::cerr << "error: " << e.what() << "\n";  // what() carries the stage tag
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
