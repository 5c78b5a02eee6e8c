#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "scs/config.hpp"
#include "scs/errors.hpp"
#include "scs/report.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"synthetic control fitting and bias-bound sensitivity analysis"};
    app.require_subcommand(1);

    std::string fit_config_path;
    std::string fit_out;
    auto* fit = app.add_subcommand("fit", "fit weights on a panel and emit a report bundle");
    fit->add_option("--config", fit_config_path, "analysis config file")->required();
    fit->add_option("--out", fit_out, "output directory (overrides config)");

    std::string sim_config_path;
    std::string sim_out = "out";
    long long sim_seed = -1;
    int sim_reps = -1;
    auto* simulate =
        app.add_subcommand("simulate", "generate simulated panels and run the validity experiment");
    simulate->add_option("--config", sim_config_path, "simulation config file")->required();
    simulate->add_option("--seed", sim_seed, "base seed (overrides config)");
    simulate->add_option("--reps", sim_reps, "replication count (overrides config)");
    simulate->add_option("--out", sim_out, "output directory");

    std::string report_dir = "out";
    auto* report = app.add_subcommand("report", "render the text report from an emitted bundle");
    report->add_option("--out", report_dir, "bundle directory written by fit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    if (fit->parsed()) {
        scs::AnalysisConfig config = scs::load_analysis_config(fit_config_path);
        if (!fit_out.empty()) config.output_dir = fit_out;
        const scs::ReportBundle bundle = scs::run_fit_command(config);
        std::fputs(scs::run_report_command(bundle.output_dir).c_str(), stdout);
        std::printf("bundle written to %s\n", bundle.output_dir.c_str());
        return 0;
    }
    if (simulate->parsed()) {
        int reps = 200;
        scs::SimConfig config = scs::load_sim_config(sim_config_path, &reps);
        if (sim_seed >= 0) config.seed = static_cast<std::uint64_t>(sim_seed);
        if (sim_reps > 0) reps = sim_reps;
        const scs::ValidityStats stats = scs::run_simulate_command(config, reps, sim_out);
        std::fputs(scs::format_validity_summary(stats).c_str(), stdout);
        std::printf("panel and validity results written to %s\n", sim_out.c_str());
        return 0;
    }
    std::fputs(scs::run_report_command(report_dir).c_str(), stdout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const scs::Error& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.code().c_str(), e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
