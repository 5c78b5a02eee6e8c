#pragma once

#include <string>

#include "scs/config.hpp"
#include "scs/estimator.hpp"
#include "scs/panel.hpp"
#include "scs/sensitivity.hpp"
#include "scs/sim.hpp"

namespace scs {

/// Everything the fit command computed, plus where it was written.
struct ReportBundle {
    PanelData panel;
    InterventionSpec spec;
    WeightModel model;
    AttResult att;
    SensitivityReport sensitivity;
    std::string output_dir;
};

/// Full fit pipeline: load, validate, split, fit, counterfactual, ATT,
/// sensitivity, then emit the bundle files into config.output_dir:
/// outcome_series.csv, att_series.csv, donor_shifts.csv, table.csv,
/// meta.txt, report.txt, figure.svg. Tables use 2-decimal formatting;
/// CSVs carry full precision.
ReportBundle run_fit_command(const AnalysisConfig& config);

/// Generate the base-seed dataset (panel.csv plus latents sidecar), run the
/// bound-validity experiment, and write validity.csv into out_dir.
ValidityStats run_simulate_command(const SimConfig& config, int replications,
                                   const std::string& out_dir);

/// Re-render the formatted text table from an emitted bundle directory.
[[nodiscard]] std::string run_report_command(const std::string& bundle_dir);

/// One-line summary of a validity run.
[[nodiscard]] std::string format_validity_summary(const ValidityStats& stats);

} // namespace scs
