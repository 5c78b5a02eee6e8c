#pragma once

#include <map>
#include <string>
#include <vector>

#include "scs/estimator.hpp"
#include "scs/sim.hpp"

namespace scs {

/// One real-data analysis: which file, which roles, where to cut, how to fit.
struct AnalysisConfig {
    std::string data_path;
    std::string treated_unit;
    std::vector<std::string> donor_units;
    long long intervention_time = 0;
    FitMethod fit_method;
    std::string output_dir = "out";
};

/// Parse a flat `key = value` file. '#' starts a comment; blank lines are
/// skipped. Throws Error(Config) on malformed lines or duplicate keys.
[[nodiscard]] std::map<std::string, std::string> parse_kv_file(const std::string& path);

/// Load an analysis configuration. data_path entries that are relative are
/// resolved against the config file's directory. Unknown keys are rejected.
[[nodiscard]] AnalysisConfig load_analysis_config(const std::string& path);

/// Load a simulation configuration (same format; all keys optional, defaults
/// per SimConfig). The optional `replications` key is returned through the
/// out-parameter when present.
[[nodiscard]] SimConfig load_sim_config(const std::string& path, int* replications = nullptr);

} // namespace scs
