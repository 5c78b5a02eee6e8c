#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scs/estimator.hpp"
#include "scs/panel.hpp"

namespace scs {

enum class Verdict { Robust, Sensitive };

/// Worst-case observable bias bound and the robustness comparison:
/// bound = n_effective * max_abs_beta * max_proxy_shift, with both maxima
/// taken over donors carrying nonzero reported weight. The full per-donor
/// weights and shifts are kept so the bound can be re-derived by hand.
struct SensitivityReport {
    int n_effective = 0;
    double max_abs_beta = 0.0;
    double max_proxy_shift = 0.0; ///< outcome units
    double bound = 0.0;           ///< outcome units
    double avg_att = 0.0;
    Verdict verdict = Verdict::Sensitive;
    std::string explanation;
    std::vector<std::string> donor_names;
    std::vector<double> beta;   ///< reported weights, aligned with donor_names
    std::vector<double> shifts; ///< |pre mean - post mean| per donor
};

/// Absolute pre/post mean shift per donor.
[[nodiscard]] std::map<std::string, double> proxy_mean_shifts(const PanelData& panel,
                                                              const InterventionSpec& spec,
                                                              const std::vector<std::string>& donors);

/// Number of donors with nonzero reported weight.
[[nodiscard]] int effective_n(const WeightModel& model);

/// Bound fragment from a fitted model and its donor shifts; avg_att and
/// verdict are left at defaults for assess to fill.
/// Throws Error(Data) when a model donor has no entry in shifts.
[[nodiscard]] SensitivityReport bias_bound(const WeightModel& model,
                                           const std::map<std::string, double>& shifts);

/// Robust iff |avg_att| > bound (strict); the explanation states both
/// numbers and the comparison.
[[nodiscard]] std::pair<Verdict, std::string> assess(double bound, double avg_att);

/// Full pipeline: shifts, bound, and ATT comparison in one report.
[[nodiscard]] SensitivityReport analyze_sensitivity(const PanelData& panel,
                                                    const InterventionSpec& spec,
                                                    const WeightModel& model, double avg_att);

} // namespace scs
