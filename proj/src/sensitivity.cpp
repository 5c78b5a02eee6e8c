#include "scs/sensitivity.hpp"

#include <cmath>
#include <cstdio>

#include "scs/errors.hpp"

namespace scs {

std::map<std::string, double> proxy_mean_shifts(const PanelData& panel,
                                                const InterventionSpec& spec,
                                                const std::vector<std::string>& donors) {
    const auto [pre, post] = split_pre_post(panel, spec);
    const auto pre_means = period_means(panel, pre, donors);
    const auto post_means = period_means(panel, post, donors);
    std::map<std::string, double> shifts;
    for (const auto& donor : donors)
        shifts[donor] = std::abs(pre_means.at(donor) - post_means.at(donor));
    return shifts;
}

int effective_n(const WeightModel& model) {
    int count = 0;
    for (Eigen::Index i = 0; i < model.beta.size(); ++i)
        if (std::abs(model.beta(i)) > model.method.zero_tolerance) ++count;
    return count;
}

SensitivityReport bias_bound(const WeightModel& model,
                             const std::map<std::string, double>& shifts) {
    SensitivityReport report;
    report.donor_names = model.donor_names;
    report.beta.assign(model.beta.data(), model.beta.data() + model.beta.size());
    report.shifts.reserve(model.donor_names.size());
    for (const auto& donor : model.donor_names) {
        const auto it = shifts.find(donor);
        if (it == shifts.end()) throw_data("shift-missing", "no shift entry for donor: " + donor);
        report.shifts.push_back(it->second);
    }

    report.n_effective = effective_n(model);
    for (std::size_t i = 0; i < report.beta.size(); ++i) {
        if (std::abs(report.beta[i]) <= model.method.zero_tolerance) continue;
        report.max_abs_beta = std::max(report.max_abs_beta, std::abs(report.beta[i]));
        report.max_proxy_shift = std::max(report.max_proxy_shift, report.shifts[i]);
    }
    report.bound = static_cast<double>(report.n_effective) * report.max_abs_beta * report.max_proxy_shift;
    return report;
}

std::pair<Verdict, std::string> assess(double bound, double avg_att) {
    char text[160];
    if (std::abs(avg_att) > bound) {
        std::snprintf(text, sizeof text,
                      "|average ATT| %.2f exceeds the worst-case bias bound %.2f: Robust",
                      std::abs(avg_att), bound);
        return {Verdict::Robust, text};
    }
    std::snprintf(text, sizeof text,
                  "|average ATT| %.2f does not exceed the worst-case bias bound %.2f: Sensitive",
                  std::abs(avg_att), bound);
    return {Verdict::Sensitive, text};
}

SensitivityReport analyze_sensitivity(const PanelData& panel, const InterventionSpec& spec,
                                      const WeightModel& model, double avg_att) {
    auto report = bias_bound(model, proxy_mean_shifts(panel, spec, model.donor_names));
    report.avg_att = avg_att;
    auto [verdict, explanation] = assess(report.bound, avg_att);
    report.verdict = verdict;
    report.explanation = std::move(explanation);
    return report;
}

} // namespace scs
