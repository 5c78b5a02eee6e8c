#include "scs/panel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "scs/errors.hpp"

namespace scs {

std::optional<std::size_t> PanelData::column_of(const std::string& unit) const {
    const auto it = std::find(unit_names.begin(), unit_names.end(), unit);
    if (it == unit_names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - unit_names.begin());
}

Eigen::VectorXd PanelData::column(const std::string& unit) const {
    const auto idx = column_of(unit);
    if (!idx) throw_data("unknown-unit", "unknown unit: " + unit);
    return values.col(static_cast<Eigen::Index>(*idx));
}

Eigen::MatrixXd PanelData::donor_matrix() const {
    Eigen::MatrixXd out(values.rows(), static_cast<Eigen::Index>(donor_units.size()));
    for (std::size_t j = 0; j < donor_units.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = column(donor_units[j]);
    return out;
}

Eigen::VectorXd PanelData::treated_column() const { return column(treated_unit); }

std::vector<std::string> validate(const PanelData& panel) {
    std::vector<std::string> diagnostics;
    const auto add = [&diagnostics](const std::string& d) { diagnostics.push_back(d); };

    if (panel.values.rows() != static_cast<Eigen::Index>(panel.time_index.size()) ||
        panel.values.cols() != static_cast<Eigen::Index>(panel.unit_names.size())) {
        std::ostringstream os;
        os << "values shape " << panel.values.rows() << "x" << panel.values.cols()
           << " does not match " << panel.time_index.size() << " time points and "
           << panel.unit_names.size() << " units";
        add(os.str());
        return diagnostics;
    }

    std::set<std::string> seen;
    for (const auto& name : panel.unit_names)
        if (!seen.insert(name).second) add("duplicate unit name: " + name);

    if (!panel.column_of(panel.treated_unit))
        add("treated unit not a panel column: " + panel.treated_unit);
    if (panel.donor_units.empty()) add("empty donor set");

    std::set<std::string> donor_seen;
    for (const auto& donor : panel.donor_units) {
        if (donor == panel.treated_unit) add("treated unit in donor set: " + donor);
        if (!panel.column_of(donor)) add("unknown donor unit: " + donor);
        if (!donor_seen.insert(donor).second) add("duplicate donor unit: " + donor);
    }

    for (std::size_t i = 1; i < panel.time_index.size(); ++i)
        if (panel.time_index[i] <= panel.time_index[i - 1]) {
            std::ostringstream os;
            os << "time index not strictly increasing at position " << i << " ("
               << panel.time_index[i - 1] << " then " << panel.time_index[i] << ")";
            add(os.str());
        }

    for (Eigen::Index r = 0; r < panel.values.rows(); ++r)
        for (Eigen::Index c = 0; c < panel.values.cols(); ++c)
            if (!std::isfinite(panel.values(r, c))) {
                std::ostringstream os;
                os << "missing value for unit " << panel.unit_names[static_cast<std::size_t>(c)]
                   << " at time " << panel.time_index[static_cast<std::size_t>(r)];
                add(os.str());
            }

    return diagnostics;
}

std::pair<PeriodSlice, PeriodSlice> split_time_index(const std::vector<long long>& time_index,
                                                     const InterventionSpec& spec) {
    const auto it = std::find(time_index.begin(), time_index.end(), spec.t0);
    if (it == time_index.end()) {
        std::ostringstream os;
        os << "t0 " << spec.t0 << " not in time index";
        throw_data("t0-not-found", os.str());
    }
    const auto pos = static_cast<std::size_t>(it - time_index.begin());
    if (pos < 2) throw_data("too-few-pre-periods", "fewer than 2 pre periods before t0");
    PeriodSlice pre{Phase::Pre, 0, pos};
    PeriodSlice post{Phase::Post, pos, time_index.size()};
    return {pre, post};
}

std::pair<PeriodSlice, PeriodSlice> split_pre_post(const PanelData& panel,
                                                   const InterventionSpec& spec) {
    return split_time_index(panel.time_index, spec);
}

std::map<std::string, double> period_means(const PanelData& panel, const PeriodSlice& slice,
                                           const std::vector<std::string>& units) {
    if (slice.size() == 0) throw_data("empty-slice", "empty period slice");
    if (slice.end > panel.rows()) throw_data("slice-out-of-range", "slice exceeds panel rows");
    std::map<std::string, double> out;
    for (const auto& unit : units) {
        const Eigen::VectorXd col = panel.column(unit);
        out[unit] = col.segment(static_cast<Eigen::Index>(slice.begin),
                                static_cast<Eigen::Index>(slice.size()))
                        .mean();
    }
    return out;
}

} // namespace scs
