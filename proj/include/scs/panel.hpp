#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scs {

/// Balanced outcome panel: one row per time point, one column per unit.
/// Values are in the outcome's natural units. Treated immutably by every
/// operation; safe to share across threads once built.
struct PanelData {
    std::vector<long long> time_index;    ///< strictly increasing labels (e.g. years)
    std::vector<std::string> unit_names;  ///< column names aligned with values
    Eigen::MatrixXd values;               ///< rows = time points, cols = units
    std::string treated_unit;
    std::vector<std::string> donor_units; ///< ordered, disjoint from treated_unit

    [[nodiscard]] std::optional<std::size_t> column_of(const std::string& unit) const;

    /// Column by unit name; throws Error(Data) for an unknown unit.
    [[nodiscard]] Eigen::VectorXd column(const std::string& unit) const;

    /// Donor columns stacked in donor_units order.
    [[nodiscard]] Eigen::MatrixXd donor_matrix() const;

    [[nodiscard]] Eigen::VectorXd treated_column() const;

    [[nodiscard]] std::size_t rows() const noexcept { return time_index.size(); }
};

/// The first treated period. Everything at or after t0 is Post.
struct InterventionSpec {
    long long t0 = 0;
};

enum class Phase { Pre, Post };

/// Contiguous half-open row range [begin, end) of a panel.
struct PeriodSlice {
    Phase which = Phase::Pre;
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] std::size_t size() const noexcept { return end - begin; }
};

/// Structural checks. Returns one diagnostic per violated invariant, naming
/// the offending unit and time where applicable; an empty list means every
/// downstream operation accepts the panel. Never throws.
[[nodiscard]] std::vector<std::string> validate(const PanelData& panel);

/// Partition rows into Pre (t < t0) and Post (t >= t0).
/// Throws Error(Data) when t0 is not a time label or fewer than 2 pre
/// periods precede it.
[[nodiscard]] std::pair<PeriodSlice, PeriodSlice> split_pre_post(const PanelData& panel,
                                                                 const InterventionSpec& spec);

/// Row-split of a bare time index by the same convention as split_pre_post.
[[nodiscard]] std::pair<PeriodSlice, PeriodSlice> split_time_index(const std::vector<long long>& time_index,
                                                                   const InterventionSpec& spec);

/// Arithmetic mean of each requested unit over the slice rows.
/// Throws Error(Data) on an empty slice or unknown unit.
[[nodiscard]] std::map<std::string, double> period_means(const PanelData& panel,
                                                         const PeriodSlice& slice,
                                                         const std::vector<std::string>& units);

} // namespace scs
