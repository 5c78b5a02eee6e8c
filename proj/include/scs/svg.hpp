#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace scs {

/// Render the three-panel report figure as a static SVG document:
/// observed vs counterfactual with an intervention marker, per-period ATT
/// with a shaded +-bound band, and the running ATT. The root element carries
/// the bound in a `data-bound` attribute for round-trip checks.
/// post_begin is the row index of the first treated period.
/// Throws Error(Data) on empty or misaligned series.
[[nodiscard]] std::string render_report_svg(const std::vector<long long>& time_index,
                                            const Eigen::VectorXd& observed,
                                            const Eigen::VectorXd& counterfactual,
                                            const Eigen::VectorXd& att,
                                            const Eigen::VectorXd& running_att,
                                            std::size_t post_begin, double bound,
                                            const std::string& title);

} // namespace scs
