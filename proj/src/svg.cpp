#include "scs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scs/csv.hpp"
#include "scs/errors.hpp"

namespace scs {
namespace {

constexpr double width = 900.0;
constexpr double panel_height = 200.0;
constexpr double panel_gap = 46.0;
constexpr double margin_left = 70.0;
constexpr double margin_right = 30.0;
constexpr double margin_top = 40.0;

struct Scale {
    double lo = 0.0, hi = 1.0, px0 = 0.0, px1 = 1.0;

    [[nodiscard]] double at(double v) const {
        if (hi == lo) return (px0 + px1) / 2.0;
        return px0 + (v - lo) / (hi - lo) * (px1 - px0);
    }
};

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return buffer;
}

void polyline(std::ostringstream& out, const Scale& sx, const Scale& sy,
              const std::vector<long long>& t, const Eigen::VectorXd& series,
              std::size_t first_row, const std::string& style) {
    out << "<polyline fill=\"none\" " << style << " points=\"";
    for (Eigen::Index i = 0; i < series.size(); ++i) {
        const double x = sx.at(static_cast<double>(t[first_row + static_cast<std::size_t>(i)]));
        out << fmt(x) << "," << fmt(sy.at(series(i))) << " ";
    }
    out << "\"/>\n";
}

Scale y_scale(double lo, double hi, double top) {
    if (lo == hi) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.06 * (hi - lo);
    return {lo - pad, hi + pad, top + panel_height, top};
}

void frame(std::ostringstream& out, const Scale& sx, const Scale& sy, const std::string& label) {
    out << "<rect x=\"" << fmt(sx.px0) << "\" y=\"" << fmt(sy.px1) << "\" width=\""
        << fmt(sx.px1 - sx.px0) << "\" height=\"" << fmt(sy.px0 - sy.px1)
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(sx.px0) << "\" y=\"" << fmt(sy.px1 - 8.0)
        << "\" font-size=\"14\" fill=\"#333\">" << label << "</text>\n";
    out << "<text x=\"" << fmt(sx.px0 - 6.0) << "\" y=\"" << fmt(sy.px1 + 12.0)
        << "\" font-size=\"11\" fill=\"#555\" text-anchor=\"end\">" << fmt(sy.hi) << "</text>\n";
    out << "<text x=\"" << fmt(sx.px0 - 6.0) << "\" y=\"" << fmt(sy.px0)
        << "\" font-size=\"11\" fill=\"#555\" text-anchor=\"end\">" << fmt(sy.lo) << "</text>\n";
}

void vertical_marker(std::ostringstream& out, double x, const Scale& sy) {
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(sy.px1) << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << fmt(sy.px0)
        << "\" stroke=\"#666\" stroke-width=\"1\" stroke-dasharray=\"2,3\"/>\n";
}

} // namespace

std::string render_report_svg(const std::vector<long long>& time_index,
                              const Eigen::VectorXd& observed,
                              const Eigen::VectorXd& counterfactual, const Eigen::VectorXd& att,
                              const Eigen::VectorXd& running_att, std::size_t post_begin,
                              double bound, const std::string& title) {
    const auto rows = time_index.size();
    if (rows == 0) throw_data("empty-series", "cannot plot an empty series");
    if (observed.size() != static_cast<Eigen::Index>(rows) ||
        counterfactual.size() != static_cast<Eigen::Index>(rows))
        throw_data("misaligned-series", "observed and counterfactual must span the time index");
    const auto post_rows = rows - post_begin;
    if (post_begin >= rows || att.size() != static_cast<Eigen::Index>(post_rows) ||
        running_att.size() != static_cast<Eigen::Index>(post_rows))
        throw_data("misaligned-series", "ATT series must span the post periods");

    const double total_height = margin_top + 3 * panel_height + 2 * panel_gap + 30.0;
    const Scale sx{static_cast<double>(time_index.front()), static_cast<double>(time_index.back()),
                   margin_left, width - margin_right};
    const double t0_x = sx.at(static_cast<double>(time_index[post_begin]));

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << total_height << "\" viewBox=\"0 0 " << width << " " << total_height
        << "\" data-bound=\"" << format_full(bound) << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << total_height << "\" fill=\"#fff\"/>\n";
    out << "<text x=\"" << fmt(width / 2.0)
        << "\" y=\"22\" font-size=\"16\" fill=\"#111\" text-anchor=\"middle\">" << title
        << "</text>\n";

    const double top1 = margin_top;
    Scale sy1 = y_scale(std::min(observed.minCoeff(), counterfactual.minCoeff()),
                        std::max(observed.maxCoeff(), counterfactual.maxCoeff()), top1);
    frame(out, sx, sy1, "observed vs counterfactual");
    vertical_marker(out, t0_x, sy1);
    polyline(out, sx, sy1, time_index, observed, 0, "stroke=\"#1f6fb4\" stroke-width=\"1.8\"");
    polyline(out, sx, sy1, time_index, counterfactual, 0,
             "stroke=\"#c23b22\" stroke-width=\"1.8\" stroke-dasharray=\"6,4\"");

    const double top2 = margin_top + panel_height + panel_gap;
    const double att_lo = std::min({att.minCoeff(), -bound, 0.0});
    const double att_hi = std::max({att.maxCoeff(), bound, 0.0});
    Scale sy2 = y_scale(att_lo, att_hi, top2);
    frame(out, sx, sy2, "per-period ATT with bias bound");
    out << "<rect x=\"" << fmt(t0_x) << "\" y=\"" << fmt(sy2.at(bound)) << "\" width=\""
        << fmt(sx.px1 - t0_x) << "\" height=\"" << fmt(sy2.at(-bound) - sy2.at(bound))
        << "\" fill=\"#c23b22\" fill-opacity=\"0.12\"/>\n";
    out << "<line x1=\"" << fmt(sx.px0) << "\" y1=\"" << fmt(sy2.at(0.0)) << "\" x2=\""
        << fmt(sx.px1) << "\" y2=\"" << fmt(sy2.at(0.0))
        << "\" stroke=\"#aaa\" stroke-width=\"1\"/>\n";
    vertical_marker(out, t0_x, sy2);
    polyline(out, sx, sy2, time_index, att, post_begin, "stroke=\"#1f6fb4\" stroke-width=\"1.8\"");

    const double top3 = margin_top + 2 * (panel_height + panel_gap);
    Scale sy3 = y_scale(std::min(running_att.minCoeff(), 0.0),
                        std::max(running_att.maxCoeff(), 0.0), top3);
    frame(out, sx, sy3, "running ATT");
    out << "<line x1=\"" << fmt(sx.px0) << "\" y1=\"" << fmt(sy3.at(0.0)) << "\" x2=\""
        << fmt(sx.px1) << "\" y2=\"" << fmt(sy3.at(0.0))
        << "\" stroke=\"#aaa\" stroke-width=\"1\"/>\n";
    vertical_marker(out, t0_x, sy3);
    polyline(out, sx, sy3, time_index, running_att, post_begin,
             "stroke=\"#2a7f3f\" stroke-width=\"1.8\"");

    out << "<text x=\"" << fmt(margin_left) << "\" y=\"" << fmt(total_height - 8.0)
        << "\" font-size=\"11\" fill=\"#555\">" << time_index.front() << "</text>\n";
    out << "<text x=\"" << fmt(width - margin_right) << "\" y=\"" << fmt(total_height - 8.0)
        << "\" font-size=\"11\" fill=\"#555\" text-anchor=\"end\">" << time_index.back()
        << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace scs
