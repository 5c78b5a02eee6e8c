#include "scs/csv.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "scs/errors.hpp"

namespace scs {
namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::size_t row, const std::string& column) {
    const std::string text = strip(raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        std::ostringstream os;
        os << "cannot parse cell at row " << row << ", column '" << column << "': '" << text << "'";
        throw_data("bad-cell", os.str());
    }
    return value;
}

long long parse_time(const std::string& raw, std::size_t row) {
    const std::string text = strip(raw);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        std::ostringstream os;
        os << "cannot parse cell at row " << row << ", column 'time': '" << text << "'";
        throw_data("bad-cell", os.str());
    }
    return value;
}

bool valid_unit_name(const std::string& name) {
    if (name.empty()) return false;
    for (const char ch : name) {
        const bool ok = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
                        (ch >= '0' && ch <= '9') || ch == '_' || ch == ' ' || ch == '-';
        if (!ok) return false;
    }
    return true;
}

} // namespace

std::string format_full(double v) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
    return {buffer, ptr};
}

PanelData load_panel_csv(const std::string& path, const std::string& treated_unit,
                         const std::vector<std::string>& donor_units) {
    std::ifstream file(path);
    if (!file) throw_data("file-not-found", "cannot open " + path);

    std::string line;
    if (!std::getline(file, line)) throw_data("empty-file", "empty file: " + path);
    const auto header = split_line(line);
    if (header.empty() || strip(header[0]) != "time")
        throw_data("bad-header", "first header column must be 'time' in " + path);

    PanelData panel;
    std::set<std::string> seen;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const std::string name = strip(header[c]);
        if (!valid_unit_name(name))
            throw_data("bad-unit-name", "invalid unit name in header: '" + name + "'");
        if (!seen.insert(name).second) throw_data("duplicate-unit", "duplicate unit header: " + name);
        panel.unit_names.push_back(name);
    }
    if (panel.unit_names.empty()) throw_data("no-units", "no unit columns in " + path);

    std::vector<std::vector<double>> rows;
    std::size_t row_number = 1;
    while (std::getline(file, line)) {
        ++row_number;
        if (strip(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            std::ostringstream os;
            os << "row " << row_number << " has " << cells.size() << " cells, expected "
               << header.size();
            throw_data("bad-row", os.str());
        }
        panel.time_index.push_back(parse_time(cells[0], row_number));
        std::vector<double> row(panel.unit_names.size());
        for (std::size_t c = 1; c < cells.size(); ++c)
            row[c - 1] = parse_cell(cells[c], row_number, panel.unit_names[c - 1]);
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw_data("too-few-rows", "panel needs at least 2 rows: " + path);

    for (std::size_t i = 1; i < panel.time_index.size(); ++i)
        if (panel.time_index[i] <= panel.time_index[i - 1]) {
            std::ostringstream os;
            os << "time column not strictly increasing at row " << i + 2 << " ("
               << panel.time_index[i - 1] << " then " << panel.time_index[i] << ")";
            throw_data("unsorted-time", os.str());
        }

    panel.values.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(panel.unit_names.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            panel.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];

    panel.treated_unit = treated_unit;
    panel.donor_units = donor_units;
    if (!panel.column_of(treated_unit))
        throw_config("unknown-column", "treated unit not a CSV column: " + treated_unit);
    for (const auto& donor : donor_units)
        if (!panel.column_of(donor))
            throw_config("unknown-column", "donor unit not a CSV column: " + donor);
    return panel;
}

void write_panel_csv(const std::string& path, const PanelData& panel) {
    std::ofstream file(path);
    if (!file) throw_data("cannot-write", "cannot write " + path);
    file << "time";
    for (const auto& name : panel.unit_names) file << "," << name;
    file << "\n";
    for (std::size_t r = 0; r < panel.rows(); ++r) {
        file << panel.time_index[r];
        for (Eigen::Index c = 0; c < panel.values.cols(); ++c)
            file << "," << format_full(panel.values(static_cast<Eigen::Index>(r), c));
        file << "\n";
    }
}

void write_sim_csvs(const std::string& path, const SimDataset& dataset) {
    write_panel_csv(path, dataset.panel);

    std::string sidecar = path;
    if (sidecar.size() > 4 && sidecar.substr(sidecar.size() - 4) == ".csv")
        sidecar = sidecar.substr(0, sidecar.size() - 4);
    sidecar += ".latents.csv";

    std::ofstream file(sidecar);
    if (!file) throw_data("cannot-write", "cannot write " + sidecar);
    file << "time,u,w,i";
    for (Eigen::Index j = 0; j < dataset.z_series.cols(); ++j) file << ",Z" << j + 1;
    file << "\n";
    for (std::size_t r = 0; r < dataset.panel.rows(); ++r) {
        const auto row = static_cast<Eigen::Index>(r);
        file << dataset.panel.time_index[r] << "," << format_full(dataset.u_series(row)) << ","
             << format_full(dataset.w_series(row)) << "," << format_full(dataset.i_series(row));
        for (Eigen::Index j = 0; j < dataset.z_series.cols(); ++j)
            file << "," << format_full(dataset.z_series(row, j));
        file << "\n";
    }
}

} // namespace scs
