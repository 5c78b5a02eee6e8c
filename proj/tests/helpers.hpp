#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "scs/errors.hpp"
#include "scs/panel.hpp"
#include "scs/rng.hpp"

namespace helpers {

inline scs::PanelData panel_from_columns(const std::vector<long long>& time,
                                         const std::vector<std::string>& names,
                                         const std::vector<Eigen::VectorXd>& columns,
                                         const std::string& treated,
                                         const std::vector<std::string>& donors) {
    scs::PanelData panel;
    panel.time_index = time;
    panel.unit_names = names;
    panel.values.resize(static_cast<Eigen::Index>(time.size()),
                        static_cast<Eigen::Index>(names.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
        panel.values.col(static_cast<Eigen::Index>(c)) = columns[c];
    panel.treated_unit = treated;
    panel.donor_units = donors;
    return panel;
}

/// Treated = random combination of random donor columns plus noise.
inline scs::PanelData random_panel(scs::Rng& rng, int rows, int donors, double noise) {
    std::vector<long long> time(static_cast<std::size_t>(rows));
    for (int t = 0; t < rows; ++t) time[static_cast<std::size_t>(t)] = t + 1;

    std::vector<std::string> names{"Y"};
    std::vector<std::string> donor_names;
    for (int j = 0; j < donors; ++j) {
        donor_names.push_back("D" + std::to_string(j + 1));
        names.push_back(donor_names.back());
    }

    Eigen::MatrixXd x(rows, donors);
    for (int t = 0; t < rows; ++t)
        for (int j = 0; j < donors; ++j) x(t, j) = rng.normal();
    Eigen::VectorXd weights(donors);
    for (int j = 0; j < donors; ++j) weights(j) = rng.normal();
    Eigen::VectorXd y = x * weights;
    for (int t = 0; t < rows; ++t) y(t) += noise * rng.normal();

    std::vector<Eigen::VectorXd> columns{y};
    for (int j = 0; j < donors; ++j) columns.push_back(x.col(j));
    return panel_from_columns(time, names, columns, "Y", donor_names);
}

/// Error code raised by fn, or "" when it does not throw.
inline std::string code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const scs::Error& e) {
        return e.code();
    }
    return "";
}

/// Normal-equations brute force (X'X)b = X'y via Gauss-Jordan elimination.
inline Eigen::VectorXd normal_equations_beta(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Eigen::MatrixXd gram = X.transpose() * X;
    const Eigen::VectorXd rhs = X.transpose() * y;
    const Eigen::Index k = gram.rows();
    Eigen::MatrixXd aug(k, k + 1);
    aug.leftCols(k) = gram;
    aug.col(k) = rhs;
    for (Eigen::Index col = 0; col < k; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < k; ++r)
            if (std::abs(aug(r, col)) > std::abs(aug(pivot, col))) pivot = r;
        aug.row(col).swap(aug.row(pivot));
        aug.row(col) /= aug(col, col);
        for (Eigen::Index r = 0; r < k; ++r)
            if (r != col) aug.row(r) -= aug(r, col) * aug.row(col);
    }
    return aug.col(k);
}

inline double sse(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& b) {
    return (y - X * b).squaredNorm();
}

/// Euclidean projection onto the probability simplex (test-side copy).
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    const Eigen::Index k = v.size();
    std::vector<double> sorted(v.data(), v.data() + k);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        cumulative += sorted[static_cast<std::size_t>(j)];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) tau = candidate;
    }
    Eigen::VectorXd out(k);
    for (Eigen::Index i = 0; i < k; ++i) out(i) = std::max(v(i) - tau, 0.0);
    return out;
}

} // namespace helpers
