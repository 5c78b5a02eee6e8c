#include "scs/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "scs/errors.hpp"

namespace scs {
namespace {

[[noreturn]] void throw_rank_deficient(const PanelData& panel,
                                       const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                                       Eigen::Index k) {
    const auto& perm = qr.colsPermutation().indices();
    std::ostringstream os;
    os << "rank-deficient donor matrix; collinear columns:";
    for (Eigen::Index j = qr.rank(); j < k; ++j)
        os << " " << panel.donor_units[static_cast<std::size_t>(perm(j))];
    throw_numerical("rank-deficient", os.str());
}

Eigen::VectorXd solve_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    return X.colPivHouseholderQr().solve(y);
}

/// Lawson-Hanson active-set NNLS. Coordinates clamped at zero by the active
/// set are exact zeros in the result.
Eigen::VectorXd solve_nnls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int max_iter) {
    const Eigen::Index k = X.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
    std::vector<bool> passive(static_cast<std::size_t>(k), false);
    Eigen::VectorXd w = X.transpose() * (y - X * x);
    const double gtol = 1e-10 * std::max(1.0, w.cwiseAbs().maxCoeff());

    int iterations = 0;
    while (true) {
        Eigen::Index enter = -1;
        double best = gtol;
        for (Eigen::Index i = 0; i < k; ++i)
            if (!passive[static_cast<std::size_t>(i)] && w(i) > best) {
                best = w(i);
                enter = i;
            }
        if (enter < 0) break;
        passive[static_cast<std::size_t>(enter)] = true;

        while (true) {
            if (++iterations > max_iter)
                throw_numerical("nnls-non-convergence", "active-set iteration cap exceeded");

            std::vector<Eigen::Index> idx;
            for (Eigen::Index i = 0; i < k; ++i)
                if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
            Eigen::MatrixXd Xp(X.rows(), static_cast<Eigen::Index>(idx.size()));
            for (std::size_t j = 0; j < idx.size(); ++j) Xp.col(static_cast<Eigen::Index>(j)) = X.col(idx[j]);
            const Eigen::VectorXd zp = Xp.colPivHouseholderQr().solve(y);

            Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
            for (std::size_t j = 0; j < idx.size(); ++j) z(idx[j]) = zp(static_cast<Eigen::Index>(j));

            double zmin = std::numeric_limits<double>::infinity();
            for (const auto i : idx) zmin = std::min(zmin, z(i));
            if (zmin > 0.0) {
                x = z;
                break;
            }

            double alpha = std::numeric_limits<double>::infinity();
            for (const auto i : idx)
                if (z(i) <= 0.0) alpha = std::min(alpha, x(i) / (x(i) - z(i)));
            x += alpha * (z - x);
            for (const auto i : idx)
                if (x(i) <= 1e-14) {
                    x(i) = 0.0;
                    passive[static_cast<std::size_t>(i)] = false;
                }
        }
        w = X.transpose() * (y - X * x);
    }
    return x;
}

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
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

/// Sum-one constrained nonnegative least squares. Scheme: warm start from
/// NNLS on the augmented system [X; mu 1^T] b ~ [y; mu] (soft sum-one
/// penalty), Euclidean-project onto the simplex, then polish with a primal
/// active set on the equality-constrained KKT system: step from the current
/// feasible point toward each subproblem solution, clamping the first
/// coordinate driven to zero, and free a clamped coordinate only when its
/// first-order multiplier shows the objective can still fall.
Eigen::VectorXd solve_simplex(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int max_iter) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();

    const double mu = 10.0 * std::max(1.0, X.cwiseAbs().maxCoeff()) * std::sqrt(static_cast<double>(n));
    Eigen::MatrixXd Xa(n + 1, k);
    Xa.topRows(n) = X;
    Xa.bottomRows(1).setConstant(mu);
    Eigen::VectorXd ya(n + 1);
    ya.head(n) = y;
    ya(n) = mu;

    Eigen::VectorXd x = project_simplex(solve_nnls(Xa, ya, max_iter + 10 * static_cast<int>(k)));

    std::vector<bool> clamped(static_cast<std::size_t>(k), false);
    for (Eigen::Index i = 0; i < k; ++i) clamped[static_cast<std::size_t>(i)] = x(i) <= 0.0;

    const Eigen::MatrixXd gram = X.transpose() * X;
    const Eigen::VectorXd xty = X.transpose() * y;
    const double ktol = 1e-9 * std::max(1.0, xty.cwiseAbs().maxCoeff());
    const int polish_cap = std::max(200, 25 * static_cast<int>(k));

    for (int it = 0; it < polish_cap; ++it) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < k; ++i)
            if (!clamped[static_cast<std::size_t>(i)]) idx.push_back(i);
        const auto m = static_cast<Eigen::Index>(idx.size());

        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
        Eigen::VectorXd rhs(m + 1);
        for (Eigen::Index r = 0; r < m; ++r) {
            for (Eigen::Index c = 0; c < m; ++c) kkt(r, c) = gram(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
            kkt(r, m) = 1.0;
            kkt(m, r) = 1.0;
            rhs(r) = xty(idx[static_cast<std::size_t>(r)]);
        }
        rhs(m) = 1.0;
        const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);

        Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
        for (Eigen::Index j = 0; j < m; ++j) z(idx[static_cast<std::size_t>(j)]) = sol(j);

        double zmin = 0.0;
        for (const auto i : idx) zmin = std::min(zmin, z(i));
        if (zmin >= -1e-12) {
            for (const auto i : idx) x(i) = std::max(z(i), 0.0);
            for (Eigen::Index i = 0; i < k; ++i)
                if (clamped[static_cast<std::size_t>(i)]) x(i) = 0.0;

            const double lambda = sol(m);
            const Eigen::VectorXd gradient = gram * x - xty;
            Eigen::Index enter = -1;
            double most_negative = -ktol;
            for (Eigen::Index i = 0; i < k; ++i)
                if (clamped[static_cast<std::size_t>(i)] && gradient(i) + lambda < most_negative) {
                    most_negative = gradient(i) + lambda;
                    enter = i;
                }
            if (enter < 0) return x;
            clamped[static_cast<std::size_t>(enter)] = false;
            continue;
        }

        double alpha = 1.0;
        Eigen::Index blocking = -1;
        for (const auto i : idx)
            if (z(i) < 0.0 && x(i) - z(i) > 0.0) {
                const double step = x(i) / (x(i) - z(i));
                if (step < alpha) {
                    alpha = step;
                    blocking = i;
                }
            }
        x += alpha * (z - x);
        if (blocking >= 0) {
            x(blocking) = 0.0;
            clamped[static_cast<std::size_t>(blocking)] = true;
        }
    }
    throw_numerical("simplex-non-convergence", "active-set iteration cap exceeded");
}

} // namespace

WeightModel fit_weights(const PanelData& panel, const InterventionSpec& spec,
                        const FitMethod& method) {
    const auto diagnostics = validate(panel);
    if (!diagnostics.empty()) {
        std::ostringstream os;
        os << "invalid panel: " << diagnostics.front();
        if (diagnostics.size() > 1) os << " (and " << diagnostics.size() - 1 << " more)";
        throw_data("invalid-panel", os.str());
    }

    const auto [pre, post] = split_pre_post(panel, spec);
    const auto n = static_cast<Eigen::Index>(pre.size());
    const auto k = static_cast<Eigen::Index>(panel.donor_units.size());
    const Eigen::MatrixXd X = panel.donor_matrix().topRows(n);
    const Eigen::VectorXd y = panel.treated_column().head(n);

    if (method.variant == FitVariant::OlsNoIntercept && n < k) {
        std::ostringstream os;
        os << "underdetermined system: " << n << " pre periods for " << k << " donors";
        throw_numerical("underdetermined", os.str());
    }
    if (n >= k) {
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        if (qr.rank() < k) throw_rank_deficient(panel, qr, k);
    }

    const int cap = 10 * static_cast<int>(k);
    Eigen::VectorXd beta;
    switch (method.variant) {
        case FitVariant::OlsNoIntercept: beta = solve_ols(X, y); break;
        case FitVariant::Nnls: beta = solve_nnls(X, y, cap); break;
        case FitVariant::SimplexConstrained: beta = solve_simplex(X, y, cap); break;
    }

    for (Eigen::Index i = 0; i < beta.size(); ++i)
        if (std::abs(beta(i)) <= method.zero_tolerance) beta(i) = 0.0;

    WeightModel model;
    model.donor_names = panel.donor_units;
    model.beta = beta;
    model.method = method;
    model.pre_rmse = std::sqrt((y - X * beta).squaredNorm() / static_cast<double>(n));
    return model;
}

Eigen::VectorXd predict_counterfactual(const WeightModel& model, const PanelData& panel) {
    Eigen::MatrixXd X(panel.values.rows(), static_cast<Eigen::Index>(model.donor_names.size()));
    for (std::size_t j = 0; j < model.donor_names.size(); ++j) {
        if (!panel.column_of(model.donor_names[j]))
            throw_data("donor-missing", "donor missing from panel: " + model.donor_names[j]);
        X.col(static_cast<Eigen::Index>(j)) = panel.column(model.donor_names[j]);
    }
    return X * model.beta;
}

AttResult compute_att(const Eigen::VectorXd& observed, const Eigen::VectorXd& counterfactual,
                      const std::vector<long long>& time_index, const InterventionSpec& spec) {
    const auto rows = static_cast<Eigen::Index>(time_index.size());
    if (observed.size() != rows || counterfactual.size() != rows) {
        std::ostringstream os;
        os << "misaligned series lengths: observed " << observed.size() << ", counterfactual "
           << counterfactual.size() << ", time index " << rows;
        throw_data("misaligned-series", os.str());
    }
    const auto [pre, post] = split_time_index(time_index, spec);

    AttResult result;
    result.counterfactual = counterfactual;
    const auto m = static_cast<Eigen::Index>(post.size());
    result.att_per_period.resize(m);
    result.running_att.resize(m);
    double cumulative = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto row = static_cast<Eigen::Index>(post.begin) + i;
        result.att_per_period(i) = observed(row) - counterfactual(row);
        cumulative += result.att_per_period(i);
        result.running_att(i) = cumulative / static_cast<double>(i + 1);
    }
    result.avg_att = result.running_att(m - 1);
    return result;
}

} // namespace scs
