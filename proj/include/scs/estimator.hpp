#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "scs/panel.hpp"

namespace scs {

enum class FitVariant { OlsNoIntercept, Nnls, SimplexConstrained };

/// Fitting recipe. Coefficients with |beta_i| <= zero_tolerance are reported
/// as exact zeros; the reported vector is the model used everywhere
/// downstream (predictions, effective donor count).
struct FitMethod {
    FitVariant variant = FitVariant::OlsNoIntercept;
    double zero_tolerance = 1e-8;
};

/// Fitted linear weight model: prediction(t) = sum_i beta_i * donor_i(t).
/// No intercept term by construction.
struct WeightModel {
    std::vector<std::string> donor_names; ///< aligned with beta
    Eigen::VectorXd beta;                 ///< reported (zeroed) weights, dimensionless
    FitMethod method;
    double pre_rmse = 0.0;                ///< RMSE of the reported model on Pre rows
};

/// Per-period treatment effect on the treated over the Post phase.
struct AttResult {
    Eigen::VectorXd counterfactual;  ///< all periods, outcome units
    Eigen::VectorXd att_per_period;  ///< Post rows: observed - counterfactual
    Eigen::VectorXd running_att;     ///< running mean of att_per_period
    double avg_att = 0.0;            ///< mean over Post; equals running_att tail
};

/// Fit weights on the Pre rows by least squares without intercept.
/// OlsNoIntercept solves the unconstrained problem; Nnls restricts beta >= 0;
/// SimplexConstrained additionally imposes sum(beta) = 1.
///
/// Throws Error(Data) when the panel fails validation, Error(Numerical) for
/// an underdetermined OLS system, a rank-deficient donor matrix (the message
/// names the collinear columns), or active-set non-convergence.
[[nodiscard]] WeightModel fit_weights(const PanelData& panel, const InterventionSpec& spec,
                                      const FitMethod& method);

/// Apply the fitted model over every period of the panel.
/// Throws Error(Data) when a model donor is missing from the panel.
[[nodiscard]] Eigen::VectorXd predict_counterfactual(const WeightModel& model,
                                                     const PanelData& panel);

/// ATT series for the Post rows of the given time index.
/// Throws Error(Data) on misaligned series lengths.
[[nodiscard]] AttResult compute_att(const Eigen::VectorXd& observed,
                                    const Eigen::VectorXd& counterfactual,
                                    const std::vector<long long>& time_index,
                                    const InterventionSpec& spec);

} // namespace scs
