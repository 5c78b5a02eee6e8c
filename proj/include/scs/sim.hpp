#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "scs/panel.hpp"

namespace scs {

/// Structural-model configuration for the benchmark generator. Per period:
///   u ~ N(1,1) (i.i.d., or AR(1) with coefficient rho when rho != 0)
///   w ~ Bernoulli(w_prob_phase)
///   y = a*u + b*w + treatment_effect*i + eps_y,   eps_y ~ N(0,1)
///   x_j = c*u + eps_x,  eps_x ~ N(x_noise_mean_phase, 1)
///   z_j = d*w + eps_z,  eps_z ~ N(0,1)
/// with i = 0 in the pre phase and i = 1 in the post phase (or drawn as
/// bernoulli(sigmoid(u)) plus unit noise when stochastic_intervention).
struct SimConfig {
    double a = 1.0, b = 0.5, c = 1.0, d = 0.5;
    int t_pre = 100, t_post = 100;
    double w_prob_pre = 0.5, w_prob_post = 1.0;
    double x_noise_mean_pre = 0.0, x_noise_mean_post = 0.5;
    double treatment_effect = 2.0;
    std::uint64_t seed = 0;
    int x_width = 1, z_width = 1; ///< observed / unobserved proxy column counts
    double rho = 0.0;             ///< AR(1) memory on u; 0 keeps periods i.i.d.
    bool stochastic_intervention = false;
};

/// Generated panel (Y treated, X1..Xk donors) plus the latent ground truth.
struct SimDataset {
    PanelData panel;
    Eigen::MatrixXd z_series; ///< unobserved proxies, rows = periods
    Eigen::VectorXd u_series;
    Eigen::VectorXd w_series;
    Eigen::VectorXd i_series;
    SimConfig config;

    [[nodiscard]] InterventionSpec intervention() const {
        return InterventionSpec{static_cast<long long>(config.t_pre) + 1};
    }
};

/// Ground-truth bias quantities for one generated dataset.
struct BiasOracle {
    double true_bias = 0.0;      ///< |b * (sample mean w_pre - sample mean w_post)|
    double proxies_bias = 0.0;   ///< |(b/d) * (sample mean Z_pre - sample mean Z_post)|
    double realized_bound = 0.0; ///< observable bound from a default OLS fit on this dataset
};

/// Aggregates of the bound-validity experiment. Coverage compares the bound
/// evaluated at the population proxy-mean shift against the realized sample
/// true bias per replication; the sample-shift bound and the prediction
/// error against the true untreated outcome are carried as diagnostics. The
/// two validity conditions (weighting a/c vs b/d, population mean-shift
/// dominance of X over Z) are reported, never assumed.
struct ValidityStats {
    double coverage = 0.0;
    double mean_bound = 0.0;
    double mean_true_sample_bias = 0.0;
    double mean_sample_shift_bound = 0.0;
    double mean_prediction_bias = 0.0;
    double ratio_ac = 0.0;
    double ratio_bd = 0.0;
    bool condition_weighting = false;
    double x_mean_shift_population = 0.0;
    double z_mean_shift_population = 0.0;
    bool condition_mean_shift = false;
    int replications = 0;
};

/// Draw one dataset. Per-period draw order is pinned (u, w, eps_y, eps_x
/// columns, eps_z columns, then the intervention indicator when stochastic)
/// so identical (config, seed) reproduce bit-identical datasets.
/// Throws Error(Config) on invalid configuration.
[[nodiscard]] SimDataset generate(const SimConfig& config);

/// |b * (w_prob_pre - w_prob_post)|.
[[nodiscard]] double true_bias_population(const SimConfig& config);

/// Sample proxies bias |(b/d)(mean Z_pre - mean Z_post)|; Z columns pooled.
/// Throws Error(Config) when d = 0.
[[nodiscard]] double proxies_bias_sample(const SimDataset& dataset);

/// All oracle quantities for one dataset, including the observable bound
/// from a default OLS fit.
[[nodiscard]] BiasOracle compute_bias_oracle(const SimDataset& dataset);

/// Independent seeded replications: generate, fit OLS without intercept,
/// accumulate bound and bias realizations.
/// Throws Error(Config) when replications < 1.
[[nodiscard]] ValidityStats run_validity_experiment(const SimConfig& config, int replications);

} // namespace scs
