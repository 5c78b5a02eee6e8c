#include "scs/sim.hpp"

#include <cmath>
#include <string>

#include "scs/errors.hpp"
#include "scs/estimator.hpp"
#include "scs/rng.hpp"
#include "scs/sensitivity.hpp"

namespace scs {
namespace {

void check_config(const SimConfig& config) {
    if (config.t_pre < 2) throw_config("t-pre-too-small", "t_pre must be at least 2");
    if (config.t_post < 1) throw_config("t-post-too-small", "t_post must be at least 1");
    const auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!probability(config.w_prob_pre) || !probability(config.w_prob_post))
        throw_config("bad-probability", "w probabilities must lie in [0, 1]");
    if (config.x_width < 1 || config.z_width < 1)
        throw_config("bad-width", "proxy widths must be at least 1");
    if (!(std::abs(config.rho) < 1.0)) throw_config("bad-rho", "|rho| must be below 1");
}

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

} // namespace

SimDataset generate(const SimConfig& config) {
    check_config(config);
    const int total = config.t_pre + config.t_post;
    Rng rng(config.seed);

    SimDataset dataset;
    dataset.config = config;
    dataset.u_series.resize(total);
    dataset.w_series.resize(total);
    dataset.i_series.resize(total);
    dataset.z_series.resize(total, config.z_width);
    Eigen::VectorXd y(total);
    Eigen::MatrixXd x(total, config.x_width);

    for (int t = 0; t < total; ++t) {
        const bool post = t >= config.t_pre;
        const double w_prob = post ? config.w_prob_post : config.w_prob_pre;
        const double x_mean = post ? config.x_noise_mean_post : config.x_noise_mean_pre;

        const double shock = rng.normal(1.0, 1.0);
        const double u = (config.rho != 0.0 && t > 0)
                             ? config.rho * dataset.u_series(t - 1) + shock
                             : shock;
        const double w = rng.bernoulli(w_prob);
        const double eps_y = rng.normal();
        for (int j = 0; j < config.x_width; ++j) x(t, j) = config.c * u + rng.normal(x_mean, 1.0);
        for (int j = 0; j < config.z_width; ++j) dataset.z_series(t, j) = config.d * w + rng.normal();

        double i = 0.0;
        if (post)
            i = config.stochastic_intervention ? rng.bernoulli(sigmoid(u)) + rng.normal() : 1.0;

        dataset.u_series(t) = u;
        dataset.w_series(t) = w;
        dataset.i_series(t) = i;
        y(t) = config.a * u + config.b * w + config.treatment_effect * i + eps_y;
    }

    PanelData& panel = dataset.panel;
    panel.time_index.resize(static_cast<std::size_t>(total));
    for (int t = 0; t < total; ++t) panel.time_index[static_cast<std::size_t>(t)] = t + 1;
    panel.unit_names.push_back("Y");
    for (int j = 0; j < config.x_width; ++j) panel.unit_names.push_back("X" + std::to_string(j + 1));
    panel.values.resize(total, 1 + config.x_width);
    panel.values.col(0) = y;
    panel.values.rightCols(config.x_width) = x;
    panel.treated_unit = "Y";
    panel.donor_units.assign(panel.unit_names.begin() + 1, panel.unit_names.end());
    return dataset;
}

double true_bias_population(const SimConfig& config) {
    return std::abs(config.b * (config.w_prob_pre - config.w_prob_post));
}

double proxies_bias_sample(const SimDataset& dataset) {
    const SimConfig& config = dataset.config;
    if (config.d == 0.0) throw_config("d-zero", "proxies bias undefined for d = 0");
    const int pre = config.t_pre;
    const double pre_mean = dataset.z_series.topRows(pre).mean();
    const double post_mean = dataset.z_series.bottomRows(config.t_post).mean();
    return std::abs(config.b / config.d * (pre_mean - post_mean));
}

BiasOracle compute_bias_oracle(const SimDataset& dataset) {
    const SimConfig& config = dataset.config;
    BiasOracle oracle;
    const double w_pre = dataset.w_series.head(config.t_pre).mean();
    const double w_post = dataset.w_series.tail(config.t_post).mean();
    oracle.true_bias = std::abs(config.b * (w_pre - w_post));
    oracle.proxies_bias = proxies_bias_sample(dataset);

    const InterventionSpec spec = dataset.intervention();
    const WeightModel model = fit_weights(dataset.panel, spec, FitMethod{});
    const auto report = bias_bound(model, proxy_mean_shifts(dataset.panel, spec, model.donor_names));
    oracle.realized_bound = report.bound;
    return oracle;
}

ValidityStats run_validity_experiment(const SimConfig& config, int replications) {
    if (replications < 1) throw_config("bad-replications", "replications must be at least 1");
    check_config(config);

    ValidityStats stats;
    stats.replications = replications;
    stats.ratio_ac = config.a / config.c;
    stats.ratio_bd = config.b / config.d;
    stats.condition_weighting = stats.ratio_ac > stats.ratio_bd;
    stats.x_mean_shift_population = std::abs(config.x_noise_mean_post - config.x_noise_mean_pre);
    stats.z_mean_shift_population = std::abs(config.d * (config.w_prob_pre - config.w_prob_post));
    stats.condition_mean_shift = stats.x_mean_shift_population > stats.z_mean_shift_population;

    long long covered = 0;
    double sum_bound = 0.0;
    double sum_bias = 0.0;
    double sum_sample_bound = 0.0;
    double sum_prediction_bias = 0.0;

    for (int r = 0; r < replications; ++r) {
        SimConfig rep = config;
        rep.seed = replication_seed(config.seed, static_cast<std::uint64_t>(r));
        const SimDataset dataset = generate(rep);
        const InterventionSpec spec = dataset.intervention();
        const WeightModel model = fit_weights(dataset.panel, spec, FitMethod{});

        double max_abs_beta = 0.0;
        for (Eigen::Index i = 0; i < model.beta.size(); ++i)
            if (model.beta(i) != 0.0) max_abs_beta = std::max(max_abs_beta, std::abs(model.beta(i)));
        const auto n_eff = static_cast<double>(effective_n(model));
        const double bound = n_eff * max_abs_beta * stats.x_mean_shift_population;

        const auto shifts = proxy_mean_shifts(dataset.panel, spec, model.donor_names);
        double max_sample_shift = 0.0;
        for (std::size_t i = 0; i < model.donor_names.size(); ++i)
            if (model.beta(static_cast<Eigen::Index>(i)) != 0.0)
                max_sample_shift = std::max(max_sample_shift, shifts.at(model.donor_names[i]));
        const double sample_bound = n_eff * max_abs_beta * max_sample_shift;

        const double w_pre = dataset.w_series.head(rep.t_pre).mean();
        const double w_post = dataset.w_series.tail(rep.t_post).mean();
        const double true_bias = std::abs(rep.b * (w_pre - w_post));

        const Eigen::VectorXd prediction = predict_counterfactual(model, dataset.panel);
        const Eigen::VectorXd untreated =
            dataset.panel.treated_column() - rep.treatment_effect * dataset.i_series;
        const double prediction_bias =
            std::abs((prediction - untreated).tail(rep.t_post).mean());

        if (bound >= true_bias) ++covered;
        sum_bound += bound;
        sum_bias += true_bias;
        sum_sample_bound += sample_bound;
        sum_prediction_bias += prediction_bias;
    }

    const auto n = static_cast<double>(replications);
    stats.coverage = static_cast<double>(covered) / n;
    stats.mean_bound = sum_bound / n;
    stats.mean_true_sample_bias = sum_bias / n;
    stats.mean_sample_shift_bound = sum_sample_bound / n;
    stats.mean_prediction_bias = sum_prediction_bias / n;
    return stats;
}

} // namespace scs
