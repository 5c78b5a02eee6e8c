#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "scs/estimator.hpp"
#include "scs/rng.hpp"
#include "scs/sim.hpp"

#include "helpers.hpp"

using helpers::code_of;

TEST_CASE("generate rejects invalid configurations") {
    scs::SimConfig config;
    config.t_pre = 1;
    CHECK(code_of([&] { (void)scs::generate(config); }) == "t-pre-too-small");

    config = {};
    config.t_post = 0;
    CHECK(code_of([&] { (void)scs::generate(config); }) == "t-post-too-small");

    config = {};
    config.w_prob_pre = 1.5;
    CHECK(code_of([&] { (void)scs::generate(config); }) == "bad-probability");

    config = {};
    config.x_width = 0;
    CHECK(code_of([&] { (void)scs::generate(config); }) == "bad-width");

    config = {};
    config.rho = 1.0;
    CHECK(code_of([&] { (void)scs::generate(config); }) == "bad-rho");
}

TEST_CASE("generated datasets have the documented shape") {
    scs::SimConfig config;
    config.t_pre = 10;
    config.t_post = 5;
    config.x_width = 2;
    config.z_width = 3;
    const auto dataset = scs::generate(config);

    CHECK(dataset.panel.rows() == 15);
    CHECK(dataset.panel.time_index.front() == 1);
    CHECK(dataset.panel.time_index.back() == 15);
    CHECK(dataset.panel.treated_unit == "Y");
    CHECK(dataset.panel.donor_units == std::vector<std::string>{"X1", "X2"});
    CHECK(dataset.z_series.rows() == 15);
    CHECK(dataset.z_series.cols() == 3);
    CHECK(dataset.intervention().t0 == 11);
    CHECK(scs::validate(dataset.panel).empty());

    for (int t = 0; t < 10; ++t) CHECK(dataset.i_series(t) == 0.0);
    for (int t = 10; t < 15; ++t) CHECK(dataset.i_series(t) == 1.0);
    for (int t = 10; t < 15; ++t) CHECK(dataset.w_series(t) == 1.0);
}

TEST_CASE("identical config and seed reproduce the dataset bit for bit") {
    scs::SimConfig config;
    config.seed = 777;
    config.t_pre = 40;
    config.t_post = 20;
    config.z_width = 2;
    const auto first = scs::generate(config);
    const auto second = scs::generate(config);

    CHECK(first.panel.values == second.panel.values);
    CHECK(first.z_series == second.z_series);
    CHECK(first.u_series == second.u_series);
    CHECK(first.w_series == second.w_series);
    CHECK(first.i_series == second.i_series);

    config.seed = 778;
    const auto other = scs::generate(config);
    CHECK(first.panel.values != other.panel.values);
}

TEST_CASE("mechanism coefficients act identically at every period") {
    scs::SimConfig config;
    config.seed = 4242;
    config.t_pre = 50;
    config.t_post = 50;
    const auto base = scs::generate(config);

    auto shifted = config;
    shifted.treatment_effect = 5.0;
    const auto effect_run = scs::generate(shifted);
    const Eigen::VectorXd y_delta =
        effect_run.panel.column("Y") - base.panel.column("Y");
    for (int t = 0; t < 100; ++t)
        CHECK(y_delta(t) == doctest::Approx(3.0 * base.i_series(t)).epsilon(1e-12));
    CHECK(effect_run.panel.column("X1") == base.panel.column("X1"));
    CHECK(effect_run.z_series == base.z_series);
    CHECK(effect_run.u_series == base.u_series);

    auto b_shifted = config;
    b_shifted.b = 1.5;
    const auto b_run = scs::generate(b_shifted);
    const Eigen::VectorXd b_delta = b_run.panel.column("Y") - base.panel.column("Y");
    for (int t = 0; t < 100; ++t)
        CHECK(b_delta(t) == doctest::Approx(1.0 * base.w_series(t)).epsilon(1e-12));
    CHECK(b_run.panel.column("X1") == base.panel.column("X1"));
    CHECK(b_run.z_series == base.z_series);

    auto d_shifted = config;
    d_shifted.d = 2.0;
    const auto d_run = scs::generate(d_shifted);
    for (int t = 0; t < 100; ++t)
        CHECK(d_run.z_series(t, 0) - base.z_series(t, 0) ==
              doctest::Approx(1.5 * base.w_series(t)).epsilon(1e-12));
    CHECK(d_run.panel.column("Y") == base.panel.column("Y"));
    CHECK(d_run.panel.column("X1") == base.panel.column("X1"));
}

TEST_CASE("sample moments track the configured distributions") {
    scs::SimConfig config;
    config.seed = 31;
    config.t_pre = 1000;
    config.t_post = 1000;
    const auto dataset = scs::generate(config);

    const double w_pre = dataset.w_series.head(1000).mean();
    CHECK(std::abs(w_pre - 0.5) < 0.05);
    CHECK(dataset.w_series.tail(1000).minCoeff() == 1.0);

    const double u_mean = dataset.u_series.mean();
    CHECK(std::abs(u_mean - 1.0) < 0.1);

    const double x_pre = dataset.panel.column("X1").head(1000).mean();
    const double x_post = dataset.panel.column("X1").tail(1000).mean();
    CHECK(std::abs((x_post - x_pre) - 0.5) < 0.2);
}

TEST_CASE("post-minus-pre outcome gap matches the analytic decomposition") {
    scs::SimConfig config;
    config.seed = 97;
    config.t_pre = 4000;
    config.t_post = 4000;
    const auto dataset = scs::generate(config);
    const Eigen::VectorXd y = dataset.panel.column("Y");
    const double gap = y.tail(4000).mean() - y.head(4000).mean();
    CHECK(std::abs(gap - 2.25) < 0.15);
}

TEST_CASE("AR memory is off by default and on when rho is set") {
    scs::SimConfig config;
    config.seed = 55;
    config.t_pre = 2000;
    config.t_post = 2000;
    const auto iid = scs::generate(config);

    auto ar = config;
    ar.rho = 0.6;
    const auto correlated = scs::generate(ar);

    const auto autocorrelation = [](const Eigen::VectorXd& u) {
        const Eigen::Index n = u.size() - 1;
        const double mean = u.mean();
        double num = 0.0, den = 0.0;
        for (Eigen::Index t = 0; t < n; ++t) num += (u(t) - mean) * (u(t + 1) - mean);
        for (Eigen::Index t = 0; t < u.size(); ++t) den += (u(t) - mean) * (u(t) - mean);
        return num / den;
    };
    CHECK(std::abs(autocorrelation(iid.u_series)) < 0.08);
    CHECK(autocorrelation(correlated.u_series) > 0.4);
}

TEST_CASE("stochastic intervention draws a noisy indicator in post") {
    scs::SimConfig config;
    config.seed = 12;
    config.t_pre = 50;
    config.t_post = 50;
    config.stochastic_intervention = true;
    const auto dataset = scs::generate(config);
    for (int t = 0; t < 50; ++t) CHECK(dataset.i_series(t) == 0.0);
    bool non_unit = false;
    for (int t = 50; t < 100; ++t)
        if (dataset.i_series(t) != 1.0) non_unit = true;
    CHECK(non_unit);
}

TEST_CASE("true_bias_population evaluates the closed form") {
    scs::SimConfig config;
    CHECK(scs::true_bias_population(config) == 0.25);

    config.w_prob_post = config.w_prob_pre;
    CHECK(scs::true_bias_population(config) == 0.0);

    config.b = 0.0;
    config.w_prob_pre = 0.0;
    config.w_prob_post = 1.0;
    CHECK(scs::true_bias_population(config) == 0.0);

    config.b = 0.5;
    CHECK(scs::true_bias_population(config) == 0.5);
}

TEST_CASE("proxies_bias_sample recomputes from the stored latents") {
    scs::SimConfig config;
    config.seed = 66;
    config.t_pre = 30;
    config.t_post = 20;
    config.z_width = 2;
    const auto dataset = scs::generate(config);
    const double pre = dataset.z_series.topRows(30).mean();
    const double post = dataset.z_series.bottomRows(20).mean();
    const double expected = std::abs(config.b / config.d * (pre - post));
    CHECK(scs::proxies_bias_sample(dataset) == doctest::Approx(expected).epsilon(1e-12));

    auto degenerate = dataset;
    degenerate.config.d = 0.0;
    CHECK(code_of([&] { (void)scs::proxies_bias_sample(degenerate); }) == "d-zero");
}

TEST_CASE("proxies bias converges to the population value") {
    scs::SimConfig config;
    config.seed = 314;
    config.t_pre = 20000;
    config.t_post = 20000;
    const auto dataset = scs::generate(config);
    CHECK(std::abs(scs::proxies_bias_sample(dataset) - 0.25) < 0.05);
}

TEST_CASE("compute_bias_oracle bundles the three quantities") {
    scs::SimConfig config;
    config.seed = 21;
    const auto dataset = scs::generate(config);
    const auto oracle = scs::compute_bias_oracle(dataset);
    CHECK(oracle.true_bias >= 0.0);
    CHECK(oracle.proxies_bias >= 0.0);
    CHECK(oracle.realized_bound >= 0.0);

    const double w_pre = dataset.w_series.head(100).mean();
    CHECK(oracle.true_bias == doctest::Approx(std::abs(0.5 * (w_pre - 1.0))).epsilon(1e-12));
}

TEST_CASE("run_validity_experiment reports the validity conditions") {
    scs::SimConfig config;
    config.seed = 9;
    config.t_pre = 60;
    config.t_post = 60;
    const auto stats = scs::run_validity_experiment(config, 20);

    CHECK(stats.replications == 20);
    CHECK(stats.ratio_ac == 1.0);
    CHECK(stats.ratio_bd == 1.0);
    CHECK_FALSE(stats.condition_weighting);
    CHECK(stats.x_mean_shift_population == 0.5);
    CHECK(stats.z_mean_shift_population == 0.25);
    CHECK(stats.condition_mean_shift);
    CHECK(stats.coverage >= 0.0);
    CHECK(stats.coverage <= 1.0);
    CHECK(stats.mean_bound > 0.0);
    CHECK(stats.mean_true_sample_bias > 0.0);

    auto weak = config;
    weak.x_noise_mean_post = 0.1;
    const auto weak_stats = scs::run_validity_experiment(weak, 20);
    CHECK(weak_stats.x_mean_shift_population == doctest::Approx(0.1));
    CHECK_FALSE(weak_stats.condition_mean_shift);

    CHECK(code_of([&] { (void)scs::run_validity_experiment(config, 0); }) == "bad-replications");
}

TEST_CASE("null model keeps the realized true bias near zero") {
    scs::SimConfig config;
    config.seed = 77;
    config.treatment_effect = 0.0;
    config.w_prob_post = config.w_prob_pre;
    config.x_noise_mean_post = 0.0;
    config.t_pre = 400;
    config.t_post = 400;
    const auto stats = scs::run_validity_experiment(config, 50);
    CHECK(stats.mean_true_sample_bias < 0.05);
    CHECK(stats.x_mean_shift_population == 0.0);
    CHECK(stats.z_mean_shift_population == 0.0);
}

TEST_CASE("replication seeds are order-free and distinct") {
    CHECK(scs::replication_seed(1, 5) == scs::replication_seed(1, 5));
    CHECK(scs::replication_seed(1, 5) != scs::replication_seed(1, 6));
    CHECK(scs::replication_seed(1, 5) != scs::replication_seed(2, 5));
}

TEST_CASE("fixed-seed generation matches frozen values") {
    scs::SimConfig config;
    config.seed = 2718;
    config.t_pre = 6;
    config.t_post = 4;
    const auto dataset = scs::generate(config);
    const auto y = dataset.panel.column("Y");
    const auto x = dataset.panel.column("X1");

    CHECK(dataset.u_series(0) == 2.3115232643883026);
    CHECK(dataset.w_series(0) == 1.0);
    CHECK(dataset.z_series(0, 0) == 1.192732903078055);
    CHECK(y(0) == 1.7382612901583712);
    CHECK(x(0) == 1.4231187232469655);
    CHECK(y(6) == 5.482537270338073);
    CHECK(x(6) == 1.3114350986224481);
    CHECK(y(9) == 4.918302951675498);
    CHECK(x(9) == 1.5929965772508698);
    CHECK(dataset.z_series(9, 0) == -0.36877342533451285);
}

TEST_CASE("draw discipline matches a hand-rolled engine") {
    scs::SimConfig config;
    config.seed = 2718;
    config.t_pre = 6;
    config.t_post = 4;
    const auto dataset = scs::generate(config);

    std::mt19937_64 engine(2718);
    const auto uniform = [&engine] {
        return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    };
    const auto normal = [&uniform] {
        const double u1 = uniform();
        const double u2 = uniform();
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    };

    const double u = 1.0 + 1.0 * normal();
    const double w = uniform() < 0.5 ? 1.0 : 0.0;
    const double eps_y = normal();
    const double x1 = 1.0 * u + (0.0 + 1.0 * normal());
    const double z1 = 0.5 * w + normal();

    CHECK(dataset.u_series(0) == u);
    CHECK(dataset.w_series(0) == w);
    CHECK(dataset.panel.column("Y")(0) == 1.0 * u + 0.5 * w + 2.0 * 0.0 + eps_y);
    CHECK(dataset.panel.column("X1")(0) == x1);
    CHECK(dataset.z_series(0, 0) == z1);
}
