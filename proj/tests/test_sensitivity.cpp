#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "scs/estimator.hpp"
#include "scs/rng.hpp"
#include "scs/sensitivity.hpp"
#include "scs/sim.hpp"

#include "helpers.hpp"

using helpers::code_of;
using helpers::panel_from_columns;

namespace {

scs::WeightModel model_of(const std::vector<std::string>& names, const std::vector<double>& beta,
                          double zero_tolerance = 1e-8) {
    scs::WeightModel model;
    model.donor_names = names;
    model.beta.resize(static_cast<Eigen::Index>(beta.size()));
    for (std::size_t i = 0; i < beta.size(); ++i)
        model.beta(static_cast<Eigen::Index>(i)) = beta[i];
    model.method.zero_tolerance = zero_tolerance;
    return model;
}

} // namespace

TEST_CASE("proxy_mean_shifts measures absolute pre/post mean changes") {
    Eigen::VectorXd y(6), constant(6), stepped(6);
    y << 0, 0, 0, 0, 0, 0;
    constant << 5, 5, 5, 5, 5, 5;
    stepped << 1, 1, 1, 3, 3, 3;
    const auto panel = panel_from_columns({1, 2, 3, 4, 5, 6}, {"Y", "C", "S"},
                                          {y, constant, stepped}, "Y", {"C", "S"});
    const auto shifts = scs::proxy_mean_shifts(panel, {4}, {"C", "S"});
    CHECK(shifts.at("C") == 0.0);
    CHECK(shifts.at("S") == 2.0);
}

TEST_CASE("effective_n counts reported nonzero weights") {
    CHECK(scs::effective_n(model_of({"a", "b", "c", "d", "e"}, {0.46, 0.2, -0.1, 0.3, 0.0})) == 4);
    CHECK(scs::effective_n(model_of({"a", "b"}, {0.0, 0.0})) == 0);
    CHECK(scs::effective_n(model_of({"a", "b"}, {1e-12, 0.5})) == 1);
}

TEST_CASE("bias_bound reproduces the published formula arithmetic") {
    const std::vector<std::string> names{"a", "b", "c", "d"};
    std::map<std::string, double> shifts;

    shifts = {{"a", 1252.0}, {"b", 100.0}, {"c", 50.0}, {"d", 3.0}};
    auto report = scs::bias_bound(model_of(names, {0.46, 0.2, -0.1, 0.3}), shifts);
    CHECK(report.n_effective == 4);
    CHECK(report.max_abs_beta == 0.46);
    CHECK(report.max_proxy_shift == 1252.0);
    CHECK(report.bound == doctest::Approx(2303.68).epsilon(1e-12));

    shifts = {{"a", 9.1}, {"b", 2.0}, {"c", 4.0}, {"d", 1.0}};
    report = scs::bias_bound(model_of(names, {0.4, 0.1, -0.2, 0.35}), shifts);
    CHECK(report.bound == doctest::Approx(14.56).epsilon(1e-12));

    report = scs::bias_bound(model_of({"x"}, {1.47}), {{"x", 0.48}});
    CHECK(report.n_effective == 1);
    CHECK(report.bound == doctest::Approx(0.7056).epsilon(1e-12));
}

TEST_CASE("bound recomputes bit-for-bit from its own fields") {
    scs::Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        const int donors = 1 + static_cast<int>(rng.uniform() * 6.0);
        std::vector<std::string> names;
        std::vector<double> beta;
        std::map<std::string, double> shifts;
        for (int j = 0; j < donors; ++j) {
            names.push_back("d" + std::to_string(j));
            const bool zero = rng.uniform() < 0.25;
            beta.push_back(zero ? 0.0 : rng.normal());
            shifts[names.back()] = std::abs(rng.normal()) * 10.0;
        }
        const auto report = scs::bias_bound(model_of(names, beta), shifts);
        const double recomputed = static_cast<double>(report.n_effective) * report.max_abs_beta *
                                  report.max_proxy_shift;
        CHECK(report.bound == recomputed);
    }
}

TEST_CASE("zero-weight donors are excluded from both maxima") {
    const auto report = scs::bias_bound(model_of({"kept", "dropped"}, {0.2, 0.0}),
                                        {{"kept", 1.0}, {"dropped", 1e6}});
    CHECK(report.n_effective == 1);
    CHECK(report.max_abs_beta == 0.2);
    CHECK(report.max_proxy_shift == 1.0);
    CHECK(report.bound == doctest::Approx(0.2));
}

TEST_CASE("an all-zero model yields bound 0") {
    const auto report = scs::bias_bound(model_of({"a", "b"}, {0.0, 0.0}), {{"a", 5.0}, {"b", 7.0}});
    CHECK(report.n_effective == 0);
    CHECK(report.bound == 0.0);
}

TEST_CASE("bias_bound requires a shift for every donor") {
    CHECK(code_of([&] {
              (void)scs::bias_bound(model_of({"a", "b"}, {0.5, 0.5}), {{"a", 1.0}});
          }) == "shift-missing");
}

TEST_CASE("bound is monotone in each factor") {
    const std::vector<std::string> names{"a", "b", "c"};
    const std::map<std::string, double> shifts{{"a", 3.0}, {"b", 2.0}, {"c", 1.0}};
    const auto base = scs::bias_bound(model_of(names, {0.5, 0.4, 0.0}), shifts);

    const auto more_donors = scs::bias_bound(model_of(names, {0.5, 0.4, 0.1}), shifts);
    CHECK(more_donors.bound >= base.bound);

    const auto bigger_beta = scs::bias_bound(model_of(names, {0.9, 0.4, 0.0}), shifts);
    CHECK(bigger_beta.bound >= base.bound);

    const auto bigger_shift = scs::bias_bound(model_of(names, {0.5, 0.4, 0.0}),
                                              {{"a", 4.5}, {"b", 2.0}, {"c", 1.0}});
    CHECK(bigger_shift.bound >= base.bound);
}

TEST_CASE("bound is invariant under donor reordering") {
    const std::map<std::string, double> shifts{{"a", 3.0}, {"b", 2.0}, {"c", 8.0}};
    const auto forward = scs::bias_bound(model_of({"a", "b", "c"}, {0.5, -0.7, 0.1}), shifts);
    const auto reversed = scs::bias_bound(model_of({"c", "b", "a"}, {0.1, -0.7, 0.5}), shifts);
    CHECK(forward.bound == reversed.bound);
    CHECK(forward.n_effective == reversed.n_effective);
    CHECK(forward.max_abs_beta == reversed.max_abs_beta);
    CHECK(forward.max_proxy_shift == reversed.max_proxy_shift);
}

TEST_CASE("assess applies the strict robustness rule") {
    auto [verdict, text] = scs::assess(14.65, -17.45);
    CHECK(verdict == scs::Verdict::Robust);
    CHECK(text.find("17.45") != std::string::npos);
    CHECK(text.find("14.65") != std::string::npos);
    CHECK(text.find("exceeds") != std::string::npos);

    auto [verdict2, text2] = scs::assess(2321.84, -1726.80);
    CHECK(verdict2 == scs::Verdict::Sensitive);
    CHECK(text2.find("does not exceed") != std::string::npos);

    auto [verdict3, text3] = scs::assess(0.0, 0.0);
    CHECK(verdict3 == scs::Verdict::Sensitive);

    auto [verdict4, text4] = scs::assess(5.0, 5.0);
    CHECK(verdict4 == scs::Verdict::Sensitive);
    auto [verdict5, text5] = scs::assess(5.0, -5.0001);
    CHECK(verdict5 == scs::Verdict::Robust);
}

TEST_CASE("analyze_sensitivity chains shifts, bound, and verdict") {
    Eigen::VectorXd y(6), d1(6), d2(6);
    y << 10, 12, 11, 30, 31, 29;
    d1 << 5, 6, 5, 6, 5, 6;
    d2 << 2, 2, 2, 2, 2, 2;
    const auto panel =
        panel_from_columns({1, 2, 3, 4, 5, 6}, {"Y", "D1", "D2"}, {y, d1, d2}, "Y", {"D1", "D2"});
    const scs::InterventionSpec spec{4};
    const auto model = scs::fit_weights(panel, spec, scs::FitMethod{});
    const auto att = scs::compute_att(panel.treated_column(),
                                      scs::predict_counterfactual(model, panel), panel.time_index,
                                      spec);
    const auto report = scs::analyze_sensitivity(panel, spec, model, att.avg_att);

    const auto shifts = scs::proxy_mean_shifts(panel, spec, model.donor_names);
    const auto fragment = scs::bias_bound(model, shifts);
    CHECK(report.bound == fragment.bound);
    CHECK(report.avg_att == att.avg_att);
    CHECK(report.donor_names == model.donor_names);
    CHECK(!report.explanation.empty());
    const auto expected = scs::assess(report.bound, att.avg_att);
    CHECK(report.verdict == expected.first);
    CHECK(report.explanation == expected.second);
}

TEST_CASE("stationary donors leave the verdict Robust for a real effect") {
    scs::SimConfig config;
    config.x_noise_mean_post = 0.0;
    const int seeds = 500;
    int robust = 0;
    for (int s = 0; s < seeds; ++s) {
        config.seed = scs::replication_seed(2024, static_cast<std::uint64_t>(s));
        const auto dataset = scs::generate(config);
        const auto spec = dataset.intervention();
        const auto model = scs::fit_weights(dataset.panel, spec, scs::FitMethod{});
        const auto att = scs::compute_att(dataset.panel.treated_column(),
                                          scs::predict_counterfactual(model, dataset.panel),
                                          dataset.panel.time_index, spec);
        const auto report = scs::analyze_sensitivity(dataset.panel, spec, model, att.avg_att);
        if (report.bound < std::abs(report.avg_att)) ++robust;
    }
    CHECK(robust >= 475);
}
