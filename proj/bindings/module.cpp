#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scs/config.hpp"
#include "scs/csv.hpp"
#include "scs/errors.hpp"
#include "scs/estimator.hpp"
#include "scs/panel.hpp"
#include "scs/report.hpp"
#include "scs/sensitivity.hpp"
#include "scs/sim.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "synthetic control fitting and bias-bound sensitivity analysis";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const scs::Error& e) {
            const std::string text = e.code() + ": " + e.what();
            if (e.kind() == scs::ErrorKind::Numerical)
                PyErr_SetString(PyExc_RuntimeError, text.c_str());
            else
                PyErr_SetString(PyExc_ValueError, text.c_str());
        }
    });

    py::enum_<scs::Phase>(m, "Phase").value("Pre", scs::Phase::Pre).value("Post", scs::Phase::Post);

    py::enum_<scs::FitVariant>(m, "FitVariant")
        .value("OlsNoIntercept", scs::FitVariant::OlsNoIntercept)
        .value("Nnls", scs::FitVariant::Nnls)
        .value("SimplexConstrained", scs::FitVariant::SimplexConstrained);

    py::enum_<scs::Verdict>(m, "Verdict")
        .value("Robust", scs::Verdict::Robust)
        .value("Sensitive", scs::Verdict::Sensitive);

    py::class_<scs::PanelData>(m, "PanelData")
        .def(py::init<>())
        .def_readwrite("time_index", &scs::PanelData::time_index)
        .def_readwrite("unit_names", &scs::PanelData::unit_names)
        .def_readwrite("values", &scs::PanelData::values)
        .def_readwrite("treated_unit", &scs::PanelData::treated_unit)
        .def_readwrite("donor_units", &scs::PanelData::donor_units)
        .def("column", &scs::PanelData::column, py::arg("unit"))
        .def("donor_matrix", &scs::PanelData::donor_matrix)
        .def("treated_column", &scs::PanelData::treated_column)
        .def("rows", &scs::PanelData::rows);

    py::class_<scs::InterventionSpec>(m, "InterventionSpec")
        .def(py::init<>())
        .def(py::init([](long long t0) { return scs::InterventionSpec{t0}; }), py::arg("t0"))
        .def_readwrite("t0", &scs::InterventionSpec::t0);

    py::class_<scs::PeriodSlice>(m, "PeriodSlice")
        .def(py::init<>())
        .def_readwrite("which", &scs::PeriodSlice::which)
        .def_readwrite("begin", &scs::PeriodSlice::begin)
        .def_readwrite("end", &scs::PeriodSlice::end)
        .def("size", &scs::PeriodSlice::size);

    py::class_<scs::FitMethod>(m, "FitMethod")
        .def(py::init<>())
        .def(py::init([](scs::FitVariant variant, double zero_tolerance) {
                 return scs::FitMethod{variant, zero_tolerance};
             }),
             py::arg("variant") = scs::FitVariant::OlsNoIntercept,
             py::arg("zero_tolerance") = 1e-8)
        .def_readwrite("variant", &scs::FitMethod::variant)
        .def_readwrite("zero_tolerance", &scs::FitMethod::zero_tolerance);

    py::class_<scs::WeightModel>(m, "WeightModel")
        .def(py::init<>())
        .def_readwrite("donor_names", &scs::WeightModel::donor_names)
        .def_readwrite("beta", &scs::WeightModel::beta)
        .def_readwrite("method", &scs::WeightModel::method)
        .def_readwrite("pre_rmse", &scs::WeightModel::pre_rmse);

    py::class_<scs::AttResult>(m, "AttResult")
        .def(py::init<>())
        .def_readwrite("counterfactual", &scs::AttResult::counterfactual)
        .def_readwrite("att_per_period", &scs::AttResult::att_per_period)
        .def_readwrite("running_att", &scs::AttResult::running_att)
        .def_readwrite("avg_att", &scs::AttResult::avg_att);

    py::class_<scs::SensitivityReport>(m, "SensitivityReport")
        .def(py::init<>())
        .def_readwrite("n_effective", &scs::SensitivityReport::n_effective)
        .def_readwrite("max_abs_beta", &scs::SensitivityReport::max_abs_beta)
        .def_readwrite("max_proxy_shift", &scs::SensitivityReport::max_proxy_shift)
        .def_readwrite("bound", &scs::SensitivityReport::bound)
        .def_readwrite("avg_att", &scs::SensitivityReport::avg_att)
        .def_readwrite("verdict", &scs::SensitivityReport::verdict)
        .def_readwrite("explanation", &scs::SensitivityReport::explanation)
        .def_readwrite("donor_names", &scs::SensitivityReport::donor_names)
        .def_readwrite("beta", &scs::SensitivityReport::beta)
        .def_readwrite("shifts", &scs::SensitivityReport::shifts);

    py::class_<scs::SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("a", &scs::SimConfig::a)
        .def_readwrite("b", &scs::SimConfig::b)
        .def_readwrite("c", &scs::SimConfig::c)
        .def_readwrite("d", &scs::SimConfig::d)
        .def_readwrite("t_pre", &scs::SimConfig::t_pre)
        .def_readwrite("t_post", &scs::SimConfig::t_post)
        .def_readwrite("w_prob_pre", &scs::SimConfig::w_prob_pre)
        .def_readwrite("w_prob_post", &scs::SimConfig::w_prob_post)
        .def_readwrite("x_noise_mean_pre", &scs::SimConfig::x_noise_mean_pre)
        .def_readwrite("x_noise_mean_post", &scs::SimConfig::x_noise_mean_post)
        .def_readwrite("treatment_effect", &scs::SimConfig::treatment_effect)
        .def_readwrite("seed", &scs::SimConfig::seed)
        .def_readwrite("x_width", &scs::SimConfig::x_width)
        .def_readwrite("z_width", &scs::SimConfig::z_width)
        .def_readwrite("rho", &scs::SimConfig::rho)
        .def_readwrite("stochastic_intervention", &scs::SimConfig::stochastic_intervention);

    py::class_<scs::SimDataset>(m, "SimDataset")
        .def(py::init<>())
        .def_readwrite("panel", &scs::SimDataset::panel)
        .def_readwrite("z_series", &scs::SimDataset::z_series)
        .def_readwrite("u_series", &scs::SimDataset::u_series)
        .def_readwrite("w_series", &scs::SimDataset::w_series)
        .def_readwrite("i_series", &scs::SimDataset::i_series)
        .def_readwrite("config", &scs::SimDataset::config)
        .def("intervention", &scs::SimDataset::intervention);

    py::class_<scs::BiasOracle>(m, "BiasOracle")
        .def(py::init<>())
        .def_readwrite("true_bias", &scs::BiasOracle::true_bias)
        .def_readwrite("proxies_bias", &scs::BiasOracle::proxies_bias)
        .def_readwrite("realized_bound", &scs::BiasOracle::realized_bound);

    py::class_<scs::ValidityStats>(m, "ValidityStats")
        .def(py::init<>())
        .def_readwrite("coverage", &scs::ValidityStats::coverage)
        .def_readwrite("mean_bound", &scs::ValidityStats::mean_bound)
        .def_readwrite("mean_true_sample_bias", &scs::ValidityStats::mean_true_sample_bias)
        .def_readwrite("mean_sample_shift_bound", &scs::ValidityStats::mean_sample_shift_bound)
        .def_readwrite("mean_prediction_bias", &scs::ValidityStats::mean_prediction_bias)
        .def_readwrite("ratio_ac", &scs::ValidityStats::ratio_ac)
        .def_readwrite("ratio_bd", &scs::ValidityStats::ratio_bd)
        .def_readwrite("condition_weighting", &scs::ValidityStats::condition_weighting)
        .def_readwrite("x_mean_shift_population", &scs::ValidityStats::x_mean_shift_population)
        .def_readwrite("z_mean_shift_population", &scs::ValidityStats::z_mean_shift_population)
        .def_readwrite("condition_mean_shift", &scs::ValidityStats::condition_mean_shift)
        .def_readwrite("replications", &scs::ValidityStats::replications);

    py::class_<scs::AnalysisConfig>(m, "AnalysisConfig")
        .def(py::init<>())
        .def_readwrite("data_path", &scs::AnalysisConfig::data_path)
        .def_readwrite("treated_unit", &scs::AnalysisConfig::treated_unit)
        .def_readwrite("donor_units", &scs::AnalysisConfig::donor_units)
        .def_readwrite("intervention_time", &scs::AnalysisConfig::intervention_time)
        .def_readwrite("fit_method", &scs::AnalysisConfig::fit_method)
        .def_readwrite("output_dir", &scs::AnalysisConfig::output_dir);

    m.def("validate", &scs::validate, py::arg("panel"));
    m.def("split_pre_post", &scs::split_pre_post, py::arg("panel"), py::arg("spec"));
    m.def("split_time_index", &scs::split_time_index, py::arg("time_index"), py::arg("spec"));
    m.def("period_means", &scs::period_means, py::arg("panel"), py::arg("slice"), py::arg("units"));

    m.def("fit_weights", &scs::fit_weights, py::arg("panel"), py::arg("spec"),
          py::arg("method") = scs::FitMethod{});
    m.def("predict_counterfactual", &scs::predict_counterfactual, py::arg("model"),
          py::arg("panel"));
    m.def("compute_att", &scs::compute_att, py::arg("observed"), py::arg("counterfactual"),
          py::arg("time_index"), py::arg("spec"));

    m.def("proxy_mean_shifts", &scs::proxy_mean_shifts, py::arg("panel"), py::arg("spec"),
          py::arg("donors"));
    m.def("effective_n", &scs::effective_n, py::arg("model"));
    m.def("bias_bound", &scs::bias_bound, py::arg("model"), py::arg("shifts"));
    m.def("assess", &scs::assess, py::arg("bound"), py::arg("avg_att"));
    m.def("analyze_sensitivity", &scs::analyze_sensitivity, py::arg("panel"), py::arg("spec"),
          py::arg("model"), py::arg("avg_att"));

    m.def("generate", &scs::generate, py::arg("config"));
    m.def("true_bias_population", &scs::true_bias_population, py::arg("config"));
    m.def("proxies_bias_sample", &scs::proxies_bias_sample, py::arg("dataset"));
    m.def("compute_bias_oracle", &scs::compute_bias_oracle, py::arg("dataset"));
    m.def("run_validity_experiment", &scs::run_validity_experiment, py::arg("config"),
          py::arg("replications"));

    m.def("load_panel_csv", &scs::load_panel_csv, py::arg("path"), py::arg("treated_unit"),
          py::arg("donor_units"));
    m.def("write_panel_csv", &scs::write_panel_csv, py::arg("path"), py::arg("panel"));
    m.def("load_analysis_config", &scs::load_analysis_config, py::arg("path"));
    m.def("run_fit_command", &scs::run_fit_command, py::arg("config"));
    m.def("run_report_command", &scs::run_report_command, py::arg("bundle_dir"));
}
