"""Synthetic control fitting and bias-bound sensitivity analysis."""

from ._core import (
    AnalysisConfig,
    AttResult,
    BiasOracle,
    FitMethod,
    FitVariant,
    InterventionSpec,
    PanelData,
    PeriodSlice,
    Phase,
    SensitivityReport,
    SimConfig,
    SimDataset,
    ValidityStats,
    Verdict,
    WeightModel,
    analyze_sensitivity,
    assess,
    bias_bound,
    compute_att,
    compute_bias_oracle,
    effective_n,
    fit_weights,
    generate,
    load_analysis_config,
    load_panel_csv,
    period_means,
    predict_counterfactual,
    proxies_bias_sample,
    proxy_mean_shifts,
    run_fit_command,
    run_report_command,
    run_validity_experiment,
    split_pre_post,
    split_time_index,
    true_bias_population,
    validate,
    write_panel_csv,
)

__all__ = [
    "AnalysisConfig",
    "AttResult",
    "BiasOracle",
    "FitMethod",
    "FitVariant",
    "InterventionSpec",
    "PanelData",
    "PeriodSlice",
    "Phase",
    "SensitivityReport",
    "SimConfig",
    "SimDataset",
    "ValidityStats",
    "Verdict",
    "WeightModel",
    "analyze_sensitivity",
    "assess",
    "bias_bound",
    "compute_att",
    "compute_bias_oracle",
    "effective_n",
    "fit_weights",
    "generate",
    "load_analysis_config",
    "load_panel_csv",
    "period_means",
    "predict_counterfactual",
    "proxies_bias_sample",
    "proxy_mean_shifts",
    "run_fit_command",
    "run_report_command",
    "run_validity_experiment",
    "split_pre_post",
    "split_time_index",
    "true_bias_population",
    "validate",
    "write_panel_csv",
]
