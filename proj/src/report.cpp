#include "scs/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "scs/csv.hpp"
#include "scs/errors.hpp"
#include "scs/svg.hpp"

namespace scs {
namespace {

struct TableData {
    std::string data_path;
    std::string treated_unit;
    long long intervention_time = 0;
    std::string fit_variant;
    double zero_tolerance = 0.0;
    std::size_t pre_periods = 0, post_periods = 0;
    double pre_rmse = 0.0;
    int n_effective = 0;
    double max_abs_beta = 0.0, max_proxy_shift = 0.0, bound = 0.0, avg_att = 0.0;
    std::string verdict;
    std::string explanation;
    std::vector<std::string> donor_names;
    std::vector<double> beta, shifts;
};

std::string two(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return buffer;
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string variant_name(FitVariant variant) {
    switch (variant) {
        case FitVariant::OlsNoIntercept: return "ols";
        case FitVariant::Nnls: return "nnls";
        case FitVariant::SimplexConstrained: return "simplex";
    }
    return "ols";
}

std::string render_table(const TableData& table) {
    std::ostringstream out;
    out << "synthetic control sensitivity report\n";
    out << "data: " << table.data_path << "\n";
    out << "treated: " << table.treated_unit << "  intervention: " << table.intervention_time
        << "  fit: " << table.fit_variant << "  zero tolerance: " << table.zero_tolerance << "\n";
    out << "pre periods: " << table.pre_periods << "  post periods: " << table.post_periods
        << "  pre RMSE: " << two(table.pre_rmse) << "\n\n";

    out << pad_left("N", 5) << pad_left("max|beta|", 12) << pad_left("max proxy shift", 18)
        << pad_left("bound", 14) << pad_left("avg ATT", 14) << pad_left("verdict", 12) << "\n";
    out << pad_left(std::to_string(table.n_effective), 5) << pad_left(two(table.max_abs_beta), 12)
        << pad_left(two(table.max_proxy_shift), 18) << pad_left(two(table.bound), 14)
        << pad_left(two(table.avg_att), 14) << pad_left(table.verdict, 12) << "\n\n";

    out << "per-donor weights and mean shifts\n";
    out << "  " << pad_right("donor", 16) << pad_left("beta", 10)
        << pad_left("|pre mean - post mean|", 24) << "\n";
    for (std::size_t i = 0; i < table.donor_names.size(); ++i)
        out << "  " << pad_right(table.donor_names[i], 16) << pad_left(two(table.beta[i]), 10)
            << pad_left(two(table.shifts[i]), 24) << "\n";
    out << "\n" << table.explanation << "\n";
    return out.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream file(path);
    if (!file) throw_data("cannot-write", "cannot write " + path);
    file << content;
}

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw_data("file-not-found", "cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream stream(line);
        while (std::getline(stream, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

double to_double(const std::string& text) {
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw_data("bad-cell", "cannot parse number: '" + text + "'");
    }
}

} // namespace

ReportBundle run_fit_command(const AnalysisConfig& config) {
    ReportBundle bundle;
    bundle.output_dir = config.output_dir;
    bundle.panel = load_panel_csv(config.data_path, config.treated_unit, config.donor_units);
    bundle.spec = InterventionSpec{config.intervention_time};

    const auto diagnostics = validate(bundle.panel);
    if (!diagnostics.empty())
        throw_data("invalid-panel", "invalid panel: " + diagnostics.front());

    const auto [pre, post] = split_pre_post(bundle.panel, bundle.spec);
    bundle.model = fit_weights(bundle.panel, bundle.spec, config.fit_method);
    const Eigen::VectorXd counterfactual = predict_counterfactual(bundle.model, bundle.panel);
    const Eigen::VectorXd observed = bundle.panel.treated_column();
    bundle.att = compute_att(observed, counterfactual, bundle.panel.time_index, bundle.spec);
    bundle.sensitivity =
        analyze_sensitivity(bundle.panel, bundle.spec, bundle.model, bundle.att.avg_att);

    std::filesystem::create_directories(config.output_dir);
    const auto out_path = [&config](const std::string& name) {
        return config.output_dir + "/" + name;
    };

    {
        std::ofstream file(out_path("outcome_series.csv"));
        if (!file) throw_data("cannot-write", "cannot write outcome_series.csv");
        file << "time,observed,counterfactual\n";
        for (std::size_t r = 0; r < bundle.panel.rows(); ++r) {
            const auto row = static_cast<Eigen::Index>(r);
            file << bundle.panel.time_index[r] << "," << format_full(observed(row)) << ","
                 << format_full(counterfactual(row)) << "\n";
        }
    }
    {
        std::ofstream file(out_path("att_series.csv"));
        if (!file) throw_data("cannot-write", "cannot write att_series.csv");
        file << "time,att,running_att\n";
        for (std::size_t r = post.begin; r < post.end; ++r) {
            const auto i = static_cast<Eigen::Index>(r - post.begin);
            file << bundle.panel.time_index[r] << "," << format_full(bundle.att.att_per_period(i))
                 << "," << format_full(bundle.att.running_att(i)) << "\n";
        }
    }
    {
        const auto pre_means = period_means(bundle.panel, pre, bundle.model.donor_names);
        const auto post_means = period_means(bundle.panel, post, bundle.model.donor_names);
        std::ofstream file(out_path("donor_shifts.csv"));
        if (!file) throw_data("cannot-write", "cannot write donor_shifts.csv");
        file << "donor,beta,pre_mean,post_mean,abs_shift\n";
        for (std::size_t i = 0; i < bundle.model.donor_names.size(); ++i) {
            const auto& name = bundle.model.donor_names[i];
            file << name << "," << format_full(bundle.model.beta(static_cast<Eigen::Index>(i)))
                 << "," << format_full(pre_means.at(name)) << "," << format_full(post_means.at(name))
                 << "," << format_full(bundle.sensitivity.shifts[i]) << "\n";
        }
    }
    {
        std::ofstream file(out_path("table.csv"));
        if (!file) throw_data("cannot-write", "cannot write table.csv");
        file << "n_effective,max_abs_beta,max_proxy_shift,bound,avg_att,verdict\n";
        file << bundle.sensitivity.n_effective << "," << format_full(bundle.sensitivity.max_abs_beta)
             << "," << format_full(bundle.sensitivity.max_proxy_shift) << ","
             << format_full(bundle.sensitivity.bound) << "," << format_full(bundle.att.avg_att)
             << ","
             << (bundle.sensitivity.verdict == Verdict::Robust ? "Robust" : "Sensitive") << "\n";
    }
    {
        std::ostringstream meta;
        meta << "data_path = " << config.data_path << "\n";
        meta << "treated_unit = " << config.treated_unit << "\n";
        meta << "intervention_time = " << config.intervention_time << "\n";
        meta << "fit_variant = " << variant_name(config.fit_method.variant) << "\n";
        meta << "zero_tolerance = " << format_full(config.fit_method.zero_tolerance) << "\n";
        meta << "pre_periods = " << pre.size() << "\n";
        meta << "post_periods = " << post.size() << "\n";
        meta << "pre_rmse = " << format_full(bundle.model.pre_rmse) << "\n";
        meta << "explanation = " << bundle.sensitivity.explanation << "\n";
        write_text(out_path("meta.txt"), meta.str());
    }

    TableData table;
    table.data_path = config.data_path;
    table.treated_unit = config.treated_unit;
    table.intervention_time = config.intervention_time;
    table.fit_variant = variant_name(config.fit_method.variant);
    table.zero_tolerance = config.fit_method.zero_tolerance;
    table.pre_periods = pre.size();
    table.post_periods = post.size();
    table.pre_rmse = bundle.model.pre_rmse;
    table.n_effective = bundle.sensitivity.n_effective;
    table.max_abs_beta = bundle.sensitivity.max_abs_beta;
    table.max_proxy_shift = bundle.sensitivity.max_proxy_shift;
    table.bound = bundle.sensitivity.bound;
    table.avg_att = bundle.att.avg_att;
    table.verdict = bundle.sensitivity.verdict == Verdict::Robust ? "Robust" : "Sensitive";
    table.explanation = bundle.sensitivity.explanation;
    table.donor_names = bundle.model.donor_names;
    table.beta = bundle.sensitivity.beta;
    table.shifts = bundle.sensitivity.shifts;
    write_text(out_path("report.txt"), render_table(table));

    write_text(out_path("figure.svg"),
               render_report_svg(bundle.panel.time_index, observed, counterfactual,
                                 bundle.att.att_per_period, bundle.att.running_att, post.begin,
                                 bundle.sensitivity.bound,
                                 config.treated_unit + " and its synthetic control"));
    return bundle;
}

ValidityStats run_simulate_command(const SimConfig& config, int replications,
                                   const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const SimDataset dataset = generate(config);
    write_sim_csvs(out_dir + "/panel.csv", dataset);

    const ValidityStats stats = run_validity_experiment(config, replications);
    std::ofstream file(out_dir + "/validity.csv");
    if (!file) throw_data("cannot-write", "cannot write validity.csv");
    file << "replications,coverage,mean_bound,mean_true_sample_bias,mean_sample_shift_bound,"
            "mean_prediction_bias,ratio_ac,ratio_bd,condition_weighting,"
            "x_mean_shift_population,z_mean_shift_population,condition_mean_shift\n";
    file << stats.replications << "," << format_full(stats.coverage) << ","
         << format_full(stats.mean_bound) << "," << format_full(stats.mean_true_sample_bias) << ","
         << format_full(stats.mean_sample_shift_bound) << ","
         << format_full(stats.mean_prediction_bias) << "," << format_full(stats.ratio_ac) << ","
         << format_full(stats.ratio_bd) << "," << (stats.condition_weighting ? 1 : 0) << ","
         << format_full(stats.x_mean_shift_population) << ","
         << format_full(stats.z_mean_shift_population) << ","
         << (stats.condition_mean_shift ? 1 : 0) << "\n";
    return stats;
}

std::string run_report_command(const std::string& bundle_dir) {
    const auto meta = parse_kv_file(bundle_dir + "/meta.txt");
    const auto require = [&meta, &bundle_dir](const std::string& key) -> const std::string& {
        const auto it = meta.find(key);
        if (it == meta.end())
            throw_data("missing-key", bundle_dir + "/meta.txt is missing '" + key + "'");
        return it->second;
    };

    TableData table;
    table.data_path = require("data_path");
    table.treated_unit = require("treated_unit");
    table.intervention_time = std::stoll(require("intervention_time"));
    table.fit_variant = require("fit_variant");
    table.zero_tolerance = to_double(require("zero_tolerance"));
    table.pre_periods = static_cast<std::size_t>(std::stoull(require("pre_periods")));
    table.post_periods = static_cast<std::size_t>(std::stoull(require("post_periods")));
    table.pre_rmse = to_double(require("pre_rmse"));
    table.explanation = require("explanation");

    const auto summary = read_csv_rows(bundle_dir + "/table.csv");
    if (summary.size() != 2 || summary[1].size() != 6)
        throw_data("bad-table", "unexpected table.csv layout in " + bundle_dir);
    table.n_effective = static_cast<int>(to_double(summary[1][0]));
    table.max_abs_beta = to_double(summary[1][1]);
    table.max_proxy_shift = to_double(summary[1][2]);
    table.bound = to_double(summary[1][3]);
    table.avg_att = to_double(summary[1][4]);
    table.verdict = summary[1][5];

    const auto donors = read_csv_rows(bundle_dir + "/donor_shifts.csv");
    for (std::size_t r = 1; r < donors.size(); ++r) {
        if (donors[r].size() != 5)
            throw_data("bad-table", "unexpected donor_shifts.csv layout in " + bundle_dir);
        table.donor_names.push_back(donors[r][0]);
        table.beta.push_back(to_double(donors[r][1]));
        table.shifts.push_back(to_double(donors[r][4]));
    }
    return render_table(table);
}

std::string format_validity_summary(const ValidityStats& stats) {
    std::ostringstream out;
    out << "replications: " << stats.replications << "\n";
    out << "coverage (bound >= realized true bias): " << two(stats.coverage) << "\n";
    out << "mean bound: " << two(stats.mean_bound)
        << "  mean true sample bias: " << two(stats.mean_true_sample_bias) << "\n";
    out << "mean sample-shift bound: " << two(stats.mean_sample_shift_bound)
        << "  mean prediction bias: " << two(stats.mean_prediction_bias) << "\n";
    out << "weighting ratios a/c vs b/d: " << two(stats.ratio_ac) << " vs " << two(stats.ratio_bd)
        << (stats.condition_weighting ? " (condition holds)" : " (condition fails)") << "\n";
    out << "population mean shifts X vs Z: " << two(stats.x_mean_shift_population) << " vs "
        << two(stats.z_mean_shift_population)
        << (stats.condition_mean_shift ? " (condition holds)" : " (condition fails)") << "\n";
    return out.str();
}

} // namespace scs
