#include "scs/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "scs/errors.hpp"

namespace scs {
namespace {

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& raw) {
    const std::string text = strip(raw);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw_config("bad-value", "cannot parse value for '" + key + "': '" + text + "'");
    return value;
}

std::vector<std::string> parse_list(const std::string& raw) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream stream(raw);
    while (std::getline(stream, item, ',')) {
        const std::string cleaned = strip(item);
        if (!cleaned.empty()) items.push_back(cleaned);
    }
    return items;
}

std::string parent_dir(const std::string& path) {
    const auto slash = path.find_last_of('/');
    if (slash == std::string::npos) return ".";
    return path.substr(0, slash);
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    return base_dir + "/" + path;
}

} // namespace

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw_config("config-not-found", "cannot open config " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string text = strip(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "line " << line_number << " of " << path << " is not 'key = value'";
            throw_config("bad-config-line", os.str());
        }
        const std::string key = strip(text.substr(0, eq));
        const std::string value = strip(text.substr(eq + 1));
        if (key.empty()) throw_config("bad-config-line", "empty key in " + path);
        if (!entries.emplace(key, value).second)
            throw_config("duplicate-key", "duplicate key '" + key + "' in " + path);
    }
    return entries;
}

AnalysisConfig load_analysis_config(const std::string& path) {
    const auto entries = parse_kv_file(path);
    static const std::set<std::string> known = {
        "data_path", "treated_unit", "donor_units", "intervention_time",
        "fit_variant", "zero_tolerance", "output_dir"};
    for (const auto& [key, value] : entries)
        if (!known.count(key)) throw_config("unknown-key", "unknown config key '" + key + "'");

    const auto require = [&entries, &path](const std::string& key) -> const std::string& {
        const auto it = entries.find(key);
        if (it == entries.end())
            throw_config("missing-key", "config " + path + " is missing '" + key + "'");
        return it->second;
    };

    AnalysisConfig config;
    config.data_path = resolve(parent_dir(path), require("data_path"));
    config.treated_unit = require("treated_unit");
    config.donor_units = parse_list(require("donor_units"));
    if (config.donor_units.empty()) throw_config("empty-donors", "donor_units must be non-empty");
    config.intervention_time = parse_number<long long>("intervention_time", require("intervention_time"));

    if (const auto it = entries.find("fit_variant"); it != entries.end()) {
        const std::string v = it->second;
        if (v == "ols")
            config.fit_method.variant = FitVariant::OlsNoIntercept;
        else if (v == "nnls")
            config.fit_method.variant = FitVariant::Nnls;
        else if (v == "simplex")
            config.fit_method.variant = FitVariant::SimplexConstrained;
        else
            throw_config("bad-value", "fit_variant must be ols, nnls, or simplex, got '" + v + "'");
    }
    if (const auto it = entries.find("zero_tolerance"); it != entries.end()) {
        config.fit_method.zero_tolerance = parse_number<double>("zero_tolerance", it->second);
        if (config.fit_method.zero_tolerance < 0.0)
            throw_config("bad-value", "zero_tolerance must be non-negative");
    }
    if (const auto it = entries.find("output_dir"); it != entries.end())
        config.output_dir = it->second;
    return config;
}

SimConfig load_sim_config(const std::string& path, int* replications) {
    const auto entries = parse_kv_file(path);
    static const std::set<std::string> known = {
        "a", "b", "c", "d", "t_pre", "t_post", "w_prob_pre", "w_prob_post",
        "x_noise_mean_pre", "x_noise_mean_post", "treatment_effect", "seed",
        "x_width", "z_width", "rho", "stochastic_intervention", "replications"};
    for (const auto& [key, value] : entries)
        if (!known.count(key)) throw_config("unknown-key", "unknown config key '" + key + "'");

    SimConfig config;
    const auto real = [&entries](const std::string& key, double& target) {
        if (const auto it = entries.find(key); it != entries.end())
            target = parse_number<double>(key, it->second);
    };
    const auto integer = [&entries](const std::string& key, int& target) {
        if (const auto it = entries.find(key); it != entries.end())
            target = parse_number<int>(key, it->second);
    };
    real("a", config.a);
    real("b", config.b);
    real("c", config.c);
    real("d", config.d);
    integer("t_pre", config.t_pre);
    integer("t_post", config.t_post);
    real("w_prob_pre", config.w_prob_pre);
    real("w_prob_post", config.w_prob_post);
    real("x_noise_mean_pre", config.x_noise_mean_pre);
    real("x_noise_mean_post", config.x_noise_mean_post);
    real("treatment_effect", config.treatment_effect);
    real("rho", config.rho);
    integer("x_width", config.x_width);
    integer("z_width", config.z_width);
    if (const auto it = entries.find("seed"); it != entries.end())
        config.seed = parse_number<std::uint64_t>("seed", it->second);
    if (const auto it = entries.find("stochastic_intervention"); it != entries.end())
        config.stochastic_intervention = parse_number<int>("stochastic_intervention", it->second) != 0;
    if (replications)
        if (const auto it = entries.find("replications"); it != entries.end())
            *replications = parse_number<int>("replications", it->second);
    return config;
}

} // namespace scs
