#include "msstgarch/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace msstgarch {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) {
        // Trim surrounding whitespace and CR.
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos
                             ? std::string{}
                             : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end;
}

json to_json_number(const std::optional<double>& value) {
    if (!value || !std::isfinite(*value)) return nullptr;
    return *value;
}

json model_to_json_object(const ModelSpec& spec) {
    json regimes = json::array();
    for (const auto& regime : spec.regimes) {
        regimes.push_back({{"a0", regime.a0},
                           {"a1", regime.a1},
                           {"a2", regime.a2},
                           {"b", regime.b},
                           {"gamma", regime.gamma}});
    }
    json rows = json::array();
    const std::size_t k = spec.regime_count();
    for (std::size_t i = 0; i < k; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < k; ++j) row.push_back(spec.transition(i, j));
        rows.push_back(row);
    }
    return {{"variant", variant_name(spec.variant())},
            {"regimes", regimes},
            {"transition", rows}};
}

ModelSpec model_from_json_object(const json& node) {
    ModelSpec spec;
    for (const auto& regime : node.at("regimes")) {
        RegimeParams params;
        params.a0 = regime.at("a0").get<double>();
        params.a1 = regime.at("a1").get<double>();
        params.a2 = regime.at("a2").get<double>();
        params.b = regime.at("b").get<double>();
        params.gamma = regime.at("gamma").get<double>();
        spec.regimes.push_back(params);
    }
    std::vector<std::vector<double>> rows;
    for (const auto& row : node.at("transition")) {
        rows.push_back(row.get<std::vector<double>>());
    }
    spec.transition = TransitionMatrix(rows);
    spec.validate();
    return spec;
}

}  // namespace

ReturnSeries ingest(const std::string& path, IngestMode mode,
                    const std::optional<std::string>& value_column,
                    const std::optional<std::string>& date_column) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open data file: " + path);

    std::string line;
    if (!std::getline(file, line)) {
        throw std::runtime_error("data file is empty: " + path);
    }
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty()) throw std::runtime_error("data file has an empty header: " + path);

    const auto column_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw std::runtime_error("column '" + name + "' not found in " + path);
    };

    std::size_t value_idx;
    std::optional<std::size_t> date_idx;
    if (value_column) {
        value_idx = column_index(*value_column);
    } else if (header.size() == 1) {
        value_idx = 0;
    } else if (header.size() == 2) {
        date_idx = 0;
        value_idx = 1;
    } else {
        throw std::runtime_error(
            "data file has more than two columns; specify the value column explicitly");
    }
    if (date_column) date_idx = column_index(*date_column);

    std::vector<double> raw;
    std::vector<std::string> stamps;
    std::vector<std::size_t> bad_lines;
    std::size_t line_number = 1;
    while (std::getline(file, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        double value = 0.0;
        if (value_idx >= fields.size() || !parse_double(fields[value_idx], value) ||
            !std::isfinite(value)) {
            bad_lines.push_back(line_number);
            continue;
        }
        raw.push_back(value);
        if (date_idx && *date_idx < fields.size()) stamps.push_back(fields[*date_idx]);
    }
    if (!bad_lines.empty()) {
        std::string message = "unparseable rows in " + path + " at line(s):";
        for (std::size_t i = 0; i < bad_lines.size() && i < 10; ++i) {
            message += " " + std::to_string(bad_lines[i]);
        }
        if (bad_lines.size() > 10) message += " ...";
        throw std::runtime_error(message);
    }
    if (raw.empty()) throw std::runtime_error("data file has no rows: " + path);

    ReturnSeries series;
    if (mode == IngestMode::Returns) {
        series.values = std::move(raw);
        series.timestamps = std::move(stamps);
    } else {
        if (raw.size() < 2) {
            throw std::runtime_error("prices mode needs at least two prices");
        }
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (!(raw[i] > 0.0)) {
                throw std::runtime_error("non-positive price at data row " +
                                         std::to_string(i + 2) + " of " + path);
            }
        }
        series.values.reserve(raw.size() - 1);
        for (std::size_t i = 1; i < raw.size(); ++i) {
            series.values.push_back(100.0 * std::log(raw[i] / raw[i - 1]));
        }
        if (stamps.size() == raw.size()) {
            series.timestamps.assign(stamps.begin() + 1, stamps.end());
        }
    }
    series.validate();
    return series;
}

std::string format_full(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_table(const std::optional<double>& value) {
    if (!value || !std::isfinite(*value)) return "NA";
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.3f", *value);
    return buffer;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write file: " + path);
    file << content;
    if (!file) throw std::runtime_error("failed while writing file: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open file: " + path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_simulation_csv(const std::string& path, const SimulationResult& result) {
    std::string out = "t,y,state\n";
    for (std::size_t t = 0; t < result.returns.size(); ++t) {
        out += std::to_string(t + 1);
        out += ',';
        out += format_full(result.returns.values[t]);
        out += ',';
        out += std::to_string(result.states[t] + 1);
        out += '\n';
    }
    write_text_file(path, out);
}

void write_draws_csv(const std::string& path, const PosteriorDraws& draws) {
    std::string out;
    for (std::size_t c = 0; c < draws.parameter_names.size(); ++c) {
        if (c > 0) out += ',';
        out += draws.parameter_names[c];
    }
    out += ",conditional_log_lik\n";
    for (std::size_t r = 0; r < draws.rows(); ++r) {
        for (std::size_t c = 0; c < draws.draws[r].size(); ++c) {
            if (c > 0) out += ',';
            out += format_full(draws.draws[r][c]);
        }
        out += ',';
        out += format_full(draws.conditional_log_likelihood[r]);
        out += '\n';
    }
    write_text_file(path, out);
}

void write_forecast_csv(const std::string& path, const ReturnSeries& data,
                        std::size_t split, const std::vector<DayForecast>& forecasts,
                        const std::vector<double>& levels) {
    std::string out = "t,y,y_squared,variance_forecast";
    for (double level : levels) {
        char name[32];
        std::snprintf(name, sizeof(name), ",var_%g", level);
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
        const double y = data.values[split + i];
        out += std::to_string(split + i + 1);
        out += ',';
        out += format_full(y);
        out += ',';
        out += format_full(y * y);
        out += ',';
        out += format_full(forecasts[i].variance);
        for (double level : levels) {
            out += ',';
            out += format_full(predictive_quantile(forecasts[i].distribution, 1.0 - level));
        }
        out += '\n';
    }
    write_text_file(path, out);
}

ForecastTable read_forecast_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open forecast file: " + path);
    std::string line;
    if (!std::getline(file, line)) {
        throw std::runtime_error("forecast file is empty: " + path);
    }
    const std::vector<std::string> header = split_csv_line(line);

    ForecastTable table;
    std::vector<std::size_t> level_columns;
    std::size_t y_idx = header.size(), var_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "y") y_idx = i;
        else if (header[i] == "variance_forecast") var_idx = i;
        else if (header[i].rfind("var_", 0) == 0) {
            double level = 0.0;
            if (!parse_double(header[i].substr(4), level)) {
                throw std::runtime_error("bad VaR column name in " + path + ": " + header[i]);
            }
            table.levels.push_back(level);
            level_columns.push_back(i);
        }
    }
    if (y_idx == header.size() || var_idx == header.size()) {
        throw std::runtime_error("forecast file must carry 'y' and 'variance_forecast': " + path);
    }
    table.thresholds.resize(table.levels.size());

    std::size_t line_number = 1;
    while (std::getline(file, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        double y = 0.0, variance = 0.0;
        if (y_idx >= fields.size() || var_idx >= fields.size() ||
            !parse_double(fields[y_idx], y) || !parse_double(fields[var_idx], variance)) {
            throw std::runtime_error("unparseable forecast row at line " +
                                     std::to_string(line_number) + " of " + path);
        }
        table.realized.push_back(y);
        table.variance.push_back(variance);
        for (std::size_t c = 0; c < level_columns.size(); ++c) {
            double threshold = 0.0;
            if (level_columns[c] >= fields.size() ||
                !parse_double(fields[level_columns[c]], threshold)) {
                throw std::runtime_error("unparseable VaR value at line " +
                                         std::to_string(line_number) + " of " + path);
            }
            table.thresholds[c].push_back(threshold);
        }
    }
    if (table.realized.empty()) {
        throw std::runtime_error("forecast file has no rows: " + path);
    }
    return table;
}

std::string stability_report_json(const StabilityReport& report) {
    json node = {{"schema_version", 1},
                 {"spectral_radius", report.spectral_radius},
                 {"is_stable", report.is_stable},
                 {"delta", report.delta},
                 {"tail_threshold", report.tail_threshold},
                 {"bound", to_json_number(report.bound)}};
    return node.dump(2) + "\n";
}

std::string fit_summary_json(const ModelSpec& spec, const PosteriorSummary& summary,
                             const McmcConfig& config, std::optional<double> dic_value) {
    json parameters = json::array();
    for (const auto& p : summary.parameters) {
        parameters.push_back({{"name", p.name},
                              {"mean", p.mean},
                              {"sd", p.sd},
                              {"q05", p.q05},
                              {"q50", p.q50},
                              {"q95", p.q95}});
    }
    json node = {{"schema_version", 1},
                 {"model", model_to_json_object(spec)},
                 {"parameters", parameters},
                 {"relabel_rate", summary.relabel_rate},
                 {"dic", to_json_number(dic_value)},
                 {"mcmc", {{"iterations", config.iterations},
                           {"burn_in", config.burn_in},
                           {"grid_size", config.grid_size},
                           {"thinning", config.thinning},
                           {"seed", config.seed}}}};
    return node.dump(2) + "\n";
}

std::string backtest_json(const BacktestReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"alpha", row.alpha},
                        {"expected_violations", row.expected_violations},
                        {"observed_violations", row.observed_violations},
                        {"uc", to_json_number(row.uc)},
                        {"ind", to_json_number(row.ind)},
                        {"cc", to_json_number(row.cc)}});
    }
    json node = {{"schema_version", 1}, {"rows", rows}};
    return node.dump(2) + "\n";
}

std::string backtest_text(const BacktestReport& report) {
    std::string out = "alpha   E(V)      N        UC       IND        CC\n";
    char buffer[160];
    for (const auto& row : report.rows) {
        std::snprintf(buffer, sizeof(buffer), "%5.2f  %5.1f  %5zu  %8s  %8s  %8s\n",
                      row.alpha, row.expected_violations, row.observed_violations,
                      format_table(row.uc).c_str(), format_table(row.ind).c_str(),
                      format_table(row.cc).c_str());
        out += buffer;
    }
    return out;
}

namespace {

json dm_to_json(const DmResult& dm) {
    std::string verdict;
    switch (dm.verdict) {
        case DmResult::Verdict::Ok: verdict = "ok"; break;
        case DmResult::Verdict::NoDifference: verdict = "no_difference"; break;
        case DmResult::Verdict::Dominance: verdict = "dominance"; break;
    }
    json node = {{"verdict", verdict},
                 {"statistic", std::isfinite(dm.statistic) ? json(dm.statistic) : json()},
                 {"p_value", std::isfinite(dm.p_value) ? json(dm.p_value) : json()}};
    if (dm.verdict == DmResult::Verdict::Dominance) node["better_model"] = dm.better_model;
    return node;
}

}  // namespace

std::string comparison_json(const DmResult& dm, std::pair<double, double> mse_mae_1,
                            std::pair<double, double> mse_mae_2) {
    json node = {{"schema_version", 1},
                 {"dm", dm_to_json(dm)},
                 {"model_a", {{"mse", mse_mae_1.first}, {"mae", mse_mae_1.second}}},
                 {"model_b", {{"mse", mse_mae_2.first}, {"mae", mse_mae_2.second}}}};
    return node.dump(2) + "\n";
}

std::string comparison_text(const DmResult& dm, std::pair<double, double> mse_mae_1,
                            std::pair<double, double> mse_mae_2) {
    std::string out;
    char buffer[160];
    const std::optional<double> stat =
        std::isfinite(dm.statistic) ? std::optional<double>(dm.statistic) : std::nullopt;
    const std::optional<double> pval =
        std::isfinite(dm.p_value) ? std::optional<double>(dm.p_value) : std::nullopt;
    std::snprintf(buffer, sizeof(buffer), "DM statistic  %s   (one-sided p %s)\n",
                  format_table(stat).c_str(), format_table(pval).c_str());
    out += buffer;
    std::snprintf(buffer, sizeof(buffer), "model    MSE      MAE\n    A  %7.3f  %7.3f\n    B  %7.3f  %7.3f\n",
                  mse_mae_1.first, mse_mae_1.second, mse_mae_2.first, mse_mae_2.second);
    out += buffer;
    return out;
}

std::string descriptive_json(const DescriptiveStats& stats) {
    json node = {{"schema_version", 1},
                 {"mean", stats.mean},
                 {"std_dev", stats.sd},
                 {"skewness", to_json_number(stats.skewness)},
                 {"maximum", stats.maximum},
                 {"minimum", stats.minimum},
                 {"kurtosis", to_json_number(stats.kurtosis)}};
    return node.dump(2) + "\n";
}

std::string descriptive_text(const DescriptiveStats& stats) {
    std::string out = "Mean    Std.dev  Skewness  Maximum  Minimum  Kurtosis\n";
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer), "%6.3f  %7.3f  %8s  %7.3f  %7.3f  %8s\n",
                  stats.mean, stats.sd, format_table(stats.skewness).c_str(),
                  stats.maximum, stats.minimum, format_table(stats.kurtosis).c_str());
    out += buffer;
    return out;
}

ModelSpec model_from_json(const std::string& json_text) {
    const json node = json::parse(json_text);
    if (node.contains("model")) return model_from_json_object(node.at("model"));
    return model_from_json_object(node);
}

std::string model_json(const ModelSpec& spec) {
    return model_to_json_object(spec).dump(2) + "\n";
}

}  // namespace msstgarch
