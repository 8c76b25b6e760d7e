// Command line front end: simulate / fit / stability / forecast / backtest /
// compare / summary over CSV inputs, with a JSON config file that individual
// flags override. Exit codes: 0 success, 2 usage or configuration error,
// 3 data or numerical error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "msstgarch/evaluation.hpp"
#include "msstgarch/filter.hpp"
#include "msstgarch/inference.hpp"
#include "msstgarch/io.hpp"
#include "msstgarch/model.hpp"
#include "msstgarch/stability.hpp"

namespace {

using nlohmann::json;
using namespace msstgarch;

json default_config() {
    return {
        {"data", {{"path", ""}, {"mode", "returns"}, {"value_column", nullptr},
                  {"date_column", nullptr}}},
        {"model", nullptr},
        {"fit", {{"variant", "msstgarch"}, {"k", nullptr}, {"iterations", 10000},
                 {"burn_in", 5000}, {"grid_size", 33}, {"thinning", 1},
                 {"leverage_constraint", false}, {"priors", nullptr}}},
        {"simulate", {{"length", 2500}, {"burn_in", 500}}},
        {"forecast", {{"split", 2000},
                      {"levels", {0.99, 0.95, 0.9, 0.1, 0.05, 0.01}}}},
        {"stability", {{"delta", 1e-6}}},
        {"seed", 1},
        {"out", "."}};
}

struct FlagValues {
    std::string config_path;
    std::string data_path;
    std::string mode;
    std::string model;
    std::string column;
    std::string out_dir;
    std::string params_path;
    std::string forecasts_path;
    std::string forecast_a;
    std::string forecast_b;
    std::vector<double> levels;
    std::uint64_t seed = 0;
    std::size_t k = 0;
    std::size_t iters = 0;
    std::size_t burnin = 0;
    std::size_t grid = 0;
    std::size_t thin = 0;
    std::size_t split = 0;
    std::size_t length = 0;
    double delta = 0.0;
    bool leverage = false;
};

void add_common_flags(CLI::App* cmd, FlagValues& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file; flags override it");
    cmd->add_option("--seed", flags.seed, "RNG seed");
    cmd->add_option("--out", flags.out_dir, "output directory");
}

void add_data_flags(CLI::App* cmd, FlagValues& flags) {
    cmd->add_option("--data", flags.data_path, "input CSV (header row required)");
    cmd->add_option("--mode", flags.mode, "prices|returns")
        ->check(CLI::IsMember({"prices", "returns"}));
    cmd->add_option("--column", flags.column, "name of the value column");
}

bool flag_given(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

json load_config(const CLI::App* cmd, const FlagValues& flags) {
    json cfg = default_config();
    if (flag_given(cmd, "--config")) {
        cfg.merge_patch(json::parse(read_text_file(flags.config_path)));
    }
    if (flag_given(cmd, "--data")) cfg["data"]["path"] = flags.data_path;
    if (flag_given(cmd, "--mode")) cfg["data"]["mode"] = flags.mode;
    if (flag_given(cmd, "--column")) cfg["data"]["value_column"] = flags.column;
    if (flag_given(cmd, "--model")) cfg["fit"]["variant"] = flags.model;
    if (flag_given(cmd, "--k")) cfg["fit"]["k"] = flags.k;
    if (flag_given(cmd, "--iters")) cfg["fit"]["iterations"] = flags.iters;
    if (flag_given(cmd, "--burnin")) cfg["fit"]["burn_in"] = flags.burnin;
    if (flag_given(cmd, "--grid")) cfg["fit"]["grid_size"] = flags.grid;
    if (flag_given(cmd, "--thin")) cfg["fit"]["thinning"] = flags.thin;
    if (flag_given(cmd, "--leverage")) cfg["fit"]["leverage_constraint"] = flags.leverage;
    if (flag_given(cmd, "--length")) cfg["simulate"]["length"] = flags.length;
    if (flag_given(cmd, "--split")) cfg["forecast"]["split"] = flags.split;
    if (flag_given(cmd, "--levels")) cfg["forecast"]["levels"] = flags.levels;
    if (flag_given(cmd, "--delta")) cfg["stability"]["delta"] = flags.delta;
    if (flag_given(cmd, "--seed")) cfg["seed"] = flags.seed;
    if (flag_given(cmd, "--out")) cfg["out"] = flags.out_dir;
    return cfg;
}

std::string out_path(const json& cfg, const std::string& filename) {
    const std::filesystem::path dir = cfg.at("out").get<std::string>();
    std::filesystem::create_directories(dir);
    return (dir / filename).string();
}

ReturnSeries load_data(const json& cfg) {
    const auto& data = cfg.at("data");
    const std::string path = data.at("path").get<std::string>();
    if (path.empty()) throw std::invalid_argument("no input data file configured");
    const IngestMode mode = data.at("mode").get<std::string>() == "prices"
                                ? IngestMode::Prices
                                : IngestMode::Returns;
    std::optional<std::string> value_column, date_column;
    if (data.contains("value_column") && data.at("value_column").is_string()) {
        value_column = data.at("value_column").get<std::string>();
    }
    if (data.contains("date_column") && data.at("date_column").is_string()) {
        date_column = data.at("date_column").get<std::string>();
    }
    return ingest(path, mode, value_column, date_column);
}

ModelSpec load_model(const json& cfg, const std::string& params_path) {
    if (!params_path.empty()) {
        return model_from_json(read_text_file(params_path));
    }
    if (cfg.contains("model") && !cfg.at("model").is_null()) {
        return model_from_json(cfg.at("model").dump());
    }
    throw std::invalid_argument(
        "no model parameters given: set the config's model section or pass --params");
}

Interval interval_from_json(const json& node) {
    if (!node.is_array() || node.size() != 2) {
        throw std::invalid_argument("prior intervals must be [lo, hi] pairs");
    }
    return Interval{node[0].get<double>(), node[1].get<double>()};
}

PriorSpec priors_from_config(const json& fit_cfg, std::size_t k, bool smooth) {
    PriorSpec priors = PriorSpec::defaults(k, smooth);
    if (!fit_cfg.contains("priors") || fit_cfg.at("priors").is_null()) return priors;
    const json& node = fit_cfg.at("priors");
    if (node.contains("regimes")) {
        const auto& regimes = node.at("regimes");
        if (regimes.size() != k) {
            throw std::invalid_argument("prior config must list one entry per regime");
        }
        for (std::size_t j = 0; j < k; ++j) {
            const auto& r = regimes[j];
            if (r.contains("a0")) priors.regimes[j].a0 = interval_from_json(r.at("a0"));
            if (r.contains("a1")) priors.regimes[j].a1 = interval_from_json(r.at("a1"));
            if (r.contains("a2")) priors.regimes[j].a2 = interval_from_json(r.at("a2"));
            if (r.contains("b")) priors.regimes[j].b = interval_from_json(r.at("b"));
            if (r.contains("gamma")) priors.regimes[j].gamma = interval_from_json(r.at("gamma"));
        }
    }
    if (node.contains("eta_beta")) {
        priors.eta_beta.clear();
        for (const auto& pair : node.at("eta_beta")) {
            priors.eta_beta.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
    }
    return priors;
}

struct FitSetup {
    std::size_t k = 2;
    bool smooth = true;
    PriorSpec priors;
    McmcConfig config;
};

FitSetup fit_setup(const json& cfg) {
    const json& fit_cfg = cfg.at("fit");
    const std::string variant = fit_cfg.at("variant").get<std::string>();
    FitSetup setup;
    if (variant == "garch") { setup.k = 1; setup.smooth = false; }
    else if (variant == "stgarch") { setup.k = 1; setup.smooth = true; }
    else if (variant == "msgarch") { setup.k = 2; setup.smooth = false; }
    else if (variant == "msstgarch") { setup.k = 2; setup.smooth = true; }
    else throw std::invalid_argument("unknown model variant: " + variant);
    if (fit_cfg.contains("k") && !fit_cfg.at("k").is_null()) {
        setup.k = fit_cfg.at("k").get<std::size_t>();
    }
    setup.priors = priors_from_config(fit_cfg, setup.k, setup.smooth);
    setup.priors.leverage_constraint = fit_cfg.at("leverage_constraint").get<bool>();
    setup.config.iterations = fit_cfg.at("iterations").get<std::size_t>();
    setup.config.burn_in = fit_cfg.at("burn_in").get<std::size_t>();
    setup.config.grid_size = fit_cfg.at("grid_size").get<std::size_t>();
    setup.config.thinning = fit_cfg.at("thinning").get<std::size_t>();
    setup.config.seed = cfg.at("seed").get<std::uint64_t>();
    setup.config.validate();
    return setup;
}

int run_simulate(const CLI::App* cmd, const FlagValues& flags) {
    const json cfg = load_config(cmd, flags);
    const ModelSpec spec = load_model(cfg, flags.params_path);
    const auto length = cfg.at("simulate").at("length").get<std::size_t>();
    const auto burn_in = cfg.at("simulate").at("burn_in").get<std::size_t>();
    const auto seed = cfg.at("seed").get<std::uint64_t>();

    const SimulationResult result = simulate(spec, length, seed, burn_in);
    const std::string path = out_path(cfg, "simulated.csv");
    write_simulation_csv(path, result);
    std::cout << "wrote " << path << " (" << length << " observations, seed " << seed
              << ")\n";
    return 0;
}

int run_fit(const CLI::App* cmd, const FlagValues& flags) {
    const json cfg = load_config(cmd, flags);
    const ReturnSeries data = load_data(cfg);
    const FitSetup setup = fit_setup(cfg);

    const PosteriorDraws draws = run_gibbs(data, setup.priors, setup.config, setup.k);
    const PosteriorSummary summary = posterior_summary(draws);
    const ModelSpec mean_spec = posterior_mean_spec(draws);
    const double dic_value = dic(draws, data);

    const std::string draws_path = out_path(cfg, "draws.csv");
    write_draws_csv(draws_path, draws);
    const std::string fit_path = out_path(cfg, "fit.json");
    write_text_file(fit_path, fit_summary_json(mean_spec, summary, setup.config, dic_value));

    std::printf("parameter        mean        sd       q05       q50       q95\n");
    for (const auto& p : summary.parameters) {
        std::printf("%-10s %9.3f %9.3f %9.3f %9.3f %9.3f\n", p.name.c_str(), p.mean,
                    p.sd, p.q05, p.q50, p.q95);
    }
    std::printf("DIC %.3f  (relabel rate %.3f)\n", dic_value, summary.relabel_rate);
    std::cout << "wrote " << draws_path << " and " << fit_path << "\n";
    return 0;
}

int run_stability(const CLI::App* cmd, const FlagValues& flags) {
    const json cfg = load_config(cmd, flags);
    const ModelSpec spec = load_model(cfg, flags.params_path);
    const double delta = cfg.at("stability").at("delta").get<double>();
    const StabilityReport report = stability_report(spec, delta);
    const std::string text = stability_report_json(report);
    std::cout << text;
    if (flag_given(cmd, "--out")) {
        write_text_file(out_path(cfg, "stability.json"), text);
    }
    return 0;
}

int run_forecast(const CLI::App* cmd, const FlagValues& flags) {
    const json cfg = load_config(cmd, flags);
    const ReturnSeries data = load_data(cfg);
    const ModelSpec spec = load_model(cfg, flags.params_path);
    const auto split = cfg.at("forecast").at("split").get<std::size_t>();
    const auto levels = cfg.at("forecast").at("levels").get<std::vector<double>>();

    const std::vector<DayForecast> forecasts = rolling_forecast(spec, data, split);
    const std::string path = out_path(cfg, "forecast.csv");
    write_forecast_csv(path, data, split, forecasts, levels);
    std::cout << "wrote " << path << " (" << forecasts.size() << " forecast days)\n";
    return 0;
}

int run_backtest(const CLI::App* cmd, const FlagValues& flags) {
    const json cfg = load_config(cmd, flags);
    if (flags.forecasts_path.empty()) {
        throw std::invalid_argument("backtest needs --forecasts <forecast.csv>");
    }
    const ForecastTable table = read_forecast_csv(flags.forecasts_path);

    std::vector<double> levels = table.levels;
    if (flag_given(cmd, "--levels")) {
        levels = flags.levels;
    }
    BacktestReport report;
    for (double level : levels) {
        std::size_t idx = table.levels.size();
        for (std::size_t i = 0; i < table.levels.size(); ++i) {
            if (std::abs(table.levels[i] - level) < 1e-12) { idx = i; break; }
        }
        if (idx == table.levels.size()) {
            throw std::invalid_argument("forecast file carries no VaR column for level " +
                                        std::to_string(level));
        }
        const ViolationSeries series =
            violations_from_thresholds(table.thresholds[idx], table.realized, level);
        BacktestRow row;
        row.alpha = level;
        row.expected_violations =
            series.nominal_rate() * static_cast<double>(table.realized.size());
        row.observed_violations = series.n1;
        row.uc = lr_uc(series);
        row.ind = lr_ind(series);
        row.cc = lr_cc(series);
        report.rows.push_back(row);
    }

    const std::string text = backtest_text(report);
    std::cout << text;
    write_text_file(out_path(cfg, "backtest.json"), backtest_json(report));
    write_text_file(out_path(cfg, "backtest.txt"), text);
    return 0;
}

int run_compare(const CLI::App* cmd, const FlagValues& flags) {
    const json cfg = load_config(cmd, flags);
    if (flags.forecast_a.empty() || flags.forecast_b.empty()) {
        throw std::invalid_argument("compare needs --a and --b forecast files");
    }
    const ForecastTable a = read_forecast_csv(flags.forecast_a);
    const ForecastTable b = read_forecast_csv(flags.forecast_b);
    if (a.realized.size() != b.realized.size()) {
        throw std::invalid_argument("forecast files cover different horizons");
    }
    for (std::size_t t = 0; t < a.realized.size(); ++t) {
        if (a.realized[t] != b.realized[t]) {
            throw std::invalid_argument("forecast files disagree on the realized returns");
        }
    }

    std::vector<double> squared(a.realized.size());
    std::vector<double> err_a(a.realized.size()), err_b(b.realized.size());
    for (std::size_t t = 0; t < a.realized.size(); ++t) {
        squared[t] = a.realized[t] * a.realized[t];
        err_a[t] = a.variance[t] - squared[t];
        err_b[t] = b.variance[t] - squared[t];
    }

    const DmResult dm = dm_test(err_a, err_b);
    const auto loss_a = mse_mae(a.variance, squared);
    const auto loss_b = mse_mae(b.variance, squared);

    const std::string text = comparison_text(dm, loss_a, loss_b);
    std::cout << text;
    write_text_file(out_path(cfg, "compare.json"), comparison_json(dm, loss_a, loss_b));
    return 0;
}

int run_summary(const CLI::App* cmd, const FlagValues& flags) {
    const json cfg = load_config(cmd, flags);
    const ReturnSeries data = load_data(cfg);
    const DescriptiveStats stats = descriptive_stats(data);
    const std::string text = descriptive_text(stats);
    std::cout << text;
    write_text_file(out_path(cfg, "summary.json"), descriptive_json(stats));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov-switching smooth-transition GARCH toolkit"};
    app.require_subcommand(1);

    FlagValues flags;

    CLI::App* sim = app.add_subcommand("simulate", "simulate a return path");
    add_common_flags(sim, flags);
    sim->add_option("--length", flags.length, "observations to keep");
    sim->add_option("--params", flags.params_path, "model JSON (fit.json or model object)");

    CLI::App* fit = app.add_subcommand("fit", "Bayesian estimation by Gibbs sampling");
    add_common_flags(fit, flags);
    add_data_flags(fit, flags);
    fit->add_option("--model", flags.model, "garch|stgarch|msgarch|msstgarch")
        ->check(CLI::IsMember({"garch", "stgarch", "msgarch", "msstgarch"}));
    fit->add_option("--k", flags.k, "number of regimes (1 or 2)");
    fit->add_option("--iters", flags.iters, "total Gibbs sweeps");
    fit->add_option("--burnin", flags.burnin, "discarded sweeps");
    fit->add_option("--grid", flags.grid, "griddy-Gibbs grid size");
    fit->add_option("--thin", flags.thin, "thinning interval");
    fit->add_flag("--leverage", flags.leverage, "constrain a2 <= a1 in every regime");

    CLI::App* stab = app.add_subcommand("stability", "second-moment stability report");
    add_common_flags(stab, flags);
    stab->add_option("--params", flags.params_path, "model JSON (fit.json or model object)");
    stab->add_option("--delta", flags.delta, "logistic saturation tolerance");

    CLI::App* fc = app.add_subcommand("forecast", "one-step-ahead rolling forecasts");
    add_common_flags(fc, flags);
    add_data_flags(fc, flags);
    fc->add_option("--params", flags.params_path, "model JSON (fit.json or model object)");
    fc->add_option("--split", flags.split, "estimation window length");
    fc->add_option("--levels", flags.levels, "VaR levels")->delimiter(',');

    CLI::App* bt = app.add_subcommand("backtest", "VaR coverage tests on a forecast file");
    add_common_flags(bt, flags);
    bt->add_option("--forecasts", flags.forecasts_path, "forecast.csv from the forecast command");
    bt->add_option("--levels", flags.levels, "VaR levels to test")->delimiter(',');

    CLI::App* cmp = app.add_subcommand("compare", "forecast accuracy comparison");
    add_common_flags(cmp, flags);
    cmp->add_option("--a", flags.forecast_a, "forecast.csv of model A");
    cmp->add_option("--b", flags.forecast_b, "forecast.csv of model B");

    CLI::App* sum = app.add_subcommand("summary", "descriptive statistics of a series");
    add_common_flags(sum, flags);
    add_data_flags(sum, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_simulate(sim, flags);
        if (fit->parsed()) return run_fit(fit, flags);
        if (stab->parsed()) return run_stability(stab, flags);
        if (fc->parsed()) return run_forecast(fc, flags);
        if (bt->parsed()) return run_backtest(bt, flags);
        if (cmp->parsed()) return run_compare(cmp, flags);
        if (sum->parsed()) return run_summary(sum, flags);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error (configuration): " << err.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& err) {
        std::cerr << "error (configuration): " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 2;
}
