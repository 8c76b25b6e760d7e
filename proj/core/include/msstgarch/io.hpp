#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msstgarch/evaluation.hpp"
#include "msstgarch/inference.hpp"
#include "msstgarch/model.hpp"
#include "msstgarch/stability.hpp"

namespace msstgarch {

enum class IngestMode { Prices, Returns };

/**
 * Reads a return series from a headered CSV file. In Prices mode the value
 * column holds price levels and the series becomes 100 * log(P_t / P_{t-1});
 * in Returns mode values pass through unchanged. Without an explicit
 * column mapping a one-column file supplies the values and a two-column
 * file is read as (date, value). Unparseable or non-finite rows abort
 * ingestion with their line numbers.
 */
ReturnSeries ingest(const std::string& path, IngestMode mode,
                    const std::optional<std::string>& value_column = std::nullopt,
                    const std::optional<std::string>& date_column = std::nullopt);

/// Number formatted with 17 significant digits so CSV round-trips are
/// bit-exact.
std::string format_full(double value);

/// Number formatted with three decimals, or "NA" when absent.
std::string format_table(const std::optional<double>& value);

void write_simulation_csv(const std::string& path, const SimulationResult& result);
void write_draws_csv(const std::string& path, const PosteriorDraws& draws);

/// Per-day forecast table: index, realized return, squared return,
/// predictive variance, and one VaR column per level.
void write_forecast_csv(const std::string& path, const ReturnSeries& data,
                        std::size_t split, const std::vector<DayForecast>& forecasts,
                        const std::vector<double>& levels);

struct ForecastTable {
    std::vector<double> realized;
    std::vector<double> variance;
    std::vector<double> levels;
    std::vector<std::vector<double>> thresholds;  ///< [level][day]
};

ForecastTable read_forecast_csv(const std::string& path);

std::string stability_report_json(const StabilityReport& report);
std::string fit_summary_json(const ModelSpec& spec, const PosteriorSummary& summary,
                             const McmcConfig& config, std::optional<double> dic_value);
std::string backtest_json(const BacktestReport& report);
std::string backtest_text(const BacktestReport& report);
std::string comparison_json(const DmResult& dm, std::pair<double, double> mse_mae_1,
                            std::pair<double, double> mse_mae_2);
std::string comparison_text(const DmResult& dm, std::pair<double, double> mse_mae_1,
                            std::pair<double, double> mse_mae_2);
std::string descriptive_json(const DescriptiveStats& stats);
std::string descriptive_text(const DescriptiveStats& stats);

/// Parses the "model" object shared by config files and fit summaries.
ModelSpec model_from_json(const std::string& json_text);
std::string model_json(const ModelSpec& spec);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace msstgarch
