#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msstgarch/filter.hpp"
#include "msstgarch/inference.hpp"
#include "msstgarch/model.hpp"

namespace msstgarch {

/// One out-of-sample day: predictive variance and the full mixture, both
/// formed before that day's return is absorbed.
struct DayForecast {
    double variance = 0.0;
    PredictiveDistribution distribution;
};

/**
 * One-step-ahead rolling forecast: the filter runs over data[0..split)
 * with parameters held fixed, then emits the predictive distribution and
 * variance for each remaining day before absorbing it. The start-up
 * variance fallback uses only the estimation window.
 */
std::vector<DayForecast> rolling_forecast(const ModelSpec& spec, const ReturnSeries& data,
                                          std::size_t split);

/// Convenience overload: forecasts from the posterior-mean model.
std::vector<DayForecast> rolling_forecast(const PosteriorDraws& draws,
                                          const ReturnSeries& data, std::size_t split);

/**
 * Indicator record of value-at-risk breaches at one level. The threshold
 * for level alpha is the (1 - alpha) quantile of each day's predictive
 * mixture; a day counts as a violation when the realized return falls
 * below it for alpha > 0.5 and above it for alpha <= 0.5.
 */
struct ViolationSeries {
    double alpha = 0.0;
    std::vector<double> var_thresholds;
    std::vector<int> indicators;
    std::size_t n0 = 0, n1 = 0;
    std::size_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;

    /// Bernoulli rate the indicators should follow under correct coverage.
    double nominal_rate() const { return alpha > 0.5 ? 1.0 - alpha : alpha; }
};

ViolationSeries violations(const std::vector<PredictiveDistribution>& forecasts,
                           const std::vector<double>& realized, double alpha);

/// Same, with precomputed per-day thresholds.
ViolationSeries violations_from_thresholds(const std::vector<double>& thresholds,
                                           const std::vector<double>& realized,
                                           double alpha);

/**
 * Likelihood-ratio statistic for unconditional coverage. Follows the
 * convention of the reference tables this library is validated against:
 * the Bernoulli likelihoods count one extra non-violation day (the day
 * the forecast window opens) while the violation rate is estimated from
 * the indicator series alone. Clamped at zero; empty when the observed
 * rate is degenerate at 0 or 1.
 */
std::optional<double> lr_uc(const ViolationSeries& series);

/// Likelihood-ratio statistic for independence of violations, using the
/// first-order transition counts; 0 * log 0 contributes zero and the
/// result is empty whenever a required frequency is 0/0.
std::optional<double> lr_ind(const ViolationSeries& series);

/// Conditional coverage: lr_uc + lr_ind, empty when either part is.
std::optional<double> lr_cc(const ViolationSeries& series);

struct BacktestRow {
    double alpha = 0.0;
    double expected_violations = 0.0;
    std::size_t observed_violations = 0;
    std::optional<double> uc;
    std::optional<double> ind;
    std::optional<double> cc;
};

struct BacktestReport {
    std::vector<BacktestRow> rows;
};

/// Runs the violation tests at every level, fanning levels out across
/// worker threads.
BacktestReport backtest(const std::vector<PredictiveDistribution>& forecasts,
                        const std::vector<double>& realized,
                        const std::vector<double>& levels);

struct DmResult {
    enum class Verdict {
        Ok,            ///< statistic and p-value are meaningful
        NoDifference,  ///< identical forecasts, no statistic
        Dominance      ///< constant nonzero loss gap, no sampling variance
    };
    Verdict verdict = Verdict::Ok;
    double statistic = 0.0;
    double p_value = 0.0;
    int better_model = 0;  ///< 1 or 2 under Dominance, 0 otherwise
};

/**
 * Diebold-Mariano test of equal forecast accuracy under squared-error
 * loss, one-sided against "model 1 is more accurate". The variance of the
 * mean loss differential uses the lag-zero sample variance by default
 * (one-step forecasts); `bartlett_lags` adds Bartlett-weighted
 * autocovariances for multi-step use, and `hln_correction` applies the
 * Harvey-Leybourne-Newbold small-sample factor.
 */
DmResult dm_test(const std::vector<double>& errors_1, const std::vector<double>& errors_2,
                 int bartlett_lags = 0, bool hln_correction = false);

/// Deviance information criterion from retained draws: twice the
/// log-likelihood at the posterior mean minus four times the posterior
/// average log-likelihood, both through the forward filter. Lower is
/// better.
double dic(const PosteriorDraws& draws, const ReturnSeries& data);

/// Mean squared and mean absolute gap between variance forecasts and
/// squared returns.
std::pair<double, double> mse_mae(const std::vector<double>& variance_forecasts,
                                  const std::vector<double>& squared_returns);

struct DescriptiveStats {
    double mean = 0.0;
    double sd = 0.0;
    std::optional<double> skewness;
    double maximum = 0.0;
    double minimum = 0.0;
    std::optional<double> kurtosis;  ///< non-excess: 3 for a normal sample
};

DescriptiveStats descriptive_stats(const ReturnSeries& data);

}  // namespace msstgarch
