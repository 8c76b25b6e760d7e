#include "msstgarch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace msstgarch {

namespace {

double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double window_variance(const std::vector<double>& values, std::size_t count) {
    if (count < 2) return 1.0;
    const double n = static_cast<double>(count);
    double mean = 0.0;
    for (std::size_t t = 0; t < count; ++t) mean += values[t];
    mean /= n;
    double ss = 0.0;
    for (std::size_t t = 0; t < count; ++t) ss += (values[t] - mean) * (values[t] - mean);
    return ss / (n - 1.0);
}

/// n * log(p) with the 0 * log 0 = 0 convention.
double count_log(double n, double p) {
    if (n == 0.0) return 0.0;
    return n * std::log(p);
}

}  // namespace

std::vector<DayForecast> rolling_forecast(const ModelSpec& spec, const ReturnSeries& data,
                                          std::size_t split) {
    spec.validate();
    data.validate();
    if (split == 0 || split >= data.size()) {
        throw std::invalid_argument("split must leave data on both sides");
    }

    FilterState state = initial_filter_state(spec, window_variance(data.values, split));
    for (std::size_t t = 0; t < split; ++t) {
        state = filter_step(state, spec, data.values[t]);
    }

    std::vector<DayForecast> out;
    out.reserve(data.size() - split);
    for (std::size_t t = split; t < data.size(); ++t) {
        DayForecast day;
        day.variance = conditional_variance(state);
        day.distribution = predictive_distribution(state);
        out.push_back(std::move(day));
        state = filter_step(state, spec, data.values[t]);
    }
    return out;
}

std::vector<DayForecast> rolling_forecast(const PosteriorDraws& draws,
                                          const ReturnSeries& data, std::size_t split) {
    return rolling_forecast(posterior_mean_spec(draws), data, split);
}

ViolationSeries violations_from_thresholds(const std::vector<double>& thresholds,
                                           const std::vector<double>& realized,
                                           double alpha) {
    if (thresholds.size() != realized.size()) {
        throw std::invalid_argument("threshold and return sequences must have equal length");
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("risk level must lie in (0, 1)");
    }

    ViolationSeries series;
    series.alpha = alpha;
    series.var_thresholds = thresholds;
    series.indicators.reserve(realized.size());
    for (std::size_t t = 0; t < realized.size(); ++t) {
        const bool breach = alpha > 0.5 ? realized[t] < thresholds[t]
                                        : realized[t] > thresholds[t];
        series.indicators.push_back(breach ? 1 : 0);
        if (breach) ++series.n1; else ++series.n0;
    }
    for (std::size_t t = 0; t + 1 < series.indicators.size(); ++t) {
        const int from = series.indicators[t];
        const int to = series.indicators[t + 1];
        if (from == 0 && to == 0) ++series.n00;
        else if (from == 0 && to == 1) ++series.n01;
        else if (from == 1 && to == 0) ++series.n10;
        else ++series.n11;
    }
    return series;
}

ViolationSeries violations(const std::vector<PredictiveDistribution>& forecasts,
                           const std::vector<double>& realized, double alpha) {
    if (forecasts.size() != realized.size()) {
        throw std::invalid_argument("forecast and return sequences must have equal length");
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("risk level must lie in (0, 1)");
    }
    std::vector<double> thresholds;
    thresholds.reserve(forecasts.size());
    for (const auto& dist : forecasts) {
        thresholds.push_back(predictive_quantile(dist, 1.0 - alpha));
    }
    return violations_from_thresholds(thresholds, realized, alpha);
}

std::optional<double> lr_uc(const ViolationSeries& series) {
    const double n1 = static_cast<double>(series.n1);
    const double total = static_cast<double>(series.n0 + series.n1);
    if (total == 0.0) return std::nullopt;
    if (series.n1 == 0 || series.n0 == 0) return std::nullopt;

    const double phi = series.nominal_rate();
    const double rate = n1 / total;
    // The pre-sample day enters the likelihoods as a non-violation.
    const double n0 = static_cast<double>(series.n0) + 1.0;
    const double statistic =
        -2.0 * (count_log(n1, phi) + count_log(n0, 1.0 - phi) -
                count_log(n1, rate) - count_log(n0, 1.0 - rate));
    return std::max(statistic, 0.0);
}

std::optional<double> lr_ind(const ViolationSeries& series) {
    const double n00 = static_cast<double>(series.n00);
    const double n01 = static_cast<double>(series.n01);
    const double n10 = static_cast<double>(series.n10);
    const double n11 = static_cast<double>(series.n11);
    if (n00 + n01 == 0.0 || n10 + n11 == 0.0) return std::nullopt;

    const double stay0 = n00 / (n00 + n01);
    const double stay1 = n11 / (n10 + n11);
    const double pooled0 = (n00 + n10) / (n00 + n01 + n10 + n11);
    const double statistic =
        -2.0 * (count_log(n00 + n10, pooled0) + count_log(n11 + n01, 1.0 - pooled0) -
                count_log(n00, stay0) - count_log(n01, 1.0 - stay0) -
                count_log(n11, stay1) - count_log(n10, 1.0 - stay1));
    return std::max(statistic, 0.0);
}

std::optional<double> lr_cc(const ViolationSeries& series) {
    const auto uc = lr_uc(series);
    const auto ind = lr_ind(series);
    if (!uc || !ind) return std::nullopt;
    return *uc + *ind;
}

BacktestReport backtest(const std::vector<PredictiveDistribution>& forecasts,
                        const std::vector<double>& realized,
                        const std::vector<double>& levels) {
    BacktestReport report;
    report.rows.resize(levels.size());

    const auto run_level = [&](std::size_t idx) {
        const double alpha = levels[idx];
        const ViolationSeries series = violations(forecasts, realized, alpha);
        BacktestRow row;
        row.alpha = alpha;
        row.expected_violations = series.nominal_rate() * static_cast<double>(realized.size());
        row.observed_violations = series.n1;
        row.uc = lr_uc(series);
        row.ind = lr_ind(series);
        row.cc = lr_cc(series);
        report.rows[idx] = row;
    };

    std::vector<std::thread> workers;
    workers.reserve(levels.size());
    for (std::size_t idx = 0; idx < levels.size(); ++idx) {
        workers.emplace_back(run_level, idx);
    }
    for (auto& worker : workers) worker.join();
    return report;
}

DmResult dm_test(const std::vector<double>& errors_1, const std::vector<double>& errors_2,
                 int bartlett_lags, bool hln_correction) {
    if (errors_1.size() != errors_2.size()) {
        throw std::invalid_argument("error sequences must have equal length");
    }
    if (errors_1.size() < 10) {
        throw std::invalid_argument("the test needs at least ten forecast errors");
    }
    if (bartlett_lags < 0) throw std::invalid_argument("lag count must be nonnegative");

    const std::size_t t_count = errors_1.size();
    std::vector<double> diff(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
        diff[t] = errors_1[t] * errors_1[t] - errors_2[t] * errors_2[t];
    }
    const double n = static_cast<double>(t_count);
    const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / n;

    DmResult result;
    if (std::all_of(diff.begin(), diff.end(), [](double d) { return d == 0.0; })) {
        result.verdict = DmResult::Verdict::NoDifference;
        result.statistic = std::numeric_limits<double>::quiet_NaN();
        result.p_value = std::numeric_limits<double>::quiet_NaN();
        return result;
    }

    double long_run = 0.0;
    for (double d : diff) long_run += (d - mean) * (d - mean);
    long_run /= n;
    for (int lag = 1; lag <= bartlett_lags; ++lag) {
        double cov = 0.0;
        for (std::size_t t = static_cast<std::size_t>(lag); t < t_count; ++t) {
            cov += (diff[t] - mean) * (diff[t - static_cast<std::size_t>(lag)] - mean);
        }
        cov /= n;
        long_run += 2.0 * (1.0 - static_cast<double>(lag) /
                                     static_cast<double>(bartlett_lags + 1)) * cov;
    }

    if (!(long_run > 0.0)) {
        result.verdict = DmResult::Verdict::Dominance;
        result.statistic = std::numeric_limits<double>::quiet_NaN();
        result.p_value = std::numeric_limits<double>::quiet_NaN();
        result.better_model = mean < 0.0 ? 1 : 2;
        return result;
    }

    double statistic = mean / std::sqrt(long_run / n);
    if (hln_correction) {
        const double h = static_cast<double>(bartlett_lags) + 1.0;
        statistic *= std::sqrt((n + 1.0 - 2.0 * h + h * (h - 1.0) / n) / n);
    }
    result.statistic = statistic;
    result.p_value = standard_normal_cdf(statistic);
    return result;
}

double dic(const PosteriorDraws& draws, const ReturnSeries& data) {
    if (draws.rows() == 0) throw std::invalid_argument("DIC needs retained draws");
    const double plugin =
        run_filter(posterior_mean_spec(draws), data, std::nullopt, draws.variance_target)
            .log_likelihood;
    double average = 0.0;
    for (std::size_t r = 0; r < draws.rows(); ++r) {
        average += run_filter(spec_from_draw(draws, r), data, std::nullopt,
                              draws.variance_target)
                       .log_likelihood;
    }
    average /= static_cast<double>(draws.rows());
    return 2.0 * plugin - 4.0 * average;
}

std::pair<double, double> mse_mae(const std::vector<double>& variance_forecasts,
                                  const std::vector<double>& squared_returns) {
    if (variance_forecasts.size() != squared_returns.size()) {
        throw std::invalid_argument("forecast and return sequences must have equal length");
    }
    if (variance_forecasts.empty()) {
        throw std::invalid_argument("forecast comparison needs at least one observation");
    }
    double se = 0.0, ae = 0.0;
    for (std::size_t t = 0; t < variance_forecasts.size(); ++t) {
        const double gap = variance_forecasts[t] - squared_returns[t];
        se += gap * gap;
        ae += std::abs(gap);
    }
    const double n = static_cast<double>(variance_forecasts.size());
    return {se / n, ae / n};
}

DescriptiveStats descriptive_stats(const ReturnSeries& data) {
    data.validate();
    if (data.size() < 4) {
        throw std::invalid_argument("descriptive statistics need at least four observations");
    }
    const double n = static_cast<double>(data.size());
    const double mean = std::accumulate(data.values.begin(), data.values.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : data.values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    DescriptiveStats stats;
    stats.mean = mean;
    stats.sd = std::sqrt(m2 * n / (n - 1.0));
    stats.maximum = *std::max_element(data.values.begin(), data.values.end());
    stats.minimum = *std::min_element(data.values.begin(), data.values.end());
    if (m2 > 0.0) {
        stats.skewness = m3 / std::pow(m2, 1.5);
        stats.kurtosis = m4 / (m2 * m2);
    }
    return stats;
}

}  // namespace msstgarch
