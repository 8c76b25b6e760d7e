#include "msstgarch/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace msstgarch {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log(sqrt(2*pi))

double log_normal_density(double y, double variance) {
    return -kLogSqrt2Pi - 0.5 * std::log(variance) - 0.5 * y * y / variance;
}

double sample_variance(const std::vector<double>& values) {
    if (values.size() < 2) return 1.0;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / (n - 1.0);
}

}  // namespace

void FilterState::validate() const {
    if (alpha.empty() || alpha.size() != h.size()) {
        throw std::invalid_argument("filter state must carry matching alpha and h vectors");
    }
    double sum = 0.0;
    for (double a : alpha) {
        if (!(a >= 0.0)) throw std::invalid_argument("regime probabilities must be nonnegative");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw std::invalid_argument("regime probabilities must sum to one");
    }
    for (double v : h) {
        if (!(v > 0.0)) throw std::invalid_argument("conditional variances must be positive");
    }
}

void PredictiveDistribution::validate() const {
    if (weights.empty() || weights.size() != sigmas.size()) {
        throw std::invalid_argument("predictive mixture needs matching weights and sigmas");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("mixture weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw std::invalid_argument("mixture weights must sum to one");
    }
    for (double s : sigmas) {
        if (!(s > 0.0)) throw std::invalid_argument("mixture sigmas must be positive");
    }
}

double PredictiveDistribution::pdf(double y) const {
    double total = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        const double z = y / sigmas[j];
        total += weights[j] *
                 std::exp(-0.5 * z * z) / (sigmas[j] * std::sqrt(2.0 * std::numbers::pi));
    }
    return total;
}

double PredictiveDistribution::cdf(double y) const {
    double total = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        total += weights[j] * 0.5 * std::erfc(-y / (sigmas[j] * std::numbers::sqrt2));
    }
    return total;
}

FilterState initial_filter_state(const ModelSpec& spec,
                                 std::optional<double> variance_target) {
    spec.validate();
    FilterState state;
    state.alpha = stationary_distribution(spec.transition);
    state.h.reserve(spec.regime_count());
    for (const auto& regime : spec.regimes) {
        state.h.push_back(initial_variance(regime, variance_target));
    }
    state.log_lik_increment = 0.0;
    return state;
}

FilterState filter_step(const FilterState& state, const ModelSpec& spec, double y) {
    const std::size_t k = spec.regime_count();
    if (state.alpha.size() != k || state.h.size() != k) {
        throw std::invalid_argument("filter state dimension does not match the model");
    }
    if (!std::isfinite(y)) throw std::invalid_argument("observation must be finite");

    // Log joint mass of (observation, active regime) up to normalization.
    std::vector<double> log_terms(k);
    double max_term = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < k; ++m) {
        const double la = state.alpha[m] > 0.0
                              ? std::log(state.alpha[m])
                              : -std::numeric_limits<double>::infinity();
        log_terms[m] = log_normal_density(y, state.h[m]) + la;
        max_term = std::max(max_term, log_terms[m]);
    }
    if (!std::isfinite(max_term)) {
        throw std::runtime_error("degenerate filter update: mixture density underflowed to zero");
    }

    std::vector<double> scaled(k);
    double denom = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
        scaled[m] = std::exp(log_terms[m] - max_term);
        denom += scaled[m];
    }

    FilterState next;
    next.alpha.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double num = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
            num += scaled[m] * spec.transition(m, j);
        }
        next.alpha[j] = num / denom;
    }
    next.h.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        next.h[j] = regime_variance_step(spec.regimes[j], y, state.h[j]);
    }
    next.log_lik_increment = max_term + std::log(denom);
    return next;
}

FilterRun run_filter(const ModelSpec& spec, const ReturnSeries& data,
                     const std::optional<FilterState>& init,
                     std::optional<double> variance_target) {
    data.validate();
    FilterState state;
    if (init) {
        init->validate();
        state = *init;
    } else {
        if (!variance_target) variance_target = sample_variance(data.values);
        state = initial_filter_state(spec, variance_target);
    }

    FilterRun run;
    run.states.reserve(data.size());
    for (std::size_t t = 0; t < data.size(); ++t) {
        try {
            state = filter_step(state, spec, data.values[t]);
        } catch (const std::exception& err) {
            throw std::runtime_error("filter failed at observation " + std::to_string(t) +
                                     ": " + err.what());
        }
        run.log_likelihood += state.log_lik_increment;
        run.states.push_back(state);
    }
    return run;
}

double conditional_variance(const FilterState& state) {
    double total = 0.0;
    for (std::size_t j = 0; j < state.alpha.size(); ++j) {
        total += state.alpha[j] * state.h[j];
    }
    return total;
}

PredictiveDistribution predictive_distribution(const FilterState& state) {
    PredictiveDistribution dist;
    dist.weights = state.alpha;
    dist.sigmas.reserve(state.h.size());
    for (double v : state.h) dist.sigmas.push_back(std::sqrt(v));
    return dist;
}

double predictive_quantile(const PredictiveDistribution& dist, double prob) {
    dist.validate();
    if (!(prob > 0.0) || !(prob < 1.0)) {
        throw std::invalid_argument("quantile probability must lie in (0, 1)");
    }

    const double max_sigma = *std::max_element(dist.sigmas.begin(), dist.sigmas.end());
    double lo = -12.0 * max_sigma;
    double hi = 12.0 * max_sigma;
    for (int attempt = 0; attempt < 4 && (dist.cdf(lo) > prob || dist.cdf(hi) < prob); ++attempt) {
        lo *= 2.0;
        hi *= 2.0;
    }
    if (dist.cdf(lo) > prob || dist.cdf(hi) < prob) {
        throw std::runtime_error("failed to bracket the requested quantile");
    }

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double value = dist.cdf(mid);
        if (std::abs(value - prob) < 5e-9) break;
        if (value < prob) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return mid;
}

}  // namespace msstgarch
