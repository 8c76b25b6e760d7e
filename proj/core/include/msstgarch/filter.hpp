#pragma once

#include <optional>
#include <vector>

#include "msstgarch/model.hpp"

namespace msstgarch {

/**
 * State of the forward regime-probability recursion.
 *
 * `alpha[j]` is the predicted probability that regime j is active for the
 * next observation given everything absorbed so far, and `h[j]` the
 * matching per-regime conditional variance. `log_lik_increment` is the log
 * mixture density of the last absorbed observation (0 for a fresh state).
 */
struct FilterState {
    std::vector<double> alpha;
    std::vector<double> h;
    double log_lik_increment = 0.0;

    void validate() const;
};

/// Mixture of centered normals: the one-step-ahead predictive law.
struct PredictiveDistribution {
    std::vector<double> weights;
    std::vector<double> sigmas;

    double pdf(double y) const;
    double cdf(double y) const;
    void validate() const;
};

/// Fresh state: stationary regime probabilities and start-up variances.
FilterState initial_filter_state(const ModelSpec& spec,
                                 std::optional<double> variance_target = std::nullopt);

/**
 * Absorbs one observation: updates the regime probabilities through the
 * normalized forward recursion and the per-regime variances through the
 * variance recursion, and records the log mixture density of `y`. All
 * density arithmetic is done in the log domain with max-subtraction.
 */
FilterState filter_step(const FilterState& state, const ModelSpec& spec, double y);

struct FilterRun {
    /// states[t] is the state after absorbing observation t, i.e. the
    /// predictive state for observation t + 1.
    std::vector<FilterState> states;
    double log_likelihood = 0.0;
};

/**
 * Left fold of filter_step over the data. The total log-likelihood is the
 * sum of per-step log mixture densities. When no initial state is given,
 * one is built from the stationary distribution with the sample variance
 * of `data` as start-up fallback.
 */
FilterRun run_filter(const ModelSpec& spec, const ReturnSeries& data,
                     const std::optional<FilterState>& init = std::nullopt,
                     std::optional<double> variance_target = std::nullopt);

/// Predictive variance: alpha . h.
double conditional_variance(const FilterState& state);

/// Predictive mixture for the next observation implied by a filter state.
PredictiveDistribution predictive_distribution(const FilterState& state);

/**
 * Value q with mixture-CDF(q) == prob, found by bisection on the analytic
 * mixture of normal CDFs. prob must lie strictly inside (0, 1).
 */
double predictive_quantile(const PredictiveDistribution& dist, double prob);

}  // namespace msstgarch
