#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msstgarch/model.hpp"
#include "msstgarch/rng.hpp"

namespace msstgarch {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

/**
 * Uniform prior intervals for one regime. A degenerate gamma interval
 * [0, 0] marks the regime as symmetric: gamma is pinned at zero, a2 is
 * tied to a1 (single shock coefficient) and neither is sampled.
 */
struct RegimePriors {
    Interval a0{1e-6, 5.0};
    Interval a1{0.0, 2.0};
    Interval a2{0.0, 2.0};
    Interval b{0.0, 1.0 - 1e-6};
    Interval gamma{1e-6, 10.0};

    bool gamma_fixed() const { return gamma.lo == 0.0 && gamma.hi == 0.0; }
};

/**
 * Priors of the sampler: per-regime uniform intervals, independent
 * Beta(c1, c2) priors on the diagonal transition probabilities, and an
 * optional leverage constraint that truncates each a2 grid at the current
 * a1 so negative shocks never carry the smaller coefficient.
 */
struct PriorSpec {
    std::vector<RegimePriors> regimes;
    std::vector<std::array<double, 2>> eta_beta;  ///< per diagonal, {c1, c2}
    bool leverage_constraint = false;

    static PriorSpec defaults(std::size_t k, bool smooth_transition);
    void validate(std::size_t k) const;
};

struct McmcConfig {
    std::size_t iterations = 10000;
    std::size_t burn_in = 5000;
    std::size_t grid_size = 33;
    std::size_t thinning = 1;
    std::uint64_t seed = 1;

    void validate() const;
    std::size_t retained() const { return (iterations - burn_in) / thinning; }
};

/// Mutable sampler state for one chain.
struct GibbsState {
    std::vector<RegimeParams> theta;
    TransitionMatrix eta;
    std::vector<int> z;                       ///< zero-based regime per time
    std::vector<std::vector<double>> h;       ///< cached [regime][t] paths
    double variance_target = 1.0;
};

/// Retained posterior sample. Parameter columns list the free scalars per
/// regime (a0, a1, a2, b, gamma; symmetric regimes drop a2 and gamma)
/// followed by the diagonal transition probabilities.
struct PosteriorDraws {
    std::size_t regime_count = 0;
    std::vector<bool> gamma_fixed;
    std::vector<std::string> parameter_names;
    std::vector<std::vector<double>> draws;        ///< row per retained sweep
    std::vector<double> conditional_log_likelihood;
    std::vector<std::vector<double>> state_frequencies;  ///< [t][regime]
    std::size_t relabel_count = 0;
    double variance_target = 1.0;

    std::size_t rows() const { return draws.size(); }
};

struct ParameterSummary {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
};

struct PosteriorSummary {
    std::vector<ParameterSummary> parameters;
    double relabel_rate = 0.0;
};

/// Per-regime variance path h[t] for observations data[t], t = 0..T-1;
/// h[0] is the start-up value of initial_variance().
std::vector<double> regime_variance_path(const RegimeParams& params,
                                         const std::vector<double>& data,
                                         std::optional<double> variance_target);

/// Log-likelihood of the data along a fixed state path: sum over t of the
/// centered normal log density at the active regime's variance.
double conditional_likelihood(const std::vector<RegimeParams>& theta,
                              const std::vector<int>& z, const ReturnSeries& data,
                              std::optional<double> variance_target = std::nullopt);

/**
 * Joint draw of the full state path: forward filtered probabilities from
 * the stationary initial law, then a backward pass that draws z_T from the
 * final filtered distribution and each earlier state proportional to
 * filtered(t) * eta(z_t, z_{t+1}). Each categorical draw uses the
 * sequential residual-probability scheme (accept index j with probability
 * p_j / sum_{l >= j} p_l on a fresh uniform).
 */
std::vector<int> sample_states(const GibbsState& state, const ReturnSeries& data,
                               RngStream& rng);

/// Conjugate update of a two-regime transition matrix from path counts:
/// each diagonal probability is Beta(c1 + n_ii, c2 + n_ij) given the
/// observed transition counts.
TransitionMatrix sample_transitions(const std::vector<int>& z, const PriorSpec& priors,
                                    RngStream& rng);

/**
 * Scalar draw from an unnormalized log kernel on [lo, hi]: the kernel is
 * tabulated on a uniform grid, exponentiated with max-subtraction,
 * integrated by the trapezoid rule, and inverted by linear interpolation
 * at a uniform height. The draw always lies inside the interval.
 */
double griddy_gibbs_draw(const std::function<double(double)>& log_kernel,
                         Interval interval, std::size_t grid_size, RngStream& rng);

/// One full pass over the free scalars of theta, each updated by a griddy
/// draw against its conditional posterior with the cached variance paths
/// refreshed after every accepted value.
void sample_theta(GibbsState& state, const ReturnSeries& data, const PriorSpec& priors,
                  std::size_t grid_size, RngStream& rng);

/**
 * Three-block Gibbs sampler: state path, transition probabilities, then
 * the continuous parameters by griddy Gibbs. Supports one or two regimes.
 * Retained draws are relabeled so the low-intercept regime comes first.
 * Deterministic for a fixed seed.
 */
PosteriorDraws run_gibbs(const ReturnSeries& data, const PriorSpec& priors,
                         const McmcConfig& config, std::size_t k);

PosteriorSummary posterior_summary(const PosteriorDraws& draws);

/// Model implied by one retained row.
ModelSpec spec_from_draw(const PosteriorDraws& draws, std::size_t row);

/// Model implied by the posterior means of the retained draws.
ModelSpec posterior_mean_spec(const PosteriorDraws& draws);

}  // namespace msstgarch
