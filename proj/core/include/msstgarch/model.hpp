#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace msstgarch {

/**
 * Coefficients of one volatility regime.
 *
 * The conditional variance of a regime evolves as
 *
 *   h_t = a0 + y_{t-1}^2 * d_t + b * h_{t-1},
 *   d_t = a1 * (1 - w_{t-1}) + a2 * w_{t-1},
 *   w_{t-1} = 1 / (1 + exp(-gamma * y_{t-1})),
 *
 * so a1 governs the response to negative shocks, a2 the response to
 * positive shocks, and gamma the speed of the transition between them.
 * gamma == 0 is the symmetric limit: the weight is pinned at 1/2 and the
 * effective shock coefficient is (a1 + a2) / 2.
 */
struct RegimeParams {
    double a0 = 0.0;     ///< variance intercept, > 0
    double a1 = 0.0;     ///< negative-shock coefficient, >= 0
    double a2 = 0.0;     ///< positive-shock coefficient, >= 0
    double b = 0.0;      ///< variance persistence, >= 0
    double gamma = 0.0;  ///< logistic slope, >= 0 (0 = symmetric)

    void validate() const;
};

/// Row-stochastic K x K matrix of regime transition probabilities.
class TransitionMatrix {
public:
    TransitionMatrix() : k_(1), entries_{1.0} {}
    explicit TransitionMatrix(std::vector<std::vector<double>> rows);

    std::size_t size() const { return k_; }
    double operator()(std::size_t from, std::size_t to) const {
        return entries_[from * k_ + to];
    }

    /// True when every entry of P^K is strictly positive, which implies the
    /// chain is irreducible and aperiodic.
    bool is_primitive() const;

private:
    std::size_t k_;
    std::vector<double> entries_;  // row-major
};

enum class ModelVariant { Garch, StGarch, MsGarch, MsStGarch };

std::string variant_name(ModelVariant variant);

/**
 * Full model parameterization: K regimes plus the hidden-chain transition
 * matrix. The variant tag is derived from the structure, never stored:
 * one regime with gamma == 0 is a plain GARCH, one regime with gamma > 0
 * a smooth-transition GARCH, several symmetric regimes a Markov-switching
 * GARCH, and anything else the full smooth-transition switching model.
 */
struct ModelSpec {
    std::vector<RegimeParams> regimes;
    TransitionMatrix transition;

    std::size_t regime_count() const { return regimes.size(); }
    ModelVariant variant() const;
    void validate() const;

    /// Regimes reordered so intercepts are ascending (low volatility
    /// first), with the transition matrix permuted to match.
    ModelSpec canonicalized() const;
};

/// Log returns in percent, oldest first. Timestamps are optional labels
/// carried through ingestion; empty when absent.
struct ReturnSeries {
    std::vector<double> values;
    std::vector<std::string> timestamps;

    std::size_t size() const { return values.size(); }
    void validate() const;
};

/// Logistic transition weight in (0,1); exactly 1/2 at y_prev == 0 and,
/// by convention, for gamma == 0.
double logistic_weight(double gamma, double y_prev);

/// Effective shock coefficient: convex combination of a1 and a2 at the
/// current logistic weight.
double shock_coefficient(const RegimeParams& params, double y_prev);

/// One step of the per-regime variance recursion. h_prev must be > 0.
double regime_variance_step(const RegimeParams& params, double y_prev, double h_prev);

/// Unique stationary distribution of an irreducible aperiodic chain.
std::vector<double> stationary_distribution(const TransitionMatrix& transition);

/**
 * Start-up variance of a regime: the symmetric-GARCH fixed point
 * a0 / (1 - (a1 + a2)/2 - b) when that denominator exceeds 0.05, else the
 * caller-supplied variance target, else 1.0.
 */
double initial_variance(const RegimeParams& params,
                        std::optional<double> variance_target = std::nullopt);

struct SimulationResult {
    ReturnSeries returns;
    std::vector<int> states;                    ///< zero-based regime indices
    std::vector<std::vector<double>> variances; ///< [regime][t], all K paths
};

/**
 * Simulates a return path of the given length. The first state is drawn
 * from the stationary distribution, innovations are iid standard normal
 * and independent of the chain, and `burn_in` initial steps are discarded
 * so the reported path is approximately stationary. Deterministic for a
 * fixed seed.
 */
SimulationResult simulate(const ModelSpec& spec, std::size_t length,
                          std::uint64_t rng_seed, std::size_t burn_in = 500,
                          std::optional<double> variance_target = std::nullopt);

}  // namespace msstgarch
