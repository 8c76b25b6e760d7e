#pragma once

#include <Eigen/Dense>

#include <optional>

#include "msstgarch/model.hpp"

namespace msstgarch {

/**
 * Second-moment stability verdict. The model is asymptotically stable in
 * variance when the spectral radius of the K^2 x K^2 transfer matrix is
 * below one, in which case `bound` carries an upper bound (in squared
 * return units) for the long-run second moment. `delta` is the logistic
 * saturation tolerance the verdict was computed at and `tail_threshold`
 * the return magnitude beyond which every smooth-transition weight is
 * within delta of its limit.
 */
struct StabilityReport {
    double spectral_radius = 0.0;
    bool is_stable = false;
    double delta = 0.0;
    double tail_threshold = 0.0;
    std::optional<double> bound;
};

/**
 * Smallest magnitude M such that |y| >= M keeps every asymmetric
 * smooth-transition weight within delta of its saturation limit:
 * max over regimes with gamma > 0 of log((1 - delta) / delta) / gamma.
 * Returns 0 when no regime combines gamma > 0 with a1 != a2, since the
 * saturation argument is then never needed. delta must lie in (0, 0.5).
 */
double tail_threshold(const ModelSpec& spec, double delta);

/**
 * The K^2 x K^2 nonnegative block matrix that propagates conditioned
 * second-moment bounds one step back in time. Block (row k, column j)
 * equals p(previous regime = j | current regime = k) * (u e_j' + v) with
 * u_m = min(a1_m, a2_m) + (delta + 1/2) |a2_m - a1_m| and v = diag(b).
 * The backward regime probabilities come from Bayes' rule on the
 * stationary chain.
 */
Eigen::MatrixXd second_moment_matrix(const ModelSpec& spec, double delta);

/**
 * Largest eigenvalue modulus of a square nonnegative matrix, by power
 * iteration from a deterministic strictly positive start vector. The
 * iteration runs on matrix + I so periodic structures converge too;
 * the shift is subtracted from the Rayleigh quotient. Convergence is
 * declared when successive Rayleigh quotients agree to 1e-12; failure to
 * converge within 1e5 iterations throws.
 */
double spectral_radius(const Eigen::MatrixXd& matrix);

/// Full verdict at the given saturation tolerance (default 1e-6, the
/// least conservative choice since the radius grows with delta).
StabilityReport stability_report(const ModelSpec& spec, double delta = 1e-6);

}  // namespace msstgarch
