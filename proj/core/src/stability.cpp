#include "msstgarch/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msstgarch {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0) || !(delta < 0.5)) {
        throw std::invalid_argument("delta must lie in (0, 0.5)");
    }
}

/// Worst-case shock coefficient of a regime once its weight has
/// saturated to within delta: the exact coefficient is a convex
/// combination of a1 and a2, so anchoring at the smaller of the two keeps
/// the bound valid on both tails.
double saturated_shock_coefficient(const RegimeParams& regime, double delta) {
    return std::min(regime.a1, regime.a2) +
           (delta + 0.5) * std::abs(regime.a2 - regime.a1);
}

}  // namespace

double tail_threshold(const ModelSpec& spec, double delta) {
    spec.validate();
    check_delta(delta);
    bool any_asymmetric_transition = false;
    double threshold = 0.0;
    for (const auto& regime : spec.regimes) {
        if (regime.gamma > 0.0) {
            if (std::abs(regime.a2 - regime.a1) > 0.0) any_asymmetric_transition = true;
            threshold = std::max(threshold, std::log((1.0 - delta) / delta) / regime.gamma);
        }
    }
    return any_asymmetric_transition ? threshold : 0.0;
}

Eigen::MatrixXd second_moment_matrix(const ModelSpec& spec, double delta) {
    spec.validate();
    check_delta(delta);
    const std::size_t k = spec.regime_count();
    const std::vector<double> pi = stationary_distribution(spec.transition);
    for (double p : pi) {
        if (!(p > 0.0)) {
            throw std::invalid_argument("stationary distribution must be strictly positive");
        }
    }

    Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(k * k, k * k);
    for (std::size_t kk = 0; kk < k; ++kk) {      // block row: current regime
        for (std::size_t jj = 0; jj < k; ++jj) {  // block column: previous regime
            const double backward = pi[jj] * spec.transition(jj, kk) / pi[kk];
            for (std::size_t m = 0; m < k; ++m) {
                const double u_m = saturated_shock_coefficient(spec.regimes[m], delta);
                for (std::size_t n = 0; n < k; ++n) {
                    double entry = (n == jj) ? u_m : 0.0;
                    if (m == n) entry += spec.regimes[m].b;
                    matrix(kk * k + m, jj * k + n) = backward * entry;
                }
            }
        }
    }
    return matrix;
}

double spectral_radius(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
        throw std::invalid_argument("spectral radius needs a nonempty square matrix");
    }
    if ((matrix.array() < 0.0).any()) {
        throw std::invalid_argument("spectral radius is only computed for nonnegative matrices");
    }
    const Eigen::Index n = matrix.rows();
    // The unit shift keeps the dominant eigenvalue unique for periodic
    // nonnegative structures without moving the Perron root.
    const Eigen::MatrixXd shifted = matrix + Eigen::MatrixXd::Identity(n, n);

    Eigen::VectorXd vec = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double rayleigh = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        const Eigen::VectorXd next = shifted * vec;
        const double norm = next.norm();
        if (!(norm > 0.0)) return 0.0;
        const double updated = vec.dot(next);
        vec = next / norm;
        if (iter > 0 && std::abs(updated - rayleigh) <= 1e-12 * std::max(1.0, std::abs(updated))) {
            return updated - 1.0;
        }
        rayleigh = updated;
    }
    throw std::runtime_error("power iteration did not converge within 1e5 iterations");
}

StabilityReport stability_report(const ModelSpec& spec, double delta) {
    const std::size_t k = spec.regime_count();
    StabilityReport report;
    report.delta = delta;
    report.tail_threshold = tail_threshold(spec, delta);

    const Eigen::MatrixXd matrix = second_moment_matrix(spec, delta);
    report.spectral_radius = spectral_radius(matrix);
    report.is_stable = report.spectral_radius < 1.0;
    if (!report.is_stable) return report;

    // Per-regime moment offsets, stacked K times to match the K^2 layout.
    const double m2 = report.tail_threshold * report.tail_threshold;
    Eigen::VectorXd offsets(k * k);
    for (std::size_t kk = 0; kk < k; ++kk) {
        for (std::size_t m = 0; m < k; ++m) {
            const auto& regime = spec.regimes[m];
            offsets(kk * k + m) = regime.a0 + std::abs(regime.a2 - regime.a1) * m2;
        }
    }

    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(k * k, k * k) - matrix;
    const Eigen::VectorXd solution = system.partialPivLu().solve(offsets);
    if (!solution.allFinite()) {
        report.is_stable = false;
        report.bound.reset();
        return report;
    }

    const std::vector<double> pi = stationary_distribution(spec.transition);
    double bound = 0.0;
    for (std::size_t kk = 0; kk < k; ++kk) {
        bound += pi[kk] * solution(kk * k + kk);
    }
    report.bound = bound;
    return report;
}

}  // namespace msstgarch
