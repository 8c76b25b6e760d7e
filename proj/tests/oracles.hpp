// Independent reference implementations used only by tests. Everything in
// here deliberately avoids the library's own code paths: recursions,
// densities and eigenvalues are recomputed from scratch so the main
// implementation is checked against genuinely separate arithmetic.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "msstgarch/model.hpp"

namespace oracles {

constexpr double kLogSqrt2Pi = 0.9189385332046727;

inline double log_normal_density(double y, double variance) {
    return -kLogSqrt2Pi - 0.5 * std::log(variance) - 0.5 * y * y / variance;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double sample_variance(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / (n - 1.0);
}

/// Start-up variance rule, restated independently.
inline double ref_initial_variance(const msstgarch::RegimeParams& p, double target) {
    const double denom = 1.0 - 0.5 * (p.a1 + p.a2) - p.b;
    if (denom > 0.05) return p.a0 / denom;
    return target;
}

/// Smooth-transition variance recursion, restated independently.
inline std::vector<double> ref_variance_path(const msstgarch::RegimeParams& p,
                                             const std::vector<double>& y,
                                             double target) {
    std::vector<double> h(y.size());
    if (y.empty()) return h;
    h[0] = ref_initial_variance(p, target);
    for (std::size_t t = 1; t < y.size(); ++t) {
        double w = 0.5;
        if (p.gamma != 0.0) w = 1.0 / (1.0 + std::exp(-p.gamma * y[t - 1]));
        const double d = p.a1 * (1.0 - w) + p.a2 * w;
        h[t] = p.a0 + y[t - 1] * y[t - 1] * d + p.b * h[t - 1];
    }
    return h;
}

/// Textbook Gaussian GARCH(1,1) log-likelihood with the same start-up rule.
inline double ref_garch_loglik(double a0, double arch, double b,
                               const std::vector<double>& y, double target) {
    msstgarch::RegimeParams p;
    p.a0 = a0; p.a1 = arch; p.a2 = arch; p.b = b; p.gamma = 0.0;
    const std::vector<double> h = ref_variance_path(p, y, target);
    double ll = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) ll += log_normal_density(y[t], h[t]);
    return ll;
}

/// Exhaustive path-sum results for a K-regime model on a short series.
struct Enumeration {
    std::vector<std::vector<double>> predicted_alpha;  ///< [t][j], t = 0..T
    double log_likelihood = 0.0;
    std::vector<double> path_posterior;                ///< over all K^T paths
    std::vector<std::vector<double>> smoothed;         ///< [t][j]
    std::size_t regime_count = 0;
};

inline Enumeration enumerate_paths(const msstgarch::ModelSpec& spec,
                                   const std::vector<double>& y, double target) {
    const std::size_t k = spec.regime_count();
    const std::size_t t_count = y.size();
    if (t_count > 20) throw std::invalid_argument("enumeration oracle is for short series");
    const std::vector<double> pi = msstgarch::stationary_distribution(spec.transition);

    std::vector<std::vector<double>> h(k);
    for (std::size_t j = 0; j < k; ++j) h[j] = ref_variance_path(spec.regimes[j], y, target);

    std::size_t path_count = 1;
    for (std::size_t t = 0; t < t_count; ++t) path_count *= k;

    Enumeration out;
    out.regime_count = k;
    out.predicted_alpha.assign(t_count + 1, std::vector<double>(k, 0.0));
    out.path_posterior.assign(path_count, 0.0);
    out.smoothed.assign(t_count, std::vector<double>(k, 0.0));

    // Predicted regime probabilities before each observation: sum over all
    // prefixes (z_0..z_t) of prior mass times the densities of y_0..y_{t-1}.
    for (std::size_t t = 0; t <= t_count; ++t) {
        std::size_t prefixes = 1;
        for (std::size_t s = 0; s <= t && t > 0; ++s) prefixes *= k;
        if (t == 0) prefixes = k;
        std::vector<double> numer(k, 0.0);
        for (std::size_t code = 0; code < prefixes; ++code) {
            std::size_t rest = code;
            std::vector<std::size_t> z(t + 1);
            for (std::size_t s = 0; s <= t; ++s) { z[s] = rest % k; rest /= k; }
            double mass = pi[z[0]];
            for (std::size_t s = 0; s + 1 <= t; ++s) mass *= spec.transition(z[s], z[s + 1]);
            for (std::size_t s = 0; s < t; ++s) {
                mass *= std::exp(log_normal_density(y[s], h[z[s]][s]));
            }
            numer[z[t]] += mass;
        }
        const double total = std::accumulate(numer.begin(), numer.end(), 0.0);
        for (std::size_t j = 0; j < k; ++j) out.predicted_alpha[t][j] = numer[j] / total;
    }

    // Joint posterior over full paths and the total data likelihood.
    double likelihood = 0.0;
    for (std::size_t code = 0; code < path_count; ++code) {
        std::size_t rest = code;
        std::vector<std::size_t> z(t_count);
        for (std::size_t s = 0; s < t_count; ++s) { z[s] = rest % k; rest /= k; }
        double mass = pi[z[0]];
        for (std::size_t s = 0; s + 1 < t_count; ++s) mass *= spec.transition(z[s], z[s + 1]);
        for (std::size_t s = 0; s < t_count; ++s) {
            mass *= std::exp(log_normal_density(y[s], h[z[s]][s]));
        }
        out.path_posterior[code] = mass;
        likelihood += mass;
    }
    out.log_likelihood = std::log(likelihood);
    for (std::size_t code = 0; code < path_count; ++code) {
        out.path_posterior[code] /= likelihood;
        std::size_t rest = code;
        for (std::size_t s = 0; s < t_count; ++s) {
            out.smoothed[s][rest % k] += out.path_posterior[code];
            rest /= k;
        }
    }
    return out;
}

/// Composite Simpson integral on [lo, hi].
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t intervals) {
    if (intervals % 2 == 1) ++intervals;
    const double step = (hi - lo) / static_cast<double>(intervals);
    double acc = f(lo) + f(hi);
    for (std::size_t i = 1; i < intervals; ++i) {
        acc += f(lo + step * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * step / 3.0;
}

/// Characteristic polynomial by the Faddeev-LeVerrier recurrence, roots by
/// Durand-Kerner, largest modulus returned.
inline double charpoly_spectral_radius(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    std::vector<double> coeffs(n + 1, 0.0);
    coeffs[0] = 1.0;
    for (std::size_t step = 1; step <= n; ++step) {
        // m <- a * m + c_{step-1} I, then c_step = -trace(a * m_prev...) / step
        std::vector<std::vector<double>> am(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < n; ++l) {
                for (std::size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * m[l][j];
            }
        }
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
        coeffs[step] = -trace / static_cast<double>(step);
        m = am;
        for (std::size_t i = 0; i < n; ++i) m[i][i] += coeffs[step];
    }

    using Complex = std::complex<double>;
    std::vector<Complex> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        roots[i] = std::pow(Complex(0.4, 0.9), static_cast<double>(i));
    }
    const auto eval = [&](Complex x) {
        Complex value = coeffs[0];
        for (std::size_t i = 1; i <= n; ++i) value = value * x + coeffs[i];
        return value;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex denom(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) denom *= roots[i] - roots[j];
            }
            const Complex delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14) break;
    }
    double radius = 0.0;
    for (const auto& root : roots) radius = std::max(radius, std::abs(root));
    return radius;
}

/// One-sample Kolmogorov-Smirnov statistic against Uniform(0, 1).
inline double ks_statistic_uniform(std::vector<double> draws) {
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - draws[i];
        const double lo = draws[i] - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

/// Nelder-Mead minimizer, good enough for a three-parameter MLE oracle.
inline std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> start, double step,
                                       int max_iter = 4000) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> sorted;
        std::vector<double> sorted_values;
        for (std::size_t idx : order) {
            sorted.push_back(simplex[idx]);
            sorted_values.push_back(values[idx]);
        }
        simplex = sorted;
        values = sorted_values;
        if (std::abs(values[n] - values[0]) < 1e-12) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto blend = [&](double t) {
            std::vector<double> point(n);
            for (std::size_t j = 0; j < n; ++j) {
                point[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
            }
            return point;
        };
        const std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < values[0]) {
            const std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe < fr) { simplex[n] = expanded; values[n] = fe; }
            else { simplex[n] = reflected; values[n] = fr; }
        } else if (fr < values[n - 1]) {
            simplex[n] = reflected; values[n] = fr;
        } else {
            const std::vector<double> contracted = blend(0.5);
            const double fc = f(contracted);
            if (fc < values[n]) {
                simplex[n] = contracted; values[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    }
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    return simplex[0];
}

/// The two-regime parameterization the simulation studies run on.
inline msstgarch::ModelSpec reference_spec() {
    msstgarch::ModelSpec spec;
    spec.regimes = {{0.3, 0.2, 0.05, 0.5, 1.5}, {1.9, 0.7, 0.1, 0.25, 0.5}};
    spec.transition = msstgarch::TransitionMatrix({{0.97, 0.03}, {0.15, 0.85}});
    return spec;
}

}  // namespace oracles
