#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace msstgarch {

/**
 * Deterministic random stream used by every stochastic routine in the
 * library. Distributions are generated from raw 64-bit engine output
 * (never from std::*_distribution), so a seed produces the same draws on
 * every platform and standard library.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw on [0, 1).
    double uniform();

    /// Uniform draw on [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal draw (Box-Muller, second value cached).
    double normal();

    /// Gamma(shape, 1) draw, shape > 0 (Marsaglia-Tsang).
    double gamma(double shape);

    /// Beta(a, b) draw, a > 0, b > 0.
    double beta(double a, double b);

    /// Index draw from an unnormalized weight vector (inverse CDF).
    std::size_t categorical(std::span<const double> weights);

private:
    std::mt19937_64 engine_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace msstgarch
