#include "msstgarch/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msstgarch {

double RngStream::uniform() {
    // 53 random mantissa bits -> [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // Box-Muller on (0,1] x [0,1).
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(angle);
    has_cached_normal_ = true;
    return r * std::cos(angle);
}

double RngStream::gamma(double shape) {
    if (!(shape > 0.0)) {
        throw std::invalid_argument("gamma shape must be positive");
    }
    if (shape < 1.0) {
        // Boost the shape above one, then scale back.
        const double u = 1.0 - uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = 1.0 - uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
}

std::size_t RngStream::categorical(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("categorical draw needs at least one weight");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("categorical weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("categorical weights sum to zero");
    const double target = uniform() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cum += weights[i];
        if (target < cum) return i;
    }
    return weights.size() - 1;
}

}  // namespace msstgarch
