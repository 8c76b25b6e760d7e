#include "msstgarch/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "msstgarch/rng.hpp"

namespace msstgarch {

namespace {

constexpr double kRowSumTolerance = 1e-12;

bool all_finite(const std::vector<double>& values) {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isfinite(v); });
}

}  // namespace

void RegimeParams::validate() const {
    if (!(a0 > 0.0) || !std::isfinite(a0)) {
        throw std::invalid_argument("regime intercept a0 must be positive and finite");
    }
    if (!(a1 >= 0.0) || !(a2 >= 0.0) || !(b >= 0.0)) {
        throw std::invalid_argument("regime coefficients a1, a2, b must be nonnegative");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("regime slope gamma must be nonnegative and finite");
    }
    if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(b)) {
        throw std::invalid_argument("regime coefficients must be finite");
    }
}

TransitionMatrix::TransitionMatrix(std::vector<std::vector<double>> rows)
    : k_(rows.size()) {
    if (k_ == 0) throw std::invalid_argument("transition matrix must have at least one row");
    entries_.reserve(k_ * k_);
    for (const auto& row : rows) {
        if (row.size() != k_) {
            throw std::invalid_argument("transition matrix must be square");
        }
        double sum = 0.0;
        for (double p : row) {
            if (!(p >= 0.0) || !(p <= 1.0)) {
                throw std::invalid_argument("transition probabilities must lie in [0, 1]");
            }
            sum += p;
            entries_.push_back(p);
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            throw std::invalid_argument("transition matrix rows must sum to one");
        }
    }
}

bool TransitionMatrix::is_primitive() const {
    // Raise P to the K-th power and require every entry positive.
    const std::size_t k = k_;
    std::vector<double> power(entries_);
    std::vector<double> next(k * k, 0.0);
    for (std::size_t step = 1; step < k; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t m = 0; m < k; ++m) {
                const double p = power[i * k + m];
                if (p == 0.0) continue;
                for (std::size_t j = 0; j < k; ++j) {
                    next[i * k + j] += p * entries_[m * k + j];
                }
            }
        }
        power.swap(next);
    }
    return std::all_of(power.begin(), power.end(), [](double p) { return p > 0.0; });
}

std::string variant_name(ModelVariant variant) {
    switch (variant) {
        case ModelVariant::Garch: return "garch";
        case ModelVariant::StGarch: return "stgarch";
        case ModelVariant::MsGarch: return "msgarch";
        case ModelVariant::MsStGarch: return "msstgarch";
    }
    return "unknown";
}

ModelVariant ModelSpec::variant() const {
    const bool symmetric = std::all_of(regimes.begin(), regimes.end(),
                                       [](const RegimeParams& r) { return r.gamma == 0.0; });
    if (regimes.size() == 1) {
        return symmetric ? ModelVariant::Garch : ModelVariant::StGarch;
    }
    return symmetric ? ModelVariant::MsGarch : ModelVariant::MsStGarch;
}

void ModelSpec::validate() const {
    if (regimes.empty()) throw std::invalid_argument("model needs at least one regime");
    if (transition.size() != regimes.size()) {
        throw std::invalid_argument("transition matrix dimension must match regime count");
    }
    for (const auto& regime : regimes) regime.validate();
}

ModelSpec ModelSpec::canonicalized() const {
    validate();
    const std::size_t k = regimes.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return regimes[a].a0 < regimes[b].a0;
    });

    ModelSpec out;
    out.regimes.reserve(k);
    std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        out.regimes.push_back(regimes[order[i]]);
        for (std::size_t j = 0; j < k; ++j) {
            rows[i][j] = transition(order[i], order[j]);
        }
    }
    out.transition = TransitionMatrix(rows);
    return out;
}

void ReturnSeries::validate() const {
    if (!all_finite(values)) {
        throw std::invalid_argument("return series must contain only finite values");
    }
    if (!timestamps.empty() && timestamps.size() != values.size()) {
        throw std::invalid_argument("timestamp count must match value count");
    }
}

double logistic_weight(double gamma, double y_prev) {
    return 1.0 / (1.0 + std::exp(-gamma * y_prev));
}

double shock_coefficient(const RegimeParams& params, double y_prev) {
    const double w = logistic_weight(params.gamma, y_prev);
    return params.a1 * (1.0 - w) + params.a2 * w;
}

double regime_variance_step(const RegimeParams& params, double y_prev, double h_prev) {
    if (!(h_prev > 0.0)) {
        throw std::invalid_argument("previous variance must be positive");
    }
    return params.a0 + y_prev * y_prev * shock_coefficient(params, y_prev) +
           params.b * h_prev;
}

std::vector<double> stationary_distribution(const TransitionMatrix& transition) {
    const std::size_t k = transition.size();
    if (k == 1) return {1.0};
    if (!transition.is_primitive()) {
        throw std::invalid_argument(
            "transition matrix has no unique stationary distribution (reducible or periodic chain)");
    }

    // Solve pi' P = pi' with the normalization sum(pi) = 1: replace the last
    // equation of (P' - I) pi = 0 by the all-ones row.
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            system(j, i) = transition(i, j) - (i == j ? 1.0 : 0.0);
        }
    }
    system.row(k - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    rhs(k - 1) = 1.0;
    Eigen::VectorXd pi = system.partialPivLu().solve(rhs);

    std::vector<double> out(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        out[i] = std::max(pi(i), 0.0);
        sum += out[i];
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw std::runtime_error("failed to solve for the stationary distribution");
    }
    for (double& p : out) p /= sum;
    return out;
}

double initial_variance(const RegimeParams& params, std::optional<double> variance_target) {
    const double denom = 1.0 - 0.5 * (params.a1 + params.a2) - params.b;
    if (denom > 0.05) return params.a0 / denom;
    if (variance_target) {
        if (!(*variance_target > 0.0)) {
            throw std::invalid_argument("variance target must be positive");
        }
        return *variance_target;
    }
    return 1.0;
}

SimulationResult simulate(const ModelSpec& spec, std::size_t length,
                          std::uint64_t rng_seed, std::size_t burn_in,
                          std::optional<double> variance_target) {
    spec.validate();
    if (length == 0) throw std::invalid_argument("simulation length must be at least one");

    const std::size_t k = spec.regime_count();
    const std::vector<double> pi = stationary_distribution(spec.transition);
    RngStream rng(rng_seed);

    std::vector<double> h(k);
    for (std::size_t j = 0; j < k; ++j) {
        h[j] = initial_variance(spec.regimes[j], variance_target);
    }

    SimulationResult result;
    result.returns.values.reserve(length);
    result.states.reserve(length);
    result.variances.assign(k, {});
    for (auto& path : result.variances) path.reserve(length);

    const std::size_t total = length + burn_in;
    int state = static_cast<int>(rng.categorical(pi));
    double y_prev = 0.0;
    for (std::size_t t = 0; t < total; ++t) {
        if (t > 0) {
            std::vector<double> row(k);
            for (std::size_t j = 0; j < k; ++j) {
                row[j] = spec.transition(static_cast<std::size_t>(state), j);
            }
            state = static_cast<int>(rng.categorical(row));
            for (std::size_t j = 0; j < k; ++j) {
                h[j] = regime_variance_step(spec.regimes[j], y_prev, h[j]);
            }
        }
        const double y = rng.normal() * std::sqrt(h[static_cast<std::size_t>(state)]);
        if (t >= burn_in) {
            result.returns.values.push_back(y);
            result.states.push_back(state);
            for (std::size_t j = 0; j < k; ++j) {
                result.variances[j].push_back(h[j]);
            }
        }
        y_prev = y;
    }
    return result;
}

}  // namespace msstgarch
