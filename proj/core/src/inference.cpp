#include "msstgarch/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace msstgarch {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

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

void check_interval(const Interval& interval, const char* name, bool positive_lo) {
    if (!(interval.lo < interval.hi)) {
        throw std::invalid_argument(std::string("prior interval for ") + name +
                                    " must have lo < hi");
    }
    const double floor = positive_lo ? 0.0 : -0.0;
    if (interval.lo < floor) {
        throw std::invalid_argument(std::string("prior interval for ") + name +
                                    " must respect the parameter's sign constraint");
    }
}

/// Transition weights w[t] = logistic(gamma * y[t-1]) for t >= 1; w[0] unused.
std::vector<double> transition_weights(double gamma, const std::vector<double>& y) {
    std::vector<double> w(y.size(), 0.5);
    if (gamma == 0.0) return w;
    for (std::size_t t = 1; t < y.size(); ++t) {
        w[t] = logistic_weight(gamma, y[t - 1]);
    }
    return w;
}

std::vector<double> build_variance_path(const RegimeParams& params,
                                        const std::vector<double>& y,
                                        const std::vector<double>& ysq,
                                        double variance_target,
                                        const std::vector<double>* weights) {
    std::vector<double> h(y.size());
    if (y.empty()) return h;
    h[0] = initial_variance(params, variance_target);
    const double a0 = params.a0, a1 = params.a1, a2 = params.a2, b = params.b;
    const double gamma = params.gamma;
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double w = weights ? (*weights)[t] : logistic_weight(gamma, y[t - 1]);
        const double d = a1 + (a2 - a1) * w;
        h[t] = a0 + ysq[t - 1] * d + b * h[t - 1];
    }
    return h;
}

/// Log-likelihood contribution of one regime along its own variance path,
/// restricted to the times where the state path activates it. Returns
/// -inf instead of throwing when a candidate drives the path nonpositive.
double regime_conditional_loglik(const RegimeParams& params,
                                 const std::vector<double>& y,
                                 const std::vector<double>& ysq,
                                 const std::vector<int>& z, int regime,
                                 double variance_target,
                                 const std::vector<double>* weights) {
    const double a0 = params.a0, a1 = params.a1, a2 = params.a2, b = params.b;
    const double gamma = params.gamma;
    double h = initial_variance(params, variance_target);
    double acc = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (t > 0) {
            const double w = weights ? (*weights)[t] : logistic_weight(gamma, y[t - 1]);
            const double d = a1 + (a2 - a1) * w;
            h = a0 + ysq[t - 1] * d + b * h;
        }
        if (z[t] == regime) {
            if (!(h > 0.0)) return kNegInf;
            acc += -kLogSqrt2Pi - 0.5 * std::log(h) - 0.5 * ysq[t] / h;
        }
    }
    return acc;
}

/// The sequential residual-probability draw from a normalized vector.
std::size_t sequential_draw(const std::vector<double>& probs, RngStream& rng) {
    const std::size_t k = probs.size();
    double remaining = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (std::size_t j = 0; j + 1 < k; ++j) {
        if (!(remaining > 0.0)) return j;
        const double accept = probs[j] / remaining;
        if (rng.uniform() <= accept) return j;
        remaining -= probs[j];
    }
    return k - 1;
}

enum class Field { A0, A1, A2, B, Gamma };

struct FreeParameter {
    std::size_t regime;
    Field field;
    const char* suffix;
};

std::vector<FreeParameter> free_parameters(const PriorSpec& priors) {
    std::vector<FreeParameter> out;
    for (std::size_t j = 0; j < priors.regimes.size(); ++j) {
        out.push_back({j, Field::A0, "a0"});
        out.push_back({j, Field::A1, "a1"});
        if (!priors.regimes[j].gamma_fixed()) {
            out.push_back({j, Field::A2, "a2"});
        }
        out.push_back({j, Field::B, "b"});
        if (!priors.regimes[j].gamma_fixed()) {
            out.push_back({j, Field::Gamma, "gamma"});
        }
    }
    return out;
}

double& field_ref(RegimeParams& params, Field field) {
    switch (field) {
        case Field::A0: return params.a0;
        case Field::A1: return params.a1;
        case Field::A2: return params.a2;
        case Field::B: return params.b;
        case Field::Gamma: return params.gamma;
    }
    throw std::logic_error("unknown parameter field");
}

TransitionMatrix diagonal_transition(std::size_t k, double diag) {
    if (k == 1) return TransitionMatrix(std::vector<std::vector<double>>{{1.0}});
    return TransitionMatrix({{diag, 1.0 - diag}, {1.0 - diag, diag}});
}

}  // namespace

PriorSpec PriorSpec::defaults(std::size_t k, bool smooth_transition) {
    PriorSpec spec;
    spec.regimes.assign(k, RegimePriors{});
    if (!smooth_transition) {
        for (auto& regime : spec.regimes) regime.gamma = Interval{0.0, 0.0};
    }
    spec.eta_beta.assign(k, {8.0, 2.0});
    return spec;
}

void PriorSpec::validate(std::size_t k) const {
    if (regimes.size() != k) {
        throw std::invalid_argument("prior spec must cover every regime");
    }
    if (k >= 2 && eta_beta.size() != k) {
        throw std::invalid_argument("prior spec needs beta hyperparameters per regime");
    }
    bool any_fixed = false, any_free = false;
    for (const auto& regime : regimes) {
        check_interval(regime.a0, "a0", true);
        if (!(regime.a0.lo > 0.0)) {
            throw std::invalid_argument("prior interval for a0 must have a positive lower bound");
        }
        check_interval(regime.a1, "a1", true);
        check_interval(regime.a2, "a2", true);
        check_interval(regime.b, "b", true);
        if (regime.gamma_fixed()) {
            any_fixed = true;
        } else {
            any_free = true;
            check_interval(regime.gamma, "gamma", true);
            if (!(regime.gamma.lo > 0.0)) {
                throw std::invalid_argument(
                    "prior interval for gamma must have a positive lower bound");
            }
        }
    }
    if (any_fixed && any_free) {
        throw std::invalid_argument(
            "regimes must either all fix gamma or all sample it (mixed layouts are not supported)");
    }
    for (const auto& hyper : eta_beta) {
        if (!(hyper[0] > 0.0) || !(hyper[1] > 0.0)) {
            throw std::invalid_argument("beta hyperparameters must be positive");
        }
    }
}

void McmcConfig::validate() const {
    if (burn_in >= iterations) {
        throw std::invalid_argument("burn-in must be smaller than the iteration count");
    }
    if (grid_size < 3) throw std::invalid_argument("grid size must be at least 3");
    if (thinning < 1) throw std::invalid_argument("thinning must be at least 1");
    if ((iterations - burn_in) % thinning != 0) {
        throw std::invalid_argument("thinning must divide the retained sweep count");
    }
}

std::vector<double> regime_variance_path(const RegimeParams& params,
                                         const std::vector<double>& data,
                                         std::optional<double> variance_target) {
    std::vector<double> ysq(data.size());
    for (std::size_t t = 0; t < data.size(); ++t) ysq[t] = data[t] * data[t];
    return build_variance_path(params, data, ysq,
                               variance_target ? *variance_target : 1.0, nullptr);
}

double conditional_likelihood(const std::vector<RegimeParams>& theta,
                              const std::vector<int>& z, const ReturnSeries& data,
                              std::optional<double> variance_target) {
    data.validate();
    if (z.size() != data.size()) {
        throw std::invalid_argument("state path length must match the data");
    }
    const double target = variance_target ? *variance_target : sample_variance(data.values);
    const std::size_t k = theta.size();
    std::vector<std::vector<double>> h(k);
    for (std::size_t j = 0; j < k; ++j) {
        h[j] = regime_variance_path(theta[j], data.values, target);
    }
    double acc = 0.0;
    for (std::size_t t = 0; t < data.size(); ++t) {
        const int zt = z[t];
        if (zt < 0 || static_cast<std::size_t>(zt) >= k) {
            throw std::invalid_argument("state path contains an out-of-range regime");
        }
        const double variance = h[static_cast<std::size_t>(zt)][t];
        if (!(variance > 0.0)) {
            throw std::runtime_error("conditional variance is nonpositive");
        }
        acc += log_normal_density(data.values[t], variance);
    }
    return acc;
}

std::vector<int> sample_states(const GibbsState& state, const ReturnSeries& data,
                               RngStream& rng) {
    const std::size_t t_count = data.size();
    const std::size_t k = state.theta.size();
    if (k == 1) return std::vector<int>(t_count, 0);
    if (state.h.size() != k) {
        throw std::invalid_argument("cached variance paths must cover every regime");
    }

    const std::vector<double> pi = stationary_distribution(state.eta);
    std::vector<std::vector<double>> filtered(t_count, std::vector<double>(k, 0.0));
    std::vector<double> predicted = pi;
    std::vector<double> log_density(k);
    for (std::size_t t = 0; t < t_count; ++t) {
        double max_term = kNegInf;
        for (std::size_t j = 0; j < k; ++j) {
            log_density[j] = log_normal_density(data.values[t], state.h[j][t]);
            max_term = std::max(max_term, log_density[j]);
        }
        if (!std::isfinite(max_term)) {
            throw std::runtime_error("state filter degenerated: all densities vanished at step " +
                                     std::to_string(t));
        }
        double norm = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            filtered[t][j] = predicted[j] * std::exp(log_density[j] - max_term);
            norm += filtered[t][j];
        }
        if (!(norm > 0.0)) {
            throw std::runtime_error("state filter degenerated to zero mass at step " +
                                     std::to_string(t));
        }
        for (std::size_t j = 0; j < k; ++j) filtered[t][j] /= norm;
        if (t + 1 < t_count) {
            for (std::size_t j = 0; j < k; ++j) {
                double sum = 0.0;
                for (std::size_t m = 0; m < k; ++m) {
                    sum += filtered[t][m] * state.eta(m, j);
                }
                predicted[j] = sum;
            }
        }
    }

    std::vector<int> z(t_count, 0);
    z[t_count - 1] = static_cast<int>(sequential_draw(filtered[t_count - 1], rng));
    std::vector<double> probs(k);
    for (std::size_t t = t_count - 1; t-- > 0;) {
        const auto next = static_cast<std::size_t>(z[t + 1]);
        double norm = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            probs[j] = filtered[t][j] * state.eta(j, next);
            norm += probs[j];
        }
        if (!(norm > 0.0)) {
            throw std::runtime_error("backward pass degenerated to zero mass at step " +
                                     std::to_string(t));
        }
        for (std::size_t j = 0; j < k; ++j) probs[j] /= norm;
        z[t] = static_cast<int>(sequential_draw(probs, rng));
    }
    return z;
}

TransitionMatrix sample_transitions(const std::vector<int>& z, const PriorSpec& priors,
                                    RngStream& rng) {
    const std::size_t k = priors.regimes.size();
    if (k == 1) return TransitionMatrix(std::vector<std::vector<double>>{{1.0}});
    if (k != 2) {
        throw std::invalid_argument("transition sampling is specified for two regimes");
    }
    std::size_t counts[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t t = 0; t + 1 < z.size(); ++t) {
        counts[static_cast<std::size_t>(z[t])][static_cast<std::size_t>(z[t + 1])] += 1;
    }
    const double eta11 = rng.beta(priors.eta_beta[0][0] + static_cast<double>(counts[0][0]),
                                  priors.eta_beta[0][1] + static_cast<double>(counts[0][1]));
    const double eta22 = rng.beta(priors.eta_beta[1][0] + static_cast<double>(counts[1][1]),
                                  priors.eta_beta[1][1] + static_cast<double>(counts[1][0]));
    const auto clamp = [](double p) { return std::clamp(p, 1e-12, 1.0 - 1e-12); };
    const double p11 = clamp(eta11);
    const double p22 = clamp(eta22);
    return TransitionMatrix({{p11, 1.0 - p11}, {1.0 - p22, p22}});
}

double griddy_gibbs_draw(const std::function<double(double)>& log_kernel,
                         Interval interval, std::size_t grid_size, RngStream& rng) {
    if (grid_size < 3) throw std::invalid_argument("griddy draw needs at least three grid points");
    if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) ||
        !std::isfinite(interval.hi)) {
        throw std::invalid_argument("griddy draw needs a finite interval with lo < hi");
    }

    const std::size_t g = grid_size;
    const double dx = interval.width() / static_cast<double>(g - 1);
    std::vector<double> xs(g), logs(g);
    double max_log = kNegInf;
    for (std::size_t i = 0; i < g; ++i) {
        xs[i] = (i + 1 == g) ? interval.hi : interval.lo + dx * static_cast<double>(i);
        logs[i] = log_kernel(xs[i]);
        if (std::isnan(logs[i])) {
            throw std::invalid_argument("log kernel returned NaN on the grid");
        }
        max_log = std::max(max_log, logs[i]);
    }
    if (!std::isfinite(max_log)) {
        throw std::runtime_error("log kernel vanished on the entire grid");
    }

    std::vector<double> cumulative(g, 0.0);
    double prev = std::exp(logs[0] - max_log);
    for (std::size_t i = 1; i < g; ++i) {
        const double cur = std::exp(logs[i] - max_log);
        cumulative[i] = cumulative[i - 1] + 0.5 * (prev + cur) * dx;
        prev = cur;
    }
    const double total = cumulative[g - 1];
    if (!(total > 0.0)) {
        throw std::runtime_error("grid integral of the kernel is zero");
    }

    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t hi_idx = it == cumulative.end()
                             ? g - 1
                             : static_cast<std::size_t>(it - cumulative.begin());
    if (hi_idx == 0) hi_idx = 1;
    const std::size_t lo_idx = hi_idx - 1;
    const double segment = cumulative[hi_idx] - cumulative[lo_idx];
    double x = segment > 0.0
                   ? xs[lo_idx] + (u - cumulative[lo_idx]) / segment * dx
                   : xs[lo_idx];
    return std::clamp(x, interval.lo, interval.hi);
}

void sample_theta(GibbsState& state, const ReturnSeries& data, const PriorSpec& priors,
                  std::size_t grid_size, RngStream& rng) {
    const std::size_t k = state.theta.size();
    priors.validate(k);
    const std::vector<double>& y = data.values;
    std::vector<double> ysq(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) ysq[t] = y[t] * y[t];

    for (std::size_t j = 0; j < k; ++j) {
        const RegimePriors& regime_priors = priors.regimes[j];
        const int regime = static_cast<int>(j);
        std::vector<double> weights = transition_weights(state.theta[j].gamma, y);

        const auto draw_field = [&](Field field, const char* name, Interval interval,
                                    bool fresh_weights) {
            if (!(interval.width() > 0.0)) {
                field_ref(state.theta[j], field) = interval.lo;
            } else {
                const auto kernel = [&](double x) {
                    RegimeParams candidate = state.theta[j];
                    field_ref(candidate, field) = x;
                    return regime_conditional_loglik(candidate, y, ysq, state.z, regime,
                                                     state.variance_target,
                                                     fresh_weights ? nullptr : &weights);
                };
                double drawn;
                try {
                    drawn = griddy_gibbs_draw(kernel, interval, grid_size, rng);
                } catch (const std::exception& err) {
                    throw std::runtime_error("griddy draw failed for " + std::string(name) +
                                             "_" + std::to_string(j + 1) + ": " + err.what());
                }
                field_ref(state.theta[j], field) = drawn;
            }
            if (field == Field::Gamma) {
                weights = transition_weights(state.theta[j].gamma, y);
            }
            state.h[j] = build_variance_path(state.theta[j], y, ysq, state.variance_target,
                                             &weights);
        };

        draw_field(Field::A0, "a0", regime_priors.a0, false);
        draw_field(Field::A1, "a1", regime_priors.a1, false);
        if (regime_priors.gamma_fixed()) {
            state.theta[j].a2 = state.theta[j].a1;
            state.theta[j].gamma = 0.0;
            state.h[j] = build_variance_path(state.theta[j], y, ysq, state.variance_target,
                                             &weights);
        } else {
            Interval a2_interval = regime_priors.a2;
            if (priors.leverage_constraint) {
                a2_interval.hi = std::min(a2_interval.hi, state.theta[j].a1);
                a2_interval.hi = std::max(a2_interval.hi, a2_interval.lo);
            }
            draw_field(Field::A2, "a2", a2_interval, false);
        }
        draw_field(Field::B, "b", regime_priors.b, false);
        if (!regime_priors.gamma_fixed()) {
            draw_field(Field::Gamma, "gamma", regime_priors.gamma, true);
        }
    }
}

PosteriorDraws run_gibbs(const ReturnSeries& data, const PriorSpec& priors,
                         const McmcConfig& config, std::size_t k) {
    data.validate();
    if (data.size() < 50) {
        throw std::invalid_argument("estimation needs at least 50 observations");
    }
    if (k < 1 || k > 2) {
        throw std::invalid_argument("the sampler supports one or two regimes");
    }
    priors.validate(k);
    config.validate();

    GibbsState state;
    state.variance_target = sample_variance(data.values);
    state.theta.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const RegimePriors& rp = priors.regimes[j];
        state.theta[j].a0 = rp.a0.midpoint();
        state.theta[j].a1 = rp.a1.midpoint();
        if (rp.gamma_fixed()) {
            state.theta[j].a2 = state.theta[j].a1;
            state.theta[j].gamma = 0.0;
        } else {
            state.theta[j].a2 = rp.a2.midpoint();
            state.theta[j].gamma = rp.gamma.midpoint();
        }
        state.theta[j].b = rp.b.midpoint();
    }
    state.eta = diagonal_transition(k, 0.9);
    state.h.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        state.h[j] = regime_variance_path(state.theta[j], data.values, state.variance_target);
    }

    RngStream rng(config.seed);
    state.z = sample_states(state, data, rng);

    PosteriorDraws draws;
    draws.regime_count = k;
    draws.variance_target = state.variance_target;
    draws.gamma_fixed.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        draws.gamma_fixed[j] = priors.regimes[j].gamma_fixed();
    }
    const auto layout = free_parameters(priors);
    for (const auto& param : layout) {
        draws.parameter_names.push_back(std::string(param.suffix) + "_" +
                                        std::to_string(param.regime + 1));
    }
    if (k == 2) {
        draws.parameter_names.push_back("eta_11");
        draws.parameter_names.push_back("eta_22");
    }
    draws.draws.reserve(config.retained());
    draws.conditional_log_likelihood.reserve(config.retained());

    std::vector<std::vector<double>> occupancy(data.size(), std::vector<double>(k, 0.0));
    std::size_t error_count = 0;

    for (std::size_t sweep = 0; sweep < config.iterations; ++sweep) {
        try {
            if (k == 2) {
                state.z = sample_states(state, data, rng);
                state.eta = sample_transitions(state.z, priors, rng);
            } else if (sweep == 0) {
                state.z.assign(data.size(), 0);
            }
            sample_theta(state, data, priors, config.grid_size, rng);
        } catch (const std::exception& err) {
            ++error_count;
            if (error_count * 100 > config.iterations) {
                throw std::runtime_error(
                    "sampler aborted: more than 1% of sweeps failed; last error: " +
                    std::string(err.what()));
            }
            continue;
        }

        if (sweep < config.burn_in) continue;
        if ((sweep - config.burn_in) % config.thinning != 0) continue;

        std::vector<RegimeParams> theta = state.theta;
        TransitionMatrix eta = state.eta;
        std::vector<int> z = state.z;
        bool swapped = false;
        if (k == 2 && theta[0].a0 > theta[1].a0) {
            std::swap(theta[0], theta[1]);
            eta = TransitionMatrix({{state.eta(1, 1), state.eta(1, 0)},
                                    {state.eta(0, 1), state.eta(0, 0)}});
            for (int& value : z) value = 1 - value;
            swapped = true;
        }
        if (swapped) ++draws.relabel_count;

        std::vector<double> row;
        row.reserve(draws.parameter_names.size());
        for (const auto& param : layout) {
            RegimeParams& regime = theta[param.regime];
            row.push_back(field_ref(regime, param.field));
        }
        if (k == 2) {
            row.push_back(eta(0, 0));
            row.push_back(eta(1, 1));
        }
        draws.draws.push_back(std::move(row));

        double ll = 0.0;
        for (std::size_t t = 0; t < data.size(); ++t) {
            const auto zt = static_cast<std::size_t>(state.z[t]);
            ll += log_normal_density(data.values[t], state.h[zt][t]);
            occupancy[t][static_cast<std::size_t>(z[t])] += 1.0;
        }
        draws.conditional_log_likelihood.push_back(ll);
    }

    if (draws.rows() == 0) {
        throw std::runtime_error("sampler retained no draws");
    }
    draws.state_frequencies.assign(data.size(), std::vector<double>(k, 0.0));
    const double rows = static_cast<double>(draws.rows());
    for (std::size_t t = 0; t < data.size(); ++t) {
        for (std::size_t j = 0; j < k; ++j) {
            draws.state_frequencies[t][j] = occupancy[t][j] / rows;
        }
    }
    return draws;
}

PosteriorSummary posterior_summary(const PosteriorDraws& draws) {
    if (draws.rows() == 0) throw std::invalid_argument("posterior summary needs draws");
    const std::size_t cols = draws.parameter_names.size();
    const double n = static_cast<double>(draws.rows());

    PosteriorSummary summary;
    summary.relabel_rate = static_cast<double>(draws.relabel_count) / n;
    summary.parameters.reserve(cols);
    std::vector<double> column(draws.rows());
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < draws.rows(); ++r) column[r] = draws.draws[r][c];
        ParameterSummary ps;
        ps.name = draws.parameter_names[c];
        ps.mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : column) ss += (v - ps.mean) * (v - ps.mean);
        ps.sd = draws.rows() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        std::sort(column.begin(), column.end());
        const auto quantile = [&](double p) {
            const double pos = p * (n - 1.0);
            const auto lo = static_cast<std::size_t>(pos);
            if (lo + 1 >= column.size()) return column.back();
            const double frac = pos - static_cast<double>(lo);
            return column[lo] * (1.0 - frac) + column[lo + 1] * frac;
        };
        ps.q05 = quantile(0.05);
        ps.q50 = quantile(0.50);
        ps.q95 = quantile(0.95);
        summary.parameters.push_back(ps);
    }
    return summary;
}

namespace {

ModelSpec spec_from_values(const PosteriorDraws& draws, const std::vector<double>& row) {
    ModelSpec spec;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < draws.regime_count; ++j) {
        RegimeParams params;
        params.a0 = row.at(idx++);
        params.a1 = row.at(idx++);
        if (draws.gamma_fixed[j]) {
            params.a2 = params.a1;
        } else {
            params.a2 = row.at(idx++);
        }
        params.b = row.at(idx++);
        params.gamma = draws.gamma_fixed[j] ? 0.0 : row.at(idx++);
        spec.regimes.push_back(params);
    }
    if (draws.regime_count == 2) {
        const double eta11 = row.at(idx++);
        const double eta22 = row.at(idx++);
        spec.transition = TransitionMatrix({{eta11, 1.0 - eta11}, {1.0 - eta22, eta22}});
    } else {
        spec.transition = TransitionMatrix(std::vector<std::vector<double>>{{1.0}});
    }
    spec.validate();
    return spec;
}

}  // namespace

ModelSpec spec_from_draw(const PosteriorDraws& draws, std::size_t row) {
    if (row >= draws.rows()) throw std::invalid_argument("draw row out of range");
    return spec_from_values(draws, draws.draws[row]);
}

ModelSpec posterior_mean_spec(const PosteriorDraws& draws) {
    if (draws.rows() == 0) throw std::invalid_argument("posterior mean needs draws");
    std::vector<double> means(draws.parameter_names.size(), 0.0);
    for (const auto& row : draws.draws) {
        for (std::size_t c = 0; c < means.size(); ++c) means[c] += row[c];
    }
    for (double& m : means) m /= static_cast<double>(draws.rows());
    return spec_from_values(draws, means);
}

}  // namespace msstgarch
