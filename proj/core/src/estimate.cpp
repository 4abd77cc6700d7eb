#include "ews/estimate.hpp"

#include "ews/errors.hpp"
#include "ews/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace ews {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

/// Data-driven center for the start cloud: match the sample mean, lag-1
/// autocorrelation and variance, and posit a plausible regime split.
SwarchParams base_guess(std::span<const double> returns) {
    const auto n = static_cast<double>(returns.size());
    double mean = 0.0;
    for (const double r : returns) mean += r;
    mean /= n;
    double var = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        const double d = returns[i] - mean;
        var += d * d;
        if (i > 0) cov += d * (returns[i - 1] - mean);
    }
    var /= n;
    const double rho = var > 0.0 ? std::clamp(cov / n / var, -0.9, 0.9) : 0.0;

    SwarchParams g;
    g.u = mean;
    g.theta1 = rho;
    g.alpha1 = 0.2;
    g.alpha0 = std::max(var * (1.0 - g.alpha1) / 2.0, 1e-6);  // split variance across regimes
    g.gamma2 = 3.0;
    g.p11 = 0.95;
    g.p22 = 0.90;
    return g;
}

}  // namespace

std::vector<double> params_to_raw(const SwarchParams& p) {
    return {p.u,
            std::log((1.0 + p.theta1) / (1.0 - p.theta1)),
            std::log(p.alpha0),
            std::log(std::max(p.alpha1, 1e-12)),
            std::log(std::max(p.gamma2 - 1.0, 1e-12)),
            logit(p.p11),
            logit(p.p22)};
}

SwarchParams raw_to_params(std::span<const double> raw) {
    if (raw.size() != 7) throw ValidationError("raw parameter vector must have 7 entries");
    SwarchParams p;
    p.u = raw[0];
    p.theta1 = 2.0 * logistic(raw[1]) - 1.0;
    p.alpha0 = std::exp(raw[2]);
    p.alpha1 = std::exp(raw[3]);
    p.gamma2 = 1.0 + std::exp(raw[4]);
    p.p11 = logistic(raw[5]);
    p.p22 = logistic(raw[6]);
    return p;
}

EstimationResult estimate_swarch(std::span<const double> returns,
                                 const EstimateOptions& options) {
    if (returns.size() < 3)
        throw ValidationError("estimate_swarch: need at least 3 returns");
    if (options.starts == 0)
        throw ValidationError("estimate_swarch: need at least one start");

    const auto negloglik = [&](std::span<const double> raw) -> double {
        try {
            const SwarchParams p = raw_to_params(raw);
            return -hamilton_filter(p, returns, options.filter).log_likelihood;
        } catch (const Error&) {
            return kInf;
        }
    };

    const SwarchParams center = base_guess(returns);
    Rng rng = make_rng(options.seed, "swarch-starts");

    EstimationResult result;
    result.log_likelihood = -kInf;
    std::size_t winner = options.starts;  // sentinel: no start succeeded yet
    std::vector<double> winner_raw;

    for (std::size_t s = 0; s < options.starts; ++s) {
        SwarchParams init;
        if (s == 0 && options.warm_start) {
            init = *options.warm_start;
        } else if (s == 0) {
            init = center;
        } else {
            // Perturb the center in raw space so every draw stays feasible.
            std::vector<double> raw = params_to_raw(center);
            raw[0] += 0.1 * std::sqrt(std::max(center.alpha0, 1e-12)) * rng.normal();
            raw[1] += 0.3 * rng.normal();
            raw[2] += 0.5 * rng.normal();
            raw[3] += 0.7 * rng.normal();
            raw[4] += 0.7 * rng.normal();
            raw[5] += 0.7 * rng.normal();
            raw[6] += 0.7 * rng.normal();
            init = raw_to_params(raw);
        }

        StartDiagnostic diag;
        diag.initial = init;
        diag.log_likelihood = -kInf;

        const std::vector<double> raw0 = params_to_raw(init);
        diag.initial_log_likelihood = -negloglik(raw0);
        if (std::isfinite(diag.initial_log_likelihood)) {
            const NelderMeadResult opt = nelder_mead(negloglik, raw0, options.optimizer);
            if (std::isfinite(opt.value)) {
                diag.log_likelihood = -opt.value;
                diag.converged = opt.converged;
                if (diag.log_likelihood > result.log_likelihood) {
                    result.log_likelihood = diag.log_likelihood;
                    result.converged = opt.converged;
                    winner = s;
                    winner_raw = opt.x;
                }
            }
        }
        result.starts.push_back(diag);
    }

    if (winner == options.starts) {
        std::string msg = "estimate_swarch: all " + std::to_string(options.starts) +
                          " starts failed; initial points:";
        for (const auto& d : result.starts)
            msg += " (gamma2=" + std::to_string(d.initial.gamma2) + ")";
        throw EstimationError(msg);
    }

    result.params = raw_to_params(winner_raw);
    result.filter = hamilton_filter(result.params, returns, options.filter);

    if (returns.size() < 100) result.notes += "short sample (< 100 returns); ";
    if (result.params.gamma2 - 1.0 < 0.05) {
        result.degenerate = true;
        result.notes += "gamma2 within 0.05 of 1 (regimes nearly identical); ";
    }
    for (const double p : {result.params.p11, result.params.p22})
        if (p < 1e-3 || p > 1.0 - 1e-3) {
            result.degenerate = true;
            result.notes += "stay probability at boundary; ";
            break;
        }
    if (!result.converged) result.notes += "optimizer hit iteration cap; ";
    return result;
}

EstimationResult estimate_swarch(const ReturnSeries& returns, const EstimateOptions& options) {
    return estimate_swarch(std::span<const double>(returns.values), options);
}

}  // namespace ews
