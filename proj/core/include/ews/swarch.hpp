#pragma once

#include "ews/data.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ews {

/// AR(1) mean equation with a two-regime switching ARCH(1) variance:
///   y_t = u + theta1*y_{t-1} + e_t,
///   h_t^2 = gamma_{s_t} * (alpha0 + alpha1 * e_{t-1}^2 / gamma_{s_{t-1}}),
/// where gamma_1 = 1 is fixed and s_t follows a two-state Markov chain.
/// State 2 is the high-volatility regime by construction (gamma2 >= 1).
struct SwarchParams {
    double u = 0.0;       // mean return level
    double theta1 = 0.0;  // AR(1) coefficient
    double alpha0 = 1.0;  // ARCH constant
    double alpha1 = 0.0;  // ARCH loading on the lagged squared residual
    double gamma2 = 1.0;  // high-regime variance scale
    double p11 = 0.9;     // stay probability, low-volatility regime
    double p22 = 0.9;     // stay probability, high-volatility regime

    /// Throws ValidationError unless alpha0 > 0, alpha1 >= 0, gamma2 >= 1,
    /// |theta1| < 1 and both stay probabilities lie strictly in (0,1).
    void validate() const;

    /// Key-value text (one "name value" pair per line, %.17g) so a
    /// round-trip reproduces the exact bits.
    std::string to_text() const;
    static SwarchParams from_text(const std::string& text);
};

/// Stationary distribution (pi1, pi2) of the two-state chain.
std::array<double, 2> ergodic_distribution(double p11, double p22);

/// Filtered regime probabilities. Entry k of prob_high is
/// P(s_t = high | y_0..y_t) for t = offset + k; the filter needs one lag for
/// the AR term, so offset = 1 and prob_high has returns-size minus one
/// entries. joint_probs[k] is the distribution over the pair
/// (s_t, s_{t-1}) indexed as 2*s_t + s_{t-1} with 0 = low, 1 = high.
struct FilterOutput {
    std::vector<double> prob_high;
    std::vector<std::array<double, 4>> joint_probs;
    double log_likelihood = 0.0;
    std::size_t offset = 1;

    std::string to_text() const;
    static FilterOutput from_text(const std::string& text);
};

struct FilterOptions {
    /// Marginal over (low, high) used to form the product-form initial pair
    /// distribution; defaults to the ergodic distribution.
    std::optional<std::array<double, 2>> initial;
    /// Conditional variances below this raise NumericError naming the step.
    double variance_floor = 1e-12;
};

/// One pass of the Hamilton filter over the joint (s_t, s_{t-1}) state.
/// The pre-sample squared residual is the population variance of the input
/// returns. Requires at least 3 returns.
FilterOutput hamilton_filter(const SwarchParams& params, std::span<const double> returns,
                             const FilterOptions& options = {});
FilterOutput hamilton_filter(const SwarchParams& params, const ReturnSeries& returns,
                             const FilterOptions& options = {});

/// Ground-truth generator for the same process. States are reported as 1
/// (low volatility) and 2 (high volatility). Deterministic given seed.
struct SimulatedPath {
    ReturnSeries returns;
    std::vector<int> true_states;
    std::uint64_t seed = 0;
};

SimulatedPath simulate_swarch(const SwarchParams& params, std::size_t length, std::uint64_t seed);

}  // namespace ews
