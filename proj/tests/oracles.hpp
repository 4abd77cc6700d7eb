#pragma once

// Independent reference implementations the tests compare the library
// against. Everything here favors directness over speed and shares no code
// with the implementations under test.

#include "ews/swarch.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace oracles {

struct EnumeratedFilter {
    std::vector<double> prob_high;  // P(s_t = high | y_0..y_t) for t = 1..n-1
    double log_likelihood = 0.0;
};

/// Brute-force filter: sums the exact joint density over every state path
/// s_0..s_t. A path's weight is pi(s_0) * pi(s_1) * prod_{k>=2} P(s_k|s_{k-1})
/// times the Gaussian density of each return y_k (k >= 1) under variance
/// gamma(s_k) * (alpha0 + alpha1 * e_{k-1}^2 / gamma(s_{k-1})), with the
/// pre-sample e_0^2 equal to the population variance of the whole series.
/// Exponential in n; keep n small.
inline EnumeratedFilter enumerate_filter(const ews::SwarchParams& p,
                                         std::span<const double> y) {
    const std::size_t n = y.size();
    const auto pi = ews::ergodic_distribution(p.p11, p.p22);
    const double gamma[2] = {1.0, p.gamma2};
    const double trans[2][2] = {{p.p11, 1.0 - p.p11}, {1.0 - p.p22, p.p22}};

    double mean = 0.0;
    for (const double v : y) mean += v;
    mean /= static_cast<double>(n);
    double presample = 0.0;
    for (const double v : y) presample += (v - mean) * (v - mean);
    presample /= static_cast<double>(n);

    EnumeratedFilter out;
    out.prob_high.resize(n - 1);
    for (std::size_t t = 1; t < n; ++t) {
        double total = 0.0, high = 0.0;
        const std::size_t paths = std::size_t{1} << (t + 1);
        for (std::size_t bits = 0; bits < paths; ++bits) {
            const auto state = [&](std::size_t k) -> int { return (bits >> k) & 1u; };
            double w = pi[static_cast<std::size_t>(state(0))] *
                       pi[static_cast<std::size_t>(state(1))];
            for (std::size_t k = 2; k <= t; ++k) w *= trans[state(k - 1)][state(k)];
            for (std::size_t k = 1; k <= t; ++k) {
                const double eps = y[k] - p.u - p.theta1 * y[k - 1];
                double eps2_prev = presample;
                if (k >= 2) {
                    const double e = y[k - 1] - p.u - p.theta1 * y[k - 2];
                    eps2_prev = e * e;
                }
                const double h2 = gamma[state(k)] *
                                  (p.alpha0 + p.alpha1 * eps2_prev / gamma[state(k - 1)]);
                w *= std::exp(-0.5 * eps * eps / h2) / std::sqrt(2.0 * M_PI * h2);
            }
            total += w;
            if (state(t) == 1) high += w;
        }
        out.prob_high[t - 1] = high / total;
        if (t == n - 1) out.log_likelihood = std::log(total);
    }
    return out;
}

/// Fraction of positive/negative score pairs ranked correctly, ties worth
/// half. Equals the area under the ROC curve.
inline double concordance(std::span<const int> labels, std::span<const double> scores) {
    double pairs = 0.0, weight = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j] != 0) continue;
            pairs += 1.0;
            if (scores[i] > scores[j])
                weight += 1.0;
            else if (scores[i] == scores[j])
                weight += 0.5;
        }
    }
    return weight / pairs;
}

}  // namespace oracles
