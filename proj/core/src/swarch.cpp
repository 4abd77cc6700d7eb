#include "ews/swarch.hpp"

#include "ews/csv.hpp"
#include "ews/errors.hpp"
#include "ews/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace ews {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)

double population_variance(std::span<const double> xs) {
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (const double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(xs.size());
}

}  // namespace

void SwarchParams::validate() const {
    if (!(alpha0 > 0.0)) throw ValidationError("swarch params: alpha0 must be positive");
    if (!(alpha1 >= 0.0)) throw ValidationError("swarch params: alpha1 must be nonnegative");
    if (!(gamma2 >= 1.0)) throw ValidationError("swarch params: gamma2 must be at least 1");
    if (!(std::fabs(theta1) < 1.0)) throw ValidationError("swarch params: |theta1| must be < 1");
    if (!(p11 > 0.0 && p11 < 1.0)) throw ValidationError("swarch params: p11 must be in (0,1)");
    if (!(p22 > 0.0 && p22 < 1.0)) throw ValidationError("swarch params: p22 must be in (0,1)");
    if (!(std::isfinite(u) && std::isfinite(alpha0) && std::isfinite(alpha1) &&
          std::isfinite(gamma2)))
        throw ValidationError("swarch params: non-finite value");
}

std::string SwarchParams::to_text() const {
    std::string out;
    out += "u " + format_double(u) + "\n";
    out += "theta1 " + format_double(theta1) + "\n";
    out += "alpha0 " + format_double(alpha0) + "\n";
    out += "alpha1 " + format_double(alpha1) + "\n";
    out += "gamma2 " + format_double(gamma2) + "\n";
    out += "p11 " + format_double(p11) + "\n";
    out += "p22 " + format_double(p22) + "\n";
    return out;
}

SwarchParams SwarchParams::from_text(const std::string& text) {
    SwarchParams p;
    bool seen[7] = {};
    std::istringstream in(text);
    std::string key, value;
    while (in >> key >> value) {
        const double v = parse_double(value);
        if (key == "u") { p.u = v; seen[0] = true; }
        else if (key == "theta1") { p.theta1 = v; seen[1] = true; }
        else if (key == "alpha0") { p.alpha0 = v; seen[2] = true; }
        else if (key == "alpha1") { p.alpha1 = v; seen[3] = true; }
        else if (key == "gamma2") { p.gamma2 = v; seen[4] = true; }
        else if (key == "p11") { p.p11 = v; seen[5] = true; }
        else if (key == "p22") { p.p22 = v; seen[6] = true; }
        else throw ParseError("swarch params: unknown key '" + key + "'");
    }
    for (const bool s : seen)
        if (!s) throw ParseError("swarch params: missing field");
    return p;
}

std::array<double, 2> ergodic_distribution(double p11, double p22) {
    if (p11 == 1.0 && p22 == 1.0)
        throw ValidationError("ergodic_distribution: degenerate chain (p11 = p22 = 1)");
    if (!(p11 > 0.0 && p11 < 1.0) || !(p22 > 0.0 && p22 < 1.0))
        throw ValidationError("ergodic_distribution: stay probabilities must be in (0,1)");
    const double pi1 = (1.0 - p22) / (2.0 - p11 - p22);
    return {pi1, 1.0 - pi1};
}

FilterOutput hamilton_filter(const SwarchParams& params, std::span<const double> returns,
                             const FilterOptions& options) {
    params.validate();
    const std::size_t n = returns.size();
    if (n < 3) throw ValidationError("hamilton_filter: need at least 3 returns");

    std::array<double, 2> init = options.initial
                                     ? *options.initial
                                     : ergodic_distribution(params.p11, params.p22);
    if (!(init[0] >= 0.0 && init[1] >= 0.0 &&
          std::fabs(init[0] + init[1] - 1.0) <= 1e-9))
        throw ValidationError("hamilton_filter: initial distribution must sum to 1");

    // trans[from][to]
    const double trans[2][2] = {{params.p11, 1.0 - params.p11},
                                {1.0 - params.p22, params.p22}};
    const double presample_eps2 = population_variance(returns);
    const double log_gamma2 = std::log(params.gamma2);

    FilterOutput out;
    out.offset = 1;
    out.prob_high.resize(n - 1);
    out.joint_probs.resize(n - 1);

    std::array<double, 4> filtered{};  // index 2*s_t + s_{t-1}
    double loglik = 0.0;

    for (std::size_t t = 1; t < n; ++t) {
        const double eps = returns[t] - params.u - params.theta1 * returns[t - 1];
        const double eps2_prev =
            t == 1 ? presample_eps2
                   : [&] {
                         const double e = returns[t - 1] - params.u -
                                          params.theta1 * returns[t - 2];
                         return e * e;
                     }();

        std::array<double, 4> predicted;
        if (t == 1) {
            for (int st = 0; st < 2; ++st)
                for (int sp = 0; sp < 2; ++sp)
                    predicted[static_cast<std::size_t>(2 * st + sp)] = init[static_cast<std::size_t>(st)] * init[static_cast<std::size_t>(sp)];
        } else {
            for (int st = 0; st < 2; ++st)
                for (int sp = 0; sp < 2; ++sp) {
                    double mass = 0.0;
                    for (int spp = 0; spp < 2; ++spp)
                        mass += trans[sp][st] * filtered[static_cast<std::size_t>(2 * sp + spp)];
                    predicted[static_cast<std::size_t>(2 * st + sp)] = mass;
                }
        }

        // Log-space joint update: weight = ln(predicted) + Gaussian log density
        // with conditional variance h^2(s_t, s_{t-1}) = gamma_{s_t} * base_{s_{t-1}}.
        const double base[2] = {params.alpha0 + params.alpha1 * eps2_prev,
                                params.alpha0 + params.alpha1 * eps2_prev / params.gamma2};
        if (!(base[1] >= options.variance_floor && base[0] >= options.variance_floor))
            throw NumericError("hamilton_filter: conditional variance underflow at step " +
                               std::to_string(t));
        const double log_base[2] = {std::log(base[0]), std::log(base[1])};
        const double eps2 = eps * eps;

        std::array<double, 4> logw;
        for (int st = 0; st < 2; ++st)
            for (int sp = 0; sp < 2; ++sp) {
                const auto i = static_cast<std::size_t>(2 * st + sp);
                const double h2 = st == 0 ? base[sp] : params.gamma2 * base[sp];
                const double log_h2 = st == 0 ? log_base[sp] : log_gamma2 + log_base[sp];
                const double logphi = -0.5 * (kLog2Pi + log_h2) - eps2 / (2.0 * h2);
                logw[i] = predicted[i] > 0.0
                              ? std::log(predicted[i]) + logphi
                              : -std::numeric_limits<double>::infinity();
            }

        double shift = logw[0];
        for (const double w : logw) shift = std::max(shift, w);
        if (!std::isfinite(shift))
            throw NumericError("hamilton_filter: vanishing state density at step " +
                               std::to_string(t));
        double total = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            filtered[i] = std::exp(logw[i] - shift);
            total += filtered[i];
        }
        for (auto& f : filtered) f /= total;
        loglik += shift + std::log(total);

        out.joint_probs[t - 1] = filtered;
        // The pair sum can stray one ulp past 1 after normalization.
        out.prob_high[t - 1] = std::clamp(filtered[2] + filtered[3], 0.0, 1.0);
    }

    if (!std::isfinite(loglik))
        throw NumericError("hamilton_filter: non-finite log-likelihood");
    out.log_likelihood = loglik;
    return out;
}

FilterOutput hamilton_filter(const SwarchParams& params, const ReturnSeries& returns,
                             const FilterOptions& options) {
    return hamilton_filter(params, std::span<const double>(returns.values), options);
}

std::string FilterOutput::to_text() const {
    std::string out;
    out += "log_likelihood " + format_double(log_likelihood) + "\n";
    out += "offset " + std::to_string(offset) + "\n";
    out += "steps " + std::to_string(prob_high.size()) + "\n";
    out += "prob_high";
    for (const double v : prob_high) out += " " + format_double(v);
    out += "\njoint";
    for (const auto& j : joint_probs)
        for (const double v : j) out += " " + format_double(v);
    out += "\n";
    return out;
}

FilterOutput FilterOutput::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string key;
    FilterOutput out;
    std::size_t steps = 0;
    while (in >> key) {
        if (key == "log_likelihood") {
            std::string v;
            in >> v;
            out.log_likelihood = parse_double(v);
        } else if (key == "offset") {
            in >> out.offset;
        } else if (key == "steps") {
            in >> steps;
        } else if (key == "prob_high") {
            out.prob_high.resize(steps);
            std::string v;
            for (auto& p : out.prob_high) {
                in >> v;
                p = parse_double(v);
            }
        } else if (key == "joint") {
            out.joint_probs.resize(steps);
            std::string v;
            for (auto& j : out.joint_probs)
                for (auto& p : j) {
                    in >> v;
                    p = parse_double(v);
                }
        } else {
            throw ParseError("filter output: unknown key '" + key + "'");
        }
    }
    if (out.prob_high.size() != steps || out.joint_probs.size() != steps)
        throw ParseError("filter output: truncated text");
    return out;
}

SimulatedPath simulate_swarch(const SwarchParams& params, std::size_t length,
                              std::uint64_t seed) {
    params.validate();
    if (length < 10) throw ValidationError("simulate_swarch: length must be at least 10");

    const auto pi = ergodic_distribution(params.p11, params.p22);
    const double gamma[2] = {1.0, params.gamma2};
    Rng rng(seed);

    SimulatedPath path;
    path.seed = seed;
    path.returns.dates.resize(length);
    path.returns.values.resize(length);
    path.true_states.resize(length);

    // Pre-sample quantities start at their unconditional levels.
    double eps2_over_gamma = params.alpha1 < 1.0 ? params.alpha0 / (1.0 - params.alpha1)
                                                 : params.alpha0;
    double y_prev = params.u / (1.0 - params.theta1);
    int s = rng.uniform01() < pi[0] ? 0 : 1;

    Date day{2000, 1, 3};
    for (std::size_t t = 0; t < length; ++t) {
        if (t > 0) {
            const double stay = s == 0 ? params.p11 : params.p22;
            if (rng.uniform01() >= stay) s = 1 - s;
        }
        const double h2 = gamma[s] * (params.alpha0 + params.alpha1 * eps2_over_gamma);
        const double eps = std::sqrt(h2) * rng.normal();
        const double y = params.u + params.theta1 * y_prev + eps;
        eps2_over_gamma = eps * eps / gamma[s];
        y_prev = y;

        path.returns.dates[t] = day;
        path.returns.values[t] = y;
        path.true_states[t] = s + 1;
        day = day.next_day();
    }
    return path;
}

}  // namespace ews
