#include "ews/optim.hpp"

#include "ews/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ews {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded(const Objective& f, std::span<const double> x) {
    const double v = f(x);
    return std::isnan(v) ? kInf : v;
}

NelderMeadResult run_once(const Objective& f, std::span<const double> x0, double step,
                          double f_tol, std::size_t max_iter) {
    const std::size_t n = x0.size();
    const std::size_t m = n + 1;

    std::vector<std::vector<double>> simplex(m, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 1; i < m; ++i) simplex[i][i - 1] += step;
    std::vector<double> value(m);
    for (std::size_t i = 0; i < m; ++i) value[i] = guarded(f, simplex[i]);

    std::vector<std::size_t> order(m);
    std::vector<double> centroid(n), trial(n), trial2(n);
    NelderMeadResult result;

    for (; result.iterations < max_iter; ++result.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t best = order.front(), worst = order.back(),
                          second_worst = order[m - 2];

        if (std::isfinite(value[best]) && value[worst] - value[best] < f_tol) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (const std::size_t i : order)
            if (i != worst)
                for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        for (auto& c : centroid) c /= static_cast<double>(n);

        // Reflection.
        for (std::size_t d = 0; d < n; ++d)
            trial[d] = centroid[d] + (centroid[d] - simplex[worst][d]);
        const double f_reflect = guarded(f, trial);

        if (f_reflect < value[order.front()]) {
            // Expansion.
            for (std::size_t d = 0; d < n; ++d)
                trial2[d] = centroid[d] + 2.0 * (centroid[d] - simplex[worst][d]);
            const double f_expand = guarded(f, trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                value[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                value[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < value[second_worst]) {
            simplex[worst] = trial;
            value[worst] = f_reflect;
            continue;
        }

        // Contraction, toward the better of the reflected/worst points.
        const bool outside = f_reflect < value[worst];
        for (std::size_t d = 0; d < n; ++d) {
            const double toward = outside ? trial[d] : simplex[worst][d];
            trial2[d] = centroid[d] + 0.5 * (toward - centroid[d]);
        }
        const double f_contract = guarded(f, trial2);
        if (f_contract < std::min(f_reflect, value[worst])) {
            simplex[worst] = trial2;
            value[worst] = f_contract;
            continue;
        }

        // Shrink everything toward the best vertex.
        for (std::size_t i = 0; i < m; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d)
                simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            value[i] = guarded(f, simplex[i]);
        }
    }

    const std::size_t best = static_cast<std::size_t>(
        std::min_element(value.begin(), value.end()) - value.begin());
    result.x = simplex[best];
    result.value = value[best];
    return result;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                             const NelderMeadOptions& options) {
    if (x0.empty()) throw ValidationError("nelder_mead: empty start point");
    if (!(options.initial_step > 0.0))
        throw ValidationError("nelder_mead: initial step must be positive");

    NelderMeadResult best = run_once(f, x0, options.initial_step, options.f_tolerance,
                                     options.max_iterations);
    double step = options.initial_step;
    for (std::size_t r = 0; r < options.restarts; ++r) {
        step *= 0.1;
        NelderMeadResult next = run_once(f, best.x, step, options.f_tolerance,
                                         options.max_iterations);
        next.iterations += best.iterations;
        if (next.value > best.value) {  // polish should never regress; keep the better point
            next.x = best.x;
            next.value = best.value;
        }
        best = std::move(next);
    }
    return best;
}

}  // namespace ews
