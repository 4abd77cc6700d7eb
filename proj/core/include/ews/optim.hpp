#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ews {

/// Derivative-free simplex minimizer. Non-finite objective values are
/// treated as +infinity, so callers may signal infeasible points by
/// throwing inside the objective and catching into NaN/inf themselves.
struct NelderMeadOptions {
    double initial_step = 0.5;       // simplex edge along each coordinate
    double f_tolerance = 1e-9;       // stop when best-to-worst value spread falls below
    std::size_t max_iterations = 20000;
    std::size_t restarts = 1;        // polish runs from the best point, step shrunk 10x each
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;  // total across polish runs
    bool converged = false;      // final run met f_tolerance before max_iterations
};

using Objective = std::function<double(std::span<const double>)>;

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace ews
