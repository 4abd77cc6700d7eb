#pragma once

#include "ews/optim.hpp"
#include "ews/swarch.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ews {

struct EstimateOptions {
    std::size_t starts = 5;   // total optimizer starts, warm start included
    std::uint64_t seed = 0;   // drives the random start perturbations
    /// When set, the first start optimizes from these parameters instead of
    /// the data-driven guess (recursive refits warm-start on yesterday's fit).
    std::optional<SwarchParams> warm_start;
    NelderMeadOptions optimizer;
    FilterOptions filter;
};

struct StartDiagnostic {
    SwarchParams initial;
    double initial_log_likelihood = 0.0;  // likelihood at the start point itself
    double log_likelihood = 0.0;          // best achieved; -inf when the start failed
    bool converged = false;
};

struct EstimationResult {
    SwarchParams params;
    FilterOutput filter;  // computed at the optimum
    double log_likelihood = 0.0;
    bool converged = false;
    /// True when the fit sits on an identification boundary: gamma2 so close
    /// to 1 the regimes are indistinguishable, or a stay probability pinned
    /// at 0/1. Degenerate fits are reported, not rejected.
    bool degenerate = false;
    std::string notes;
    std::vector<StartDiagnostic> starts;
};

/// Maximum-likelihood fit of the switching-ARCH model by multi-start
/// simplex search over a smooth unconstrained reparameterization. The
/// winner is the start with the highest log-likelihood (ties keep the
/// earliest start). Throws EstimationError only when every start fails.
EstimationResult estimate_swarch(std::span<const double> returns,
                                 const EstimateOptions& options = {});
EstimationResult estimate_swarch(const ReturnSeries& returns,
                                 const EstimateOptions& options = {});

/// The reparameterization used by the optimizer, exposed for tests:
/// raw = (u, atanh-like theta1, ln alpha0, ln alpha1, ln(gamma2-1),
/// logit p11, logit p22).
std::vector<double> params_to_raw(const SwarchParams& params);
SwarchParams raw_to_params(std::span<const double> raw);

}  // namespace ews
