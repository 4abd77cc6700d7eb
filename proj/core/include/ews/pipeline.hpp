#pragma once

#include "ews/data.hpp"
#include "ews/estimate.hpp"
#include "ews/metrics.hpp"
#include "ews/neural.hpp"
#include "ews/threshold.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ews {

struct ThresholdConfig {
    std::size_t bins = 50;
    std::size_t smooth_window = 3;
};

struct EwsConfig {
    std::size_t window = 5;             // feature window length l
    std::size_t refit_stride = 1;       // days between volatility-model refits
    std::size_t train_stride = 0;       // days between predictor retrains; 0 follows refit_stride
    PredictorKind predictor = PredictorKind::lstm;
    double split = 0.7;                 // training fraction; freezes standardization stats
    TrainConfig train;
    ThresholdConfig threshold;
    std::size_t warmup = 100;           // observations required before the first estimation
    std::size_t estimation_starts = 5;  // multi-start count for the initial fit
    std::uint64_t seed = 42;            // master seed; per-step seeds derive from it
    bool audit = true;                  // record per-step input digests
    std::string return_column = "return";
    std::string truth_column;           // optional answer key; never enters the signal path

    void validate() const;
};

/// One emitted warning. `date` is the information date t; `predicted` and
/// `signal` refer to day t+1. true_label copies the truth column at t+1
/// when one is configured (evaluation metadata only), else -1.
struct WarningRecord {
    Date date;
    double prob_high = std::numeric_limits<double>::quiet_NaN();
    double cutoff = std::numeric_limits<double>::quiet_NaN();
    double predicted = std::numeric_limits<double>::quiet_NaN();
    int signal = 0;
    int true_label = -1;
    bool suppressed = false;         // pre-warmup: no estimate available yet
    bool estimation_reused = false;  // refit failed; previous parameters reused
};

/// Rolling digest of every input row dated <= t (dates, return and feature
/// columns). Rows after t cannot influence it, which is what the
/// no-look-ahead audit asserts.
struct StepAudit {
    std::size_t t = 0;
    std::uint64_t input_digest = 0;
};

struct EwsRun {
    std::vector<WarningRecord> records;   // exactly panel-rows minus window entries
    std::vector<StepAudit> audit;
    SwarchParams final_params;
    std::vector<double> final_prob_high;  // filtered path from the last active step
    std::vector<double> cutoffs;          // cutoff per active step, in record order
    std::size_t fallback_count = 0;
    std::size_t estimation_failures = 0;
    std::size_t refit_count = 0;
    std::size_t retrain_count = 0;
    std::size_t suppressed_count = 0;
};

/// The daily recursive loop: per step t (from window-1 through the second
/// to last row) refit the switching-volatility model on returns up to t
/// (warm-started between cold refits every refit_stride days), refilter,
/// reselect the cutoff, relabel, retrain the predictor on its cadence, and
/// emit the day-(t+1) warning. Estimation failures reuse the previous
/// parameters and flag the record.
EwsRun run_ews(const FeaturePanel& panel, const EwsConfig& cfg);

/// Chronological split; the test part must keep at least window+1 rows.
std::pair<FeaturePanel, FeaturePanel> split_train_test(const FeaturePanel& panel,
                                                       double fraction, std::size_t window);

}  // namespace ews
