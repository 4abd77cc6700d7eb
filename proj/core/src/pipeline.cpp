#include "ews/pipeline.hpp"

#include "ews/errors.hpp"
#include "ews/hash.hpp"
#include "ews/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace ews {

void EwsConfig::validate() const {
    if (window < 1) throw ValidationError("ews config: window must be >= 1");
    if (refit_stride < 1) throw ValidationError("ews config: refit_stride must be >= 1");
    if (!(split > 0.0 && split < 1.0))
        throw ValidationError("ews config: split must lie in (0,1)");
    if (estimation_starts < 1)
        throw ValidationError("ews config: estimation_starts must be >= 1");
    if (threshold.bins < 5) throw ValidationError("ews config: need at least 5 histogram bins");
    if (threshold.smooth_window < 1)
        throw ValidationError("ews config: smoothing window must be >= 1");
}

namespace {

/// Predictor slot: exactly one side is live, matching cfg.predictor.
struct Predictor {
    std::optional<LstmNetwork> lstm;
    std::optional<MlpNetwork> mlp;

    bool ready() const { return lstm.has_value() || mlp.has_value(); }
    double predict(const Matrix& window) const {
        return lstm ? lstm_forward(*lstm, window) : mlp_forward(*mlp, window);
    }
};

}  // namespace

EwsRun run_ews(const FeaturePanel& panel, const EwsConfig& cfg) {
    cfg.validate();
    panel.validate();
    const std::size_t n = panel.rows(), l = cfg.window;
    if (n < l + 2)
        throw ValidationError("run_ews: panel must be longer than the window plus one day");

    const std::vector<double>& returns = panel.column(cfg.return_column);
    const bool has_truth = !cfg.truth_column.empty();
    const std::vector<double>* truth = has_truth ? &panel.column(cfg.truth_column) : nullptr;

    // Working features: every non-truth column plus the filtered regime
    // probability, refreshed in place as the recursion advances.
    FeaturePanel features;
    features.dates = panel.dates;
    for (std::size_t c = 0; c < panel.cols(); ++c)
        if (!has_truth || panel.names[c] != cfg.truth_column)
            features.add_column(panel.names[c], panel.columns[c]);
    std::vector<double> prob_col(n, 0.0);
    features.add_column("filter_prob", prob_col);
    std::vector<double>& prob = features.columns.back();

    const std::size_t train_end = static_cast<std::size_t>(
        static_cast<double>(n) * cfg.split);  // rows < train_end are the training range
    const std::size_t train_stride = cfg.train_stride > 0 ? cfg.train_stride : cfg.refit_stride;
    const std::size_t min_obs = std::max({cfg.warmup, l + 2, std::size_t{4}});
    const std::size_t first_active_t = min_obs - 1;

    EwsRun run;
    run.records.reserve(n - l);

    std::optional<SwarchParams> params;
    FilterOutput filt;
    std::vector<int> labels(n, 0);
    Predictor predictor;
    const std::uint64_t train_seed = derive_seed(cfg.seed, "predictor-train");

    Fnv64 prefix;  // rolling digest over rows 0..t of the signal-path inputs
    std::size_t hashed_rows = 0;

    for (std::size_t t = l - 1; t + 1 < n; ++t) {
        if (cfg.audit) {
            for (; hashed_rows <= t; ++hashed_rows) {
                prefix.update(static_cast<std::uint64_t>(
                    static_cast<std::int64_t>(panel.dates[hashed_rows].to_days())));
                for (std::size_t c = 0; c < features.cols() - 1; ++c)  // raw inputs only
                    prefix.update(features.columns[c][hashed_rows]);
            }
            run.audit.push_back({t, prefix.digest()});
        }

        WarningRecord rec;
        rec.date = panel.dates[t];
        if (has_truth) rec.true_label = static_cast<int>(std::lround((*truth)[t + 1]));

        if (t < first_active_t) {
            rec.suppressed = true;
            ++run.suppressed_count;
            run.records.push_back(rec);
            continue;
        }

        const std::span<const double> seen(returns.data(), t + 1);

        // Volatility model: cold multi-start first, then warm refits on the
        // stride; non-refit days refilter with the held parameters.
        const bool refit_due = !params || (t - first_active_t) % cfg.refit_stride == 0;
        bool step_ok = true;
        if (refit_due) {
            EstimateOptions eo;
            eo.filter.variance_floor = 1e-12;
            eo.seed = derive_seed(cfg.seed, "estimate-" + std::to_string(t));
            if (params) {
                eo.warm_start = params;
                eo.starts = 2;  // warm + one fresh start to escape drifting optima
                eo.optimizer.max_iterations = 4000;
            } else {
                eo.starts = cfg.estimation_starts;
            }
            try {
                EstimationResult est = estimate_swarch(seen, eo);
                params = est.params;
                filt = std::move(est.filter);
                ++run.refit_count;
            } catch (const Error&) {
                ++run.estimation_failures;
                rec.estimation_reused = true;
                step_ok = false;
            }
        }
        if (!refit_due || (!step_ok && params)) {
            try {
                filt = hamilton_filter(*params, seen);
                step_ok = true;
            } catch (const Error&) {
                ++run.estimation_failures;
                rec.estimation_reused = true;
                step_ok = false;
            }
        }
        if (!params) {  // first estimation failed outright; retry next step
            rec.suppressed = true;
            ++run.suppressed_count;
            run.records.push_back(rec);
            continue;
        }

        // Filtered path onto the panel axis: row r holds P(high | data
        // up to t) for return r; row 0 mirrors the first filtered value.
        if (step_ok) {
            for (std::size_t r = 1; r <= t; ++r) prob[r] = filt.prob_high[r - 1];
            prob[0] = filt.prob_high.front();
        } else {
            prob[t] = prob[t - 1];  // carry the last filtered value forward
        }
        rec.prob_high = prob[t];

        // Cutoff, labels.
        double cutoff = 0.5;
        if (t >= 30) {
            const TwoPeakResult tp =
                two_peak_cutoff(std::span<const double>(prob.data() + 1, t),
                                cfg.threshold.bins, cfg.threshold.smooth_window);
            cutoff = tp.cutoff;
            if (tp.fallback) ++run.fallback_count;
        } else {
            ++run.fallback_count;
        }
        rec.cutoff = cutoff;
        run.cutoffs.push_back(cutoff);
        for (std::size_t r = 0; r <= t; ++r) labels[r] = prob[r] >= cutoff ? 1 : 0;

        // Standardization statistics never see rows beyond min(t, split).
        const std::size_t stat_rows = std::min(t + 1, std::max(train_end, std::size_t{1}));
        const Standardizer stats = Standardizer::fit(features, 0, stat_rows);

        const bool train_due =
            !predictor.ready() || (t - first_active_t) % train_stride == 0;
        if (train_due) {
            const FeaturePanel visible = stats.apply(features.slice(0, t + 1));
            TrainConfig tc = cfg.train;
            tc.window = l;
            tc.seed = train_seed;
            if (cfg.predictor == PredictorKind::lstm)
                predictor.lstm = train_lstm(visible, std::span<const int>(labels.data(), t + 1),
                                            tc).net;
            else
                predictor.mlp = train_mlp(visible, std::span<const int>(labels.data(), t + 1),
                                          tc).net;
            ++run.retrain_count;
        }

        Matrix window(l, features.cols());
        for (std::size_t r = 0; r < l; ++r) {
            const std::vector<double> row = stats.apply_row(features, t - l + 1 + r);
            for (std::size_t c = 0; c < row.size(); ++c) window(r, c) = row[c];
        }
        rec.predicted = predictor.predict(window);
        rec.signal = rec.predicted >= cutoff ? 1 : 0;
        run.records.push_back(rec);
    }

    if (params) {
        run.final_params = *params;
        run.final_prob_high = filt.prob_high;
    }
    return run;
}

std::pair<FeaturePanel, FeaturePanel> split_train_test(const FeaturePanel& panel,
                                                       double fraction, std::size_t window) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ValidationError("split_train_test: fraction must lie in (0,1)");
    panel.validate();
    const std::size_t n = panel.rows();
    const auto cut = static_cast<std::size_t>(static_cast<double>(n) * fraction);
    if (cut == 0) throw ValidationError("split_train_test: empty training part");
    if (n - cut < window + 1)
        throw ValidationError("split_train_test: test part shorter than window+1 rows");
    return {panel.slice(0, cut), panel.slice(cut, n)};
}

}  // namespace ews
