#include "ews/metrics.hpp"

#include "ews/csv.hpp"
#include "ews/errors.hpp"
#include "ews/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ews {

namespace {

void check_binary(std::span<const int> xs, const char* what) {
    for (const int x : xs)
        if (x != 0 && x != 1) throw ValidationError(std::string(what) + ": values must be 0 or 1");
}

}  // namespace

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> signals) {
    if (labels.size() != signals.size())
        throw ValidationError("confusion: labels and signals differ in length");
    check_binary(labels, "confusion labels");
    check_binary(signals, "confusion signals");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1)
            ++(signals[i] == 1 ? cm.tp : cm.fn);
        else
            ++(signals[i] == 1 ? cm.fp : cm.tn);
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw MetricError("accuracy undefined: no observations");
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

std::pair<double, double> tpr_fpr(const ConfusionMatrix& cm) {
    if (cm.tp + cm.fn == 0) throw MetricError("tpr undefined: no positive labels");
    if (cm.fp + cm.tn == 0) throw MetricError("fpr undefined: no negative labels");
    return {static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn),
            static_cast<double>(cm.fp) / static_cast<double>(cm.fp + cm.tn)};
}

double crisis_recall(const ConfusionMatrix& cm) {
    if (cm.tp + cm.fn == 0) throw MetricError("crisis_recall undefined: no crisis days");
    return static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
}

double bce_loss(std::span<const int> labels, std::span<const double> predicted) {
    if (labels.size() != predicted.size())
        throw ValidationError("bce_loss: labels and predictions differ in length");
    if (labels.empty()) throw ValidationError("bce_loss: empty input");
    check_binary(labels, "bce_loss labels");
    double sum = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) sum += bce_point(predicted[i], labels[i]);
    return sum / static_cast<double>(labels.size());
}

double rmse(std::span<const int> labels, std::span<const double> predicted) {
    if (labels.size() != predicted.size())
        throw ValidationError("rmse: labels and predictions differ in length");
    if (labels.empty()) throw ValidationError("rmse: empty input");
    double ss = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double d = predicted[i] - static_cast<double>(labels[i]);
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(labels.size()));
}

RocCurve roc_auc(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size())
        throw ValidationError("roc_auc: labels and scores differ in length");
    check_binary(labels, "roc_auc labels");
    std::size_t pos = 0;
    for (const int y : labels) pos += static_cast<std::size_t>(y);
    const std::size_t neg = labels.size() - pos;
    if (pos == 0 || neg == 0)
        throw MetricError("auc undefined: labels contain a single class");

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});  // threshold above every score
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        for (; i < order.size() && scores[order[i]] == threshold; ++i)
            ++(labels[order[i]] == 1 ? tp : fp);  // tied scores share a threshold
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos)});
    }

    for (std::size_t p = 1; p < curve.points.size(); ++p)
        curve.auc += (curve.points[p].fpr - curve.points[p - 1].fpr) *
                     (curve.points[p].tpr + curve.points[p - 1].tpr) * 0.5;
    return curve;
}

double sar(double accuracy, double auc, double rmse) {
    for (const double v : {accuracy, auc, rmse})
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("sar: all inputs must lie in [0,1]");
    return (accuracy + auc + (1.0 - rmse)) / 3.0;
}

MetricsReport compute_metrics(std::span<const int> labels, std::span<const double> scores,
                              std::span<const int> signals) {
    MetricsReport r;
    r.cm = confusion(labels, signals);
    r.accuracy = accuracy(r.cm);
    std::tie(r.tpr, r.fpr) = tpr_fpr(r.cm);
    r.bce_loss = bce_loss(labels, scores);
    const RocCurve curve = roc_auc(labels, scores);
    r.roc_points = curve.points;
    r.auc = curve.auc;
    r.rmse = rmse(labels, scores);
    r.sar = sar(r.accuracy, r.auc, r.rmse);
    return r;
}

std::string MetricsReport::to_text() const {
    std::string out;
    out += "tp " + std::to_string(cm.tp) + "\n";
    out += "fn " + std::to_string(cm.fn) + "\n";
    out += "fp " + std::to_string(cm.fp) + "\n";
    out += "tn " + std::to_string(cm.tn) + "\n";
    out += "accuracy " + format_double(accuracy) + "\n";
    out += "bce_loss " + format_double(bce_loss) + "\n";
    out += "tpr " + format_double(tpr) + "\n";
    out += "fpr " + format_double(fpr) + "\n";
    out += "auc " + format_double(auc) + "\n";
    out += "rmse " + format_double(rmse) + "\n";
    out += "sar " + format_double(sar) + "\n";
    return out;
}

OnsetReport onset_analysis(std::span<const int> labels, std::span<const int> signals,
                           std::size_t horizon) {
    if (labels.size() != signals.size())
        throw ValidationError("onset_analysis: labels and signals differ in length");
    check_binary(labels, "onset labels");
    check_binary(signals, "onset signals");

    OnsetReport rep;
    const std::size_t n = labels.size();
    for (const int y : labels) rep.total_crisis_days += static_cast<std::size_t>(y);
    for (std::size_t i = 0; i < n; ++i)
        if (labels[i] == 1 && signals[i] == 1) ++rep.correct_predictions;
    rep.pct_correct = rep.total_crisis_days == 0
                          ? 0.0
                          : 100.0 * static_cast<double>(rep.correct_predictions) /
                                static_cast<double>(rep.total_crisis_days);

    double days_ahead_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(labels[i] == 1 && (i == 0 || labels[i - 1] == 0))) continue;
        ++rep.total_onsets;
        const std::size_t lo = i >= horizon ? i - horizon : 0;
        bool predicted = false;
        std::size_t earliest_calm_signal = n;  // sentinel: none found
        for (std::size_t j = lo; j <= i; ++j) {
            if (signals[j] != 1) continue;
            predicted = true;
            if (labels[j] == 0 && earliest_calm_signal == n) earliest_calm_signal = j;
        }
        if (predicted) {
            ++rep.predicted_onsets;
            if (earliest_calm_signal < n)
                days_ahead_sum += static_cast<double>(i - earliest_calm_signal);
        }
    }
    rep.pct_onsets = rep.total_onsets == 0
                         ? 0.0
                         : 100.0 * static_cast<double>(rep.predicted_onsets) /
                               static_cast<double>(rep.total_onsets);
    rep.avg_days_ahead = rep.predicted_onsets == 0
                             ? 0.0
                             : days_ahead_sum / static_cast<double>(rep.predicted_onsets);

    std::size_t signal_onsets = 0, false_alarms = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(signals[j] == 1 && (j == 0 || signals[j - 1] == 0))) continue;
        ++signal_onsets;
        bool matched = false;
        for (std::size_t i = j; i <= std::min(j + horizon, n - 1); ++i)
            if (labels[i] == 1 && (i == 0 || labels[i - 1] == 0)) {
                matched = true;
                break;
            }
        if (!matched) ++false_alarms;
    }
    rep.false_onset_alarms_pct =
        signal_onsets == 0 ? 0.0
                           : 100.0 * static_cast<double>(false_alarms) /
                                 static_cast<double>(signal_onsets);
    return rep;
}

std::string OnsetReport::to_text() const {
    std::string out;
    out += "total_crisis_days " + std::to_string(total_crisis_days) + "\n";
    out += "correct_predictions " + std::to_string(correct_predictions) + "\n";
    out += "pct_correct " + format_double(pct_correct) + "\n";
    out += "total_onsets " + std::to_string(total_onsets) + "\n";
    out += "predicted_onsets " + std::to_string(predicted_onsets) + "\n";
    out += "pct_onsets " + format_double(pct_onsets) + "\n";
    out += "false_onset_alarms_pct " + format_double(false_onset_alarms_pct) + "\n";
    out += "avg_days_ahead " + format_double(avg_days_ahead) + "\n";
    return out;
}

CvReport kfold_cv(const FeaturePanel& panel, std::span<const int> labels,
                  std::size_t test_begin, std::size_t k, const TrainConfig& cfg,
                  PredictorKind kind) {
    if (k < 2) throw ValidationError("kfold_cv: k must be at least 2");
    if (labels.size() != panel.rows())
        throw ValidationError("kfold_cv: labels must align with panel rows");
    if (test_begin >= panel.rows())
        throw ValidationError("kfold_cv: empty test range");
    const std::size_t n = panel.rows(), l = cfg.window, m = n - test_begin;
    if (m / k < l + 1)
        throw ValidationError("kfold_cv: folds smaller than window+1 rows");

    CvReport report;
    std::size_t fold_begin = test_begin;
    for (std::size_t f = 0; f < k; ++f) {
        // Contiguous chronological folds; the first m % k folds get the
        // extra row.
        const std::size_t fold_size = m / k + (f < m % k ? 1 : 0);
        const std::size_t fold_end = fold_begin + fold_size;

        // Train on every window whose target row falls outside the fold.
        std::vector<std::size_t> end_rows;
        for (std::size_t t = l - 1; t + 1 < n; ++t) {
            const std::size_t target = t + 1;
            if (target < fold_begin || target >= fold_end) end_rows.push_back(t);
        }
        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = derive_seed(cfg.seed, "cv-fold-" + std::to_string(f));

        std::vector<int> fold_labels;
        std::vector<double> fold_scores;
        Matrix window(l, panel.cols());
        auto evaluate = [&](auto&& predict) {
            for (std::size_t target = std::max(fold_begin, l); target < fold_end; ++target) {
                for (std::size_t c = 0; c < panel.cols(); ++c)
                    for (std::size_t r = 0; r < l; ++r)
                        window(r, c) = panel.columns[c][target - l + r];
                fold_labels.push_back(labels[target]);
                fold_scores.push_back(predict(window));
            }
        };
        if (kind == PredictorKind::lstm) {
            const TrainedLstm trained = train_lstm(panel, labels, fold_cfg, end_rows);
            evaluate([&](const Matrix& w) { return lstm_forward(trained.net, w); });
        } else {
            const TrainedMlp trained = train_mlp(panel, labels, fold_cfg, end_rows);
            evaluate([&](const Matrix& w) { return mlp_forward(trained.net, w); });
        }

        std::vector<int> fold_signals(fold_scores.size());
        for (std::size_t i = 0; i < fold_scores.size(); ++i)
            fold_signals[i] = fold_scores[i] >= 0.5 ? 1 : 0;
        FoldMetrics fm;
        fm.accuracy = accuracy(confusion(fold_labels, fold_signals));
        fm.bce_loss = bce_loss(fold_labels, fold_scores);
        report.folds.push_back(fm);
        report.mean.accuracy += fm.accuracy;
        report.mean.bce_loss += fm.bce_loss;

        fold_begin = fold_end;
    }
    report.mean.accuracy /= static_cast<double>(k);
    report.mean.bce_loss /= static_cast<double>(k);
    return report;
}

}  // namespace ews
