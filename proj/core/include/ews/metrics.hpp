#pragma once

#include "ews/data.hpp"
#include "ews/neural.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ews {

struct ConfusionMatrix {
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;

    std::size_t total() const { return tp + fn + fp + tn; }
};

/// Crisis = 1 = positive.
ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> signals);

double accuracy(const ConfusionMatrix& cm);
std::pair<double, double> tpr_fpr(const ConfusionMatrix& cm);

/// Share of crisis days carrying a warning (tp / crisis days); the
/// headline "% correct" of an onset table, distinct from rand accuracy.
double crisis_recall(const ConfusionMatrix& cm);

/// Mean of -[y ln p + (1-y) ln(1-p)] with p clamped to [1e-7, 1-1e-7].
double bce_loss(std::span<const int> labels, std::span<const double> predicted);

double rmse(std::span<const int> labels, std::span<const double> predicted);

struct RocPoint {
    double fpr = 0.0, tpr = 0.0;
};

/// Threshold sweep over the unique scores plus sentinels at both ends;
/// classifies score >= threshold as positive. AUC by trapezoid. Throws
/// MetricError when labels contain a single class.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

RocCurve roc_auc(std::span<const int> labels, std::span<const double> scores);

/// Mean of accuracy, AUC, and (1 - RMSE); all arguments must be in [0,1].
double sar(double accuracy, double auc, double rmse);

struct MetricsReport {
    ConfusionMatrix cm;
    double accuracy = 0.0;
    double bce_loss = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
    std::vector<RocPoint> roc_points;
    double auc = 0.0;
    double rmse = 0.0;
    double sar = 0.0;

    std::string to_text() const;  // key-value lines
};

/// Everything above in one pass: signals drive the confusion matrix,
/// scores drive loss/ROC/RMSE.
MetricsReport compute_metrics(std::span<const int> labels, std::span<const double> scores,
                              std::span<const int> signals);

struct OnsetReport {
    std::size_t total_crisis_days = 0;
    std::size_t correct_predictions = 0;  // crisis days with an active warning
    double pct_correct = 0.0;
    std::size_t total_onsets = 0;
    std::size_t predicted_onsets = 0;
    double pct_onsets = 0.0;
    double false_onset_alarms_pct = 0.0;
    double avg_days_ahead = 0.0;

    std::string to_text() const;
};

/// Onset = rising edge of the label series (index 0 counts when label_0=1).
/// An onset at i is predicted when any signal fires in [i-horizon, i];
/// days-ahead measures back to the earliest such signal on a non-crisis
/// day. A signal onset with no true onset in [j, j+horizon] is a false
/// onset alarm, reported as a percentage of signal onsets.
OnsetReport onset_analysis(std::span<const int> labels, std::span<const int> signals,
                           std::size_t horizon);

enum class PredictorKind { lstm, bpnn };

struct FoldMetrics {
    double accuracy = 0.0;
    double bce_loss = 0.0;
};

struct CvReport {
    std::vector<FoldMetrics> folds;
    FoldMetrics mean;
};

/// Chronological k-fold over rows [test_begin, rows): each fold is held
/// out, the predictor trains on every window whose target row lies outside
/// the fold, and fold accuracy uses the 0.5 probability threshold.
CvReport kfold_cv(const FeaturePanel& panel, std::span<const int> labels,
                  std::size_t test_begin, std::size_t k, const TrainConfig& cfg,
                  PredictorKind kind);

}  // namespace ews
