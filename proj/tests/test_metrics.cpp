#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ews/errors.hpp"
#include "ews/metrics.hpp"
#include "ews/rng.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace ews;

TEST_CASE("confusion matrix on a hand fixture") {
    const std::vector<int> labels{1, 1, 0, 0, 1};
    const std::vector<int> signals{1, 0, 0, 1, 1};
    const ConfusionMatrix cm = confusion(labels, signals);
    CHECK(cm.tp == 2);
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 1);
    CHECK(cm.total() == 5);
    CHECK(accuracy(cm) == doctest::Approx(0.6));
    const auto [tpr, fpr] = tpr_fpr(cm);
    CHECK(tpr == doctest::Approx(2.0 / 3.0));
    CHECK(fpr == doctest::Approx(0.5));
    CHECK(crisis_recall(cm) == doctest::Approx(2.0 / 3.0));

    CHECK_THROWS_AS(confusion(labels, std::vector<int>{1, 0}), ValidationError);
}

TEST_CASE("degenerate denominators raise errors naming the metric") {
    const ConfusionMatrix no_pos = confusion(std::vector<int>{0, 0}, std::vector<int>{0, 1});
    CHECK_THROWS_WITH_AS(tpr_fpr(no_pos), doctest::Contains("tpr"), MetricError);
    const ConfusionMatrix no_neg = confusion(std::vector<int>{1, 1}, std::vector<int>{0, 1});
    CHECK_THROWS_WITH_AS(tpr_fpr(no_neg), doctest::Contains("fpr"), MetricError);
    CHECK_THROWS_WITH_AS(accuracy(ConfusionMatrix{}), doctest::Contains("accuracy"),
                         MetricError);
}

TEST_CASE("binary cross entropy and rmse on hand fixtures") {
    const std::vector<int> labels{1, 0};
    CHECK(bce_loss(labels, std::vector<double>{0.8, 0.3}) ==
          doctest::Approx(-(std::log(0.8) + std::log(0.7)) / 2.0).epsilon(1e-15));
    // Extreme predictions hit the clamp at both ends: -ln(1e-7) for the
    // missed positive, -ln(1 - 1e-7) for the correct negative.
    CHECK(bce_loss(labels, std::vector<double>{0.0, 0.0}) ==
          doctest::Approx((-std::log(1e-7) - std::log(1.0 - 1e-7)) / 2.0).epsilon(1e-12));
    CHECK(rmse(labels, std::vector<double>{0.8, 0.2}) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(bce_loss(std::vector<int>{}, std::vector<double>{}), ValidationError);
}

TEST_CASE("bce is minimized by the empirical rate") {
    // For constant predictions p, the loss is minimized at the base rate.
    const std::vector<int> labels{1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
    const auto at = [&](double p) {
        return bce_loss(labels, std::vector<double>(labels.size(), p));
    };
    const double base = at(0.3);
    for (const double p : {0.05, 0.2, 0.4, 0.6, 0.9}) CHECK(at(p) > base);
}

TEST_CASE("roc endpoints, monotonicity and perfect ranking") {
    const std::vector<int> labels{1, 1, 0, 0};
    SUBCASE("perfect separation") {
        const RocCurve c = roc_auc(labels, std::vector<double>{0.9, 0.8, 0.2, 0.1});
        CHECK(c.auc == doctest::Approx(1.0));
    }
    SUBCASE("inverted ranking") {
        const RocCurve c = roc_auc(labels, std::vector<double>{0.1, 0.2, 0.8, 0.9});
        CHECK(c.auc == doctest::Approx(0.0));
    }
    SUBCASE("all scores tied") {
        const RocCurve c = roc_auc(labels, std::vector<double>{0.5, 0.5, 0.5, 0.5});
        CHECK(c.auc == doctest::Approx(0.5));
    }
    SUBCASE("curve structure") {
        Rng rng(3);
        std::vector<int> l(60);
        std::vector<double> s(60);
        for (std::size_t i = 0; i < 60; ++i) {
            l[i] = rng.uniform01() < 0.4 ? 1 : 0;
            s[i] = rng.uniform01();
        }
        l[0] = 1;
        l[1] = 0;
        const RocCurve c = roc_auc(l, s);
        REQUIRE(c.points.size() >= 2);
        CHECK(c.points.front().fpr == 0.0);
        CHECK(c.points.front().tpr == 0.0);
        CHECK(c.points.back().fpr == 1.0);
        CHECK(c.points.back().tpr == 1.0);
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            CHECK(c.points[i].fpr >= c.points[i - 1].fpr);
            CHECK(c.points[i].tpr >= c.points[i - 1].tpr);
        }
    }
    SUBCASE("single class is an error") {
        CHECK_THROWS_AS(roc_auc(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2}),
                        MetricError);
    }
}

TEST_CASE("trapezoid auc equals pairwise concordance") {
    Rng rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 20 + rng.below(60);
        std::vector<int> labels(n);
        std::vector<double> scores(n);
        std::set<double> used;
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rng.uniform01() < 0.5 ? 1 : 0;
            double s;
            do {
                s = rng.uniform01();
            } while (!used.insert(s).second);  // tie-free scores
            scores[i] = s;
            (labels[i] ? pos : neg) = true;
        }
        if (!pos) labels[0] = 1;
        if (!neg) labels[1] = 0;

        const RocCurve c = roc_auc(labels, scores);
        CHECK(c.auc == doctest::Approx(oracles::concordance(labels, scores)).epsilon(1e-10));
    }
}

TEST_CASE("auc handles ties by splitting the difference") {
    // Two positives and two negatives share a score; concordance (ties at
    // half weight) must still match the trapezoid area.
    const std::vector<int> labels{1, 1, 0, 0, 1, 0};
    const std::vector<double> scores{0.9, 0.5, 0.5, 0.1, 0.5, 0.5};
    const RocCurve c = roc_auc(labels, scores);
    CHECK(c.auc == doctest::Approx(oracles::concordance(labels, scores)).epsilon(1e-12));
}

TEST_CASE("sar averages its three ingredients") {
    CHECK(sar(0.8, 0.9, 0.2) == doctest::Approx((0.8 + 0.9 + 0.8) / 3.0).epsilon(1e-15));
    CHECK(sar(1.0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(sar(1.2, 0.5, 0.5), ValidationError);
    CHECK_THROWS_AS(sar(0.5, 0.5, -0.1), ValidationError);
}

TEST_CASE("the combined report is consistent with its parts") {
    Rng rng(17);
    const std::size_t n = 120;
    std::vector<int> labels(n), signals(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = rng.uniform01() < 0.3 ? 1 : 0;
        scores[i] = rng.uniform01();
        signals[i] = scores[i] > 0.5 ? 1 : 0;
    }
    labels[0] = 1;
    labels[1] = 0;

    const MetricsReport r = compute_metrics(labels, scores, signals);
    const ConfusionMatrix cm = confusion(labels, signals);
    CHECK(r.cm.tp == cm.tp);
    CHECK(r.accuracy == accuracy(cm));
    CHECK(r.bce_loss == bce_loss(labels, scores));
    CHECK(r.rmse == rmse(labels, scores));
    CHECK(r.auc == roc_auc(labels, scores).auc);
    CHECK(r.sar == doctest::Approx(sar(r.accuracy, r.auc, r.rmse)));
    CHECK_FALSE(r.to_text().empty());
}

TEST_CASE("onset analysis on a hand fixture") {
    //            idx: 0  1  2  3  4  5
    const std::vector<int> labels{0, 0, 1, 1, 0, 1};
    const std::vector<int> signals{0, 1, 0, 0, 0, 0};
    const OnsetReport r = onset_analysis(labels, signals, 2);

    CHECK(r.total_crisis_days == 3);
    CHECK(r.correct_predictions == 0);  // no signal on a crisis day
    CHECK(r.pct_correct == doctest::Approx(0.0));
    CHECK(r.total_onsets == 2);          // rising edges at 2 and 5
    CHECK(r.predicted_onsets == 1);      // the signal at 1 covers onset 2
    CHECK(r.pct_onsets == doctest::Approx(50.0));
    // The only signal onset (day 1) is followed by a true onset within the
    // horizon, so no false alarms.
    CHECK(r.false_onset_alarms_pct == doctest::Approx(0.0));
    // Lead time: onset at 2, earliest warning on a tranquil day is day 1.
    CHECK(r.avg_days_ahead == doctest::Approx(1.0));
}

TEST_CASE("onset edge rules") {
    SUBCASE("an onset at index zero counts") {
        const OnsetReport r = onset_analysis(std::vector<int>{1, 1, 0},
                                             std::vector<int>{1, 0, 0}, 3);
        CHECK(r.total_onsets == 1);
        CHECK(r.predicted_onsets == 1);
        CHECK(r.avg_days_ahead == doctest::Approx(0.0));  // same-day warning
    }
    SUBCASE("false alarms are signal onsets with no true onset in reach") {
        //            idx: 0  1  2  3  4  5  6
        const std::vector<int> labels{0, 0, 0, 0, 0, 0, 1};
        const std::vector<int> signals{1, 0, 0, 1, 0, 1, 0};
        const OnsetReport r = onset_analysis(labels, signals, 1);
        // Signal onsets at 0, 3, 5; only 5 is followed by the onset at 6.
        CHECK(r.false_onset_alarms_pct == doctest::Approx(100.0 * 2.0 / 3.0));
        CHECK(r.predicted_onsets == 1);
    }
    SUBCASE("no crises at all yields zero percentages") {
        const OnsetReport r = onset_analysis(std::vector<int>{0, 0, 0},
                                             std::vector<int>{0, 1, 0}, 2);
        CHECK(r.total_onsets == 0);
        CHECK(r.pct_onsets == 0.0);
        CHECK(r.pct_correct == 0.0);
        CHECK(r.avg_days_ahead == 0.0);
    }
    SUBCASE("no signals at all yields zero false-alarm share") {
        const OnsetReport r = onset_analysis(std::vector<int>{0, 1, 0},
                                             std::vector<int>{0, 0, 0}, 2);
        CHECK(r.false_onset_alarms_pct == 0.0);
    }
}

TEST_CASE("chronological cross validation") {
    // Panel with a learnable pattern; folds partition the evaluation range.
    const std::size_t n = 140;
    FeaturePanel panel;
    panel.dates.resize(n);
    std::vector<double> f(n);
    std::vector<int> labels(n);
    Rng rng(23);
    int lab = 0;
    for (std::size_t i = 0; i < n; ++i) {
        panel.dates[i] = Date{2012, 1, 1}.plus_days(static_cast<std::int64_t>(i));
        if (i % 13 == 0) lab = 1 - lab;
        labels[i] = lab;
        f[i] = (lab ? 1.0 : -1.0) + 0.2 * rng.normal();
    }
    panel.add_column("f", f);

    TrainConfig cfg;
    cfg.window = 3;
    cfg.batch_size = 8;
    cfg.epochs = 30;
    cfg.learning_rate = 0.2;
    cfg.hidden = 4;
    cfg.seed = 31;

    const CvReport r = kfold_cv(panel, labels, 98, 4, cfg, PredictorKind::lstm);
    REQUIRE(r.folds.size() == 4);
    double acc = 0.0, loss = 0.0;
    for (const auto& fold : r.folds) {
        CHECK(fold.accuracy >= 0.0);
        CHECK(fold.accuracy <= 1.0);
        acc += fold.accuracy;
        loss += fold.bce_loss;
    }
    CHECK(r.mean.accuracy == doctest::Approx(acc / 4.0));
    CHECK(r.mean.bce_loss == doctest::Approx(loss / 4.0));
    CHECK(r.mean.accuracy > 0.6);  // the pattern is easy

    // Deterministic under a fixed seed.
    const CvReport again = kfold_cv(panel, labels, 98, 4, cfg, PredictorKind::lstm);
    CHECK(again.mean.accuracy == r.mean.accuracy);
    CHECK(again.mean.bce_loss == r.mean.bce_loss);

    // The bpnn variant runs the same protocol.
    const CvReport mlp = kfold_cv(panel, labels, 98, 4, cfg, PredictorKind::bpnn);
    CHECK(mlp.folds.size() == 4);

    CHECK_THROWS_AS(kfold_cv(panel, labels, 98, 0, cfg, PredictorKind::lstm),
                    ValidationError);
    CHECK_THROWS_AS(kfold_cv(panel, labels, 139, 4, cfg, PredictorKind::lstm),
                    ValidationError);
}

TEST_CASE("cross validation rejects folds shorter than a training example") {
    const std::size_t n = 40;
    FeaturePanel panel;
    panel.dates.resize(n);
    std::vector<double> f(n, 0.0);
    std::vector<int> labels(n, 0);
    Rng rng(29);
    for (std::size_t i = 0; i < n; ++i) {
        panel.dates[i] = Date{2012, 1, 1}.plus_days(static_cast<std::int64_t>(i));
        f[i] = rng.normal();
        labels[i] = i % 2 == 0 ? 1 : 0;
    }
    panel.add_column("f", f);

    TrainConfig cfg;
    cfg.window = 3;
    cfg.batch_size = 4;
    cfg.epochs = 2;
    cfg.learning_rate = 0.05;
    cfg.hidden = 3;
    cfg.seed = 7;

    // 18 evaluation rows over 4 folds gives sizes 5,5,4,4 — all at least
    // window+1, so this must run...
    const CvReport r = kfold_cv(panel, labels, 22, 4, cfg, PredictorKind::lstm);
    CHECK(r.folds.size() == 4);
    // ...but 5 folds would leave a 3-row fold, too short for any window.
    CHECK_THROWS_AS(kfold_cv(panel, labels, 22, 5, cfg, PredictorKind::lstm),
                    ValidationError);
}
