#pragma once

#include "ews/data.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ews {

/// Uniform-bin histogram on [0,1] with a centered moving-average overlay
/// (window truncated at the edges).
struct SmoothedHistogram {
    std::vector<double> bin_edges;      // bins + 1 edges spanning [0,1]
    std::vector<std::size_t> counts;
    std::vector<double> smoothed;

    std::size_t bins() const { return counts.size(); }
    double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
};

SmoothedHistogram build_histogram(std::span<const double> values, std::size_t bins,
                                  std::size_t smooth_window);

/// Cutoff selection: the two tallest strict local maxima of the smoothed
/// histogram (ties prefer wider separation, then the leftmost pair) bracket
/// the valley — the leftmost minimum-smoothed bin strictly between them —
/// and the cutoff is that bin's center. Fewer than two peaks falls back to
/// 0.5 with the fallback flag set.
struct TwoPeakResult {
    double cutoff = 0.5;
    bool fallback = false;
    SmoothedHistogram histogram;
    std::vector<std::size_t> peak_bins;  // every strict local maximum
    std::size_t peak_low = 0;            // chosen pair; meaningful when !fallback
    std::size_t peak_high = 0;
    std::size_t valley = 0;
};

TwoPeakResult two_peak_cutoff(std::span<const double> values, std::size_t bins = 50,
                              std::size_t smooth_window = 3);

/// Binary crisis labels with the per-date decision threshold that produced
/// them. For probability labeling the rule is label = 1{prob >= cutoff};
/// the CMAX comparator stores its per-date lower bound mu - lambda*sigma
/// instead (label = 1 when CMAX falls below it).
struct CrisisSeries {
    std::vector<Date> dates;
    std::vector<int> labels;
    std::vector<double> cutoff;

    std::size_t size() const { return labels.size(); }
};

std::vector<int> label_crises(std::span<const double> prob_high, double cutoff);
CrisisSeries label_crises(const std::vector<Date>& dates, std::span<const double> prob_high,
                          double cutoff);

/// Summary of a cutoff path. The mode is taken over values rounded to three
/// decimals, ties resolved toward the smallest value; stdev is the sample
/// standard deviation (zero for a single observation).
struct CutoffStatistics {
    std::size_t count = 0;
    double mean = 0.0;
    double stdev = 0.0;
    double median = 0.0;
    double mode = 0.0;
    double min = 0.0;
    double max = 0.0;
    double range = 0.0;
};

CutoffStatistics cutoff_statistics(std::span<const double> cutoffs);

/// Drawdown comparator: CMAX_t = close_t / max(close over the trailing
/// `window` days, truncated at the head); label_t = 1 when CMAX_t drops
/// below its expanding-window mean minus lambda standard deviations
/// (population stdev). Dates align with the price series.
CrisisSeries cmax_labels(const PriceSeries& prices, std::size_t window, double lambda);

}  // namespace ews
