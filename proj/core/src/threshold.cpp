#include "ews/threshold.hpp"

#include "ews/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace ews {

SmoothedHistogram build_histogram(std::span<const double> values, std::size_t bins,
                                  std::size_t smooth_window) {
    if (values.empty()) throw ValidationError("histogram: empty input");
    if (bins < 2) throw ValidationError("histogram: need at least 2 bins");
    if (smooth_window < 1) throw ValidationError("histogram: smoothing window must be >= 1");

    SmoothedHistogram h;
    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        h.bin_edges[i] = static_cast<double>(i) / static_cast<double>(bins);
    h.counts.assign(bins, 0);

    for (const double v : values) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("histogram: value outside [0,1]");
        auto bin = static_cast<std::size_t>(v * static_cast<double>(bins));
        if (bin == bins) bin = bins - 1;  // v == 1.0 belongs to the last bin
        ++h.counts[bin];
    }

    const std::size_t half = smooth_window / 2;
    h.smoothed.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(i + half, bins - 1);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += static_cast<double>(h.counts[j]);
        h.smoothed[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return h;
}

TwoPeakResult two_peak_cutoff(std::span<const double> values, std::size_t bins,
                              std::size_t smooth_window) {
    if (values.size() < 30)
        throw ValidationError("two_peak_cutoff: need at least 30 values");
    if (bins < 5) throw ValidationError("two_peak_cutoff: need at least 5 bins");

    TwoPeakResult result;
    result.histogram = build_histogram(values, bins, smooth_window);
    const auto& s = result.histogram.smoothed;
    const double neg_inf = -std::numeric_limits<double>::infinity();

    // Strict local maxima; a missing neighbor counts as -infinity so edge
    // bins can be peaks.
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double left = i > 0 ? s[i - 1] : neg_inf;
        const double right = i + 1 < s.size() ? s[i + 1] : neg_inf;
        if (s[i] > left && s[i] > right) result.peak_bins.push_back(i);
    }

    if (result.peak_bins.size() < 2) {
        result.fallback = true;
        result.cutoff = 0.5;
        return result;
    }

    // Two peaks with the greatest combined height; ties prefer wider
    // separation, then the leftmost pair.
    double best_height = neg_inf;
    std::size_t best_sep = 0;
    for (std::size_t a = 0; a < result.peak_bins.size(); ++a)
        for (std::size_t b = a + 1; b < result.peak_bins.size(); ++b) {
            const std::size_t lo = result.peak_bins[a], hi = result.peak_bins[b];
            const double height = s[lo] + s[hi];
            const std::size_t sep = hi - lo;
            if (height > best_height || (height == best_height && sep > best_sep)) {
                best_height = height;
                best_sep = sep;
                result.peak_low = lo;
                result.peak_high = hi;
            }
        }

    // Valley: leftmost minimum strictly between the chosen peaks.
    std::size_t valley = result.peak_low + 1;
    for (std::size_t i = valley + 1; i < result.peak_high; ++i)
        if (s[i] < s[valley]) valley = i;
    result.valley = valley;
    result.cutoff = result.histogram.bin_center(valley);
    return result;
}

std::vector<int> label_crises(std::span<const double> prob_high, double cutoff) {
    if (!(cutoff >= 0.0 && cutoff <= 1.0))
        throw ValidationError("label_crises: cutoff must lie in [0,1]");
    std::vector<int> labels(prob_high.size());
    for (std::size_t i = 0; i < prob_high.size(); ++i)
        labels[i] = prob_high[i] >= cutoff ? 1 : 0;
    return labels;
}

CrisisSeries label_crises(const std::vector<Date>& dates, std::span<const double> prob_high,
                          double cutoff) {
    if (dates.size() != prob_high.size())
        throw ValidationError("label_crises: date axis and probabilities differ in length");
    CrisisSeries out;
    out.dates = dates;
    out.labels = label_crises(prob_high, cutoff);
    out.cutoff.assign(prob_high.size(), cutoff);
    return out;
}

CutoffStatistics cutoff_statistics(std::span<const double> cutoffs) {
    if (cutoffs.empty()) throw ValidationError("cutoff_statistics: empty input");

    CutoffStatistics st;
    st.count = cutoffs.size();
    const auto n = static_cast<double>(cutoffs.size());

    for (const double c : cutoffs) st.mean += c;
    st.mean /= n;
    double ss = 0.0;
    for (const double c : cutoffs) {
        const double d = c - st.mean;
        ss += d * d;
    }
    st.stdev = cutoffs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

    std::vector<double> sorted(cutoffs.begin(), cutoffs.end());
    std::sort(sorted.begin(), sorted.end());
    st.min = sorted.front();
    st.max = sorted.back();
    st.range = st.max - st.min;
    const std::size_t mid = sorted.size() / 2;
    st.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    std::map<double, std::size_t> freq;  // keys rounded to 3 decimals; map keeps them ordered
    for (const double c : sorted) ++freq[std::round(c * 1000.0) / 1000.0];
    std::size_t best = 0;
    for (const auto& [value, count] : freq)
        if (count > best) {  // strictly greater: first (smallest) key wins ties
            best = count;
            st.mode = value;
        }
    return st;
}

CrisisSeries cmax_labels(const PriceSeries& prices, std::size_t window, double lambda) {
    prices.validate();
    if (window < 2) throw ValidationError("cmax_labels: window must be at least 2");
    if (prices.size() <= window)
        throw ValidationError("cmax_labels: need more prices than the window length");

    const std::size_t n = prices.size();
    std::vector<double> cmax(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t lo = t + 1 >= window ? t + 1 - window : 0;
        double peak = prices.close[lo];
        for (std::size_t j = lo + 1; j <= t; ++j) peak = std::max(peak, prices.close[j]);
        cmax[t] = prices.close[t] / peak;
    }

    CrisisSeries out;
    out.dates = prices.dates;
    out.labels.resize(n);
    out.cutoff.resize(n);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sum += cmax[t];
        sumsq += cmax[t] * cmax[t];
        const auto m = static_cast<double>(t + 1);
        const double mu = sum / m;
        const double var = std::max(sumsq / m - mu * mu, 0.0);
        const double bound = mu - lambda * std::sqrt(var);
        out.cutoff[t] = bound;
        out.labels[t] = cmax[t] < bound ? 1 : 0;
    }
    return out;
}

}  // namespace ews
