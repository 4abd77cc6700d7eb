#pragma once

#include "ews/dates.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ews {

/// Daily close prices on a strictly increasing date axis.
struct PriceSeries {
    std::vector<Date> dates;
    std::vector<double> close;

    std::size_t size() const { return dates.size(); }

    /// Throws ValidationError unless dates are strictly increasing,
    /// every close is positive and there are at least two rows.
    void validate() const;
};

/// Log returns in percent: value_t = 100 * ln(close_t / close_{t-1}).
/// One row shorter than the price series it came from.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }
};

ReturnSeries log_returns(const PriceSeries& prices);

/// Root of the mean squared deviation of returns[0..t] from their running
/// mean. Requires t >= 1 (two observed returns).
double realized_volatility(const ReturnSeries& returns, std::size_t t);
double realized_volatility(std::span<const double> returns, std::size_t t);

/// Named columns on a shared date axis. Columns may be raw inputs (before
/// alignment) or the aligned panel fed to predictors; align_panel guarantees
/// the no-missing-cells invariant for its output.
struct FeatureTable {
    std::vector<Date> dates;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // columns[i].size() == dates.size()

    std::size_t rows() const { return dates.size(); }
    std::size_t cols() const { return names.size(); }

    bool has_column(const std::string& name) const;
    /// Throws ValidationError if absent.
    const std::vector<double>& column(const std::string& name) const;
    std::size_t column_index(const std::string& name) const;

    void add_column(std::string name, std::vector<double> values);

    /// Rows [first, last) as a new table.
    FeatureTable slice(std::size_t first, std::size_t last) const;

    /// Throws ValidationError when column lengths disagree with the date axis
    /// or dates are not strictly increasing.
    void validate() const;
};

/// The aligned daily panel: one shared date axis, no missing values.
using FeaturePanel = FeatureTable;

/// Joins monthly (or other lower-frequency) columns onto the daily axis by
/// forward fill: each daily row takes the latest observation dated <= that
/// day. Head rows for which some monthly column has no observation yet are
/// dropped; if a column provides no coverage at all a ValidationError names
/// it. Passing an empty monthly table returns the daily table unchanged.
FeaturePanel align_panel(const FeatureTable& daily, const FeatureTable& monthly);

/// Per-column z-score transform with statistics frozen at fit time.
/// Constant columns get stdev 1 so they standardize to zero.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stdev;

    /// Fits on rows [row_begin, row_end) of the panel.
    static Standardizer fit(const FeaturePanel& panel, std::size_t row_begin, std::size_t row_end);

    FeaturePanel apply(const FeaturePanel& panel) const;
    std::vector<double> apply_row(const FeaturePanel& panel, std::size_t row) const;
};

}  // namespace ews
