#include "ews/data.hpp"

#include "ews/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

namespace ews {

void PriceSeries::validate() const {
    if (dates.size() != close.size())
        throw ValidationError("price series: date and close lengths differ");
    if (dates.size() < 2)
        throw ValidationError("price series: need at least two rows");
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (!(close[i] > 0.0))
            throw ValidationError("price series: non-positive close at " + dates[i].to_string());
        if (i > 0 && !(dates[i - 1] < dates[i]))
            throw ValidationError("price series: dates not strictly increasing at " +
                                  dates[i].to_string());
    }
}

ReturnSeries log_returns(const PriceSeries& prices) {
    prices.validate();
    ReturnSeries out;
    out.dates.assign(prices.dates.begin() + 1, prices.dates.end());
    out.values.resize(prices.close.size() - 1);
    for (std::size_t i = 1; i < prices.close.size(); ++i)
        out.values[i - 1] = 100.0 * std::log(prices.close[i] / prices.close[i - 1]);
    return out;
}

double realized_volatility(std::span<const double> returns, std::size_t t) {
    if (t >= returns.size())
        throw ValidationError("realized_volatility: index out of range");
    if (t < 1)
        throw ValidationError("realized_volatility: need at least two returns");
    double mean = 0.0;
    for (std::size_t i = 0; i <= t; ++i) mean += returns[i];
    mean /= static_cast<double>(t + 1);
    double ss = 0.0;
    for (std::size_t i = 0; i <= t; ++i) {
        const double d = returns[i] - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(t + 1));
}

double realized_volatility(const ReturnSeries& returns, std::size_t t) {
    return realized_volatility(std::span<const double>(returns.values), t);
}

bool FeatureTable::has_column(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::size_t FeatureTable::column_index(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw ValidationError("no column named '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

const std::vector<double>& FeatureTable::column(const std::string& name) const {
    return columns[column_index(name)];
}

void FeatureTable::add_column(std::string name, std::vector<double> values) {
    if (has_column(name))
        throw ValidationError("duplicate column '" + name + "'");
    if (values.size() != dates.size())
        throw ValidationError("column '" + name + "' length does not match date axis");
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

FeatureTable FeatureTable::slice(std::size_t first, std::size_t last) const {
    if (first > last || last > rows())
        throw ValidationError("slice: bad row range");
    FeatureTable out;
    out.dates.assign(dates.begin() + static_cast<std::ptrdiff_t>(first),
                     dates.begin() + static_cast<std::ptrdiff_t>(last));
    out.names = names;
    out.columns.reserve(columns.size());
    for (const auto& col : columns)
        out.columns.emplace_back(col.begin() + static_cast<std::ptrdiff_t>(first),
                                 col.begin() + static_cast<std::ptrdiff_t>(last));
    return out;
}

void FeatureTable::validate() const {
    if (names.size() != columns.size())
        throw ValidationError("table: name and column counts differ");
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c].size() != dates.size())
            throw ValidationError("table: column '" + names[c] + "' length differs from date axis");
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (!(dates[i - 1] < dates[i]))
            throw ValidationError("table: dates not strictly increasing at " +
                                  dates[i].to_string());
}

FeaturePanel align_panel(const FeatureTable& daily, const FeatureTable& monthly) {
    daily.validate();
    monthly.validate();
    if (monthly.cols() == 0) return daily;

    // NaN cells in the monthly table mean "not observed yet"; each column's
    // coverage begins at its first finite value.
    Date first_covered = monthly.dates.front();
    for (std::size_t c = 0; c < monthly.cols(); ++c) {
        std::size_t m = 0;
        while (m < monthly.rows() && std::isnan(monthly.columns[c][m])) ++m;
        if (m == monthly.rows() || daily.dates.back() < monthly.dates[m])
            throw ValidationError("align_panel: no usable observations for column '" +
                                  monthly.names[c] + "'");
        first_covered = std::max(first_covered, monthly.dates[m]);
    }

    // Drop daily head rows that precede full coverage.
    std::size_t start = 0;
    while (start < daily.rows() && daily.dates[start] < first_covered) ++start;
    FeaturePanel out = daily.slice(start, daily.rows());

    for (std::size_t c = 0; c < monthly.cols(); ++c) {
        std::vector<double> filled(out.rows());
        std::size_t m = 0;      // monthly rows consumed so far
        double held = 0.0;      // latest finite value dated <= current day
        for (std::size_t r = 0; r < out.rows(); ++r) {
            while (m < monthly.rows() && !(out.dates[r] < monthly.dates[m])) {
                if (!std::isnan(monthly.columns[c][m])) held = monthly.columns[c][m];
                ++m;
            }
            filled[r] = held;
        }
        out.add_column(monthly.names[c], std::move(filled));
    }
    return out;
}

Standardizer Standardizer::fit(const FeaturePanel& panel, std::size_t row_begin,
                               std::size_t row_end) {
    if (row_begin >= row_end || row_end > panel.rows())
        throw ValidationError("standardizer: bad fit range");
    const auto n = static_cast<double>(row_end - row_begin);
    Standardizer s;
    s.mean.resize(panel.cols());
    s.stdev.resize(panel.cols());
    for (std::size_t c = 0; c < panel.cols(); ++c) {
        double mu = 0.0;
        for (std::size_t r = row_begin; r < row_end; ++r) mu += panel.columns[c][r];
        mu /= n;
        double ss = 0.0;
        for (std::size_t r = row_begin; r < row_end; ++r) {
            const double d = panel.columns[c][r] - mu;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / n);
        s.mean[c] = mu;
        s.stdev[c] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

FeaturePanel Standardizer::apply(const FeaturePanel& panel) const {
    if (panel.cols() != mean.size())
        throw ValidationError("standardizer: column count mismatch");
    FeaturePanel out = panel;
    for (std::size_t c = 0; c < out.cols(); ++c)
        for (auto& v : out.columns[c]) v = (v - mean[c]) / stdev[c];
    return out;
}

std::vector<double> Standardizer::apply_row(const FeaturePanel& panel, std::size_t row) const {
    if (panel.cols() != mean.size())
        throw ValidationError("standardizer: column count mismatch");
    if (row >= panel.rows())
        throw ValidationError("standardizer: row out of range");
    std::vector<double> out(panel.cols());
    for (std::size_t c = 0; c < panel.cols(); ++c)
        out[c] = (panel.columns[c][row] - mean[c]) / stdev[c];
    return out;
}

}  // namespace ews
