#pragma once

#include "ews/data.hpp"

#include <span>
#include <string>

namespace ews {

/// Signal-gated hold/exit strategy statistics, all in daily log-return
/// percent. sharpe = (expected_return - rf)/stdev when stdev > 0;
/// otherwise sharpe_defined is false and sharpe holds 0.
struct BacktestResult {
    double expected_return = 0.0;
    double stdev = 0.0;
    double sharpe = 0.0;
    bool sharpe_defined = false;
    std::size_t n_days = 0;
    std::size_t n_exits = 0;  // market-to-cash transitions taken

    std::string to_text() const;
};

struct BacktestOptions {
    double risk_free = 0.0;
    /// Charged against the strategy return on every position change;
    /// exposed for sensitivity runs, zero by default.
    double transaction_cost = 0.0;
};

/// One signal per return day (signals.size() = prices.size() - 1). The
/// position on return day t is 1 - signal_{t-1} (full market exposure the
/// first day): a warning exits the market for the following day, and
/// tranquility re-enters it the day after. Strategy return = position x
/// market log return. stdev is the sample standard deviation.
BacktestResult run_backtest(const PriceSeries& prices, std::span<const int> signals,
                            const BacktestOptions& options = {});

/// Strategy daily returns themselves, for tests that check the masking
/// identity directly.
std::vector<double> strategy_returns(const PriceSeries& prices, std::span<const int> signals,
                                     const BacktestOptions& options = {});

}  // namespace ews
