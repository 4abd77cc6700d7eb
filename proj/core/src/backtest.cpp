#include "ews/backtest.hpp"

#include "ews/csv.hpp"
#include "ews/errors.hpp"

#include <cmath>

namespace ews {

std::vector<double> strategy_returns(const PriceSeries& prices, std::span<const int> signals,
                                     const BacktestOptions& options) {
    const ReturnSeries market = log_returns(prices);
    if (signals.size() != market.size())
        throw ValidationError("backtest: need one signal per return day");
    for (const int s : signals)
        if (s != 0 && s != 1) throw ValidationError("backtest: signals must be 0 or 1");

    std::vector<double> out(market.size());
    int prev_position = 1;
    for (std::size_t t = 0; t < market.size(); ++t) {
        const int position = t == 0 ? 1 : 1 - signals[t - 1];
        out[t] = static_cast<double>(position) * market.values[t] -
                 options.transaction_cost * std::abs(position - prev_position);
        prev_position = position;
    }
    return out;
}

BacktestResult run_backtest(const PriceSeries& prices, std::span<const int> signals,
                            const BacktestOptions& options) {
    const std::vector<double> returns = strategy_returns(prices, signals, options);

    BacktestResult r;
    r.n_days = returns.size();
    int prev_position = 1;  // position on return day 0
    for (std::size_t t = 1; t < returns.size(); ++t) {
        const int position = 1 - signals[t - 1];
        if (prev_position == 1 && position == 0) ++r.n_exits;
        prev_position = position;
    }

    double sum = 0.0;
    for (const double v : returns) sum += v;
    r.expected_return = sum / static_cast<double>(returns.size());
    double ss = 0.0;
    for (const double v : returns) {
        const double d = v - r.expected_return;
        ss += d * d;
    }
    r.stdev = returns.size() > 1
                  ? std::sqrt(ss / static_cast<double>(returns.size() - 1))
                  : 0.0;
    if (r.stdev > 0.0) {
        r.sharpe = (r.expected_return - options.risk_free) / r.stdev;
        r.sharpe_defined = true;
    }
    return r;
}

std::string BacktestResult::to_text() const {
    std::string out;
    out += "expected_return " + format_double(expected_return) + "\n";
    out += "stdev " + format_double(stdev) + "\n";
    out += "sharpe " + (sharpe_defined ? format_double(sharpe) : std::string("undefined")) + "\n";
    out += "n_days " + std::to_string(n_days) + "\n";
    out += "n_exits " + std::to_string(n_exits) + "\n";
    return out;
}

}  // namespace ews
