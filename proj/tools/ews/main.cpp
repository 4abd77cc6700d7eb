// Command-line front end for the turbulence early-warning library.
//
// Subcommands: simulate, fit, label, train, predict, evaluate, backtest.
// Data goes to files, logs to stderr. Every subcommand that writes files
// also writes <first-output>.manifest.json recording the config snapshot,
// input/output digests and timings. Exit codes: 0 success, 1 I/O or data
// error, 2 usage or validation error, 3 numeric/estimation failure.

#include "ews/backtest.hpp"
#include "ews/csv.hpp"
#include "ews/errors.hpp"
#include "ews/estimate.hpp"
#include "ews/hash.hpp"
#include "ews/metrics.hpp"
#include "ews/neural.hpp"
#include "ews/pipeline.hpp"
#include "ews/swarch.hpp"
#include "ews/threshold.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ews::IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ews::IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ews::IoError("write failed for '" + path + "'");
}

std::string file_digest(const std::string& path) {
    const std::string bytes = read_file(path);
    ews::Fnv64 h;
    h.update(bytes.data(), bytes.size());
    return ews::to_hex(h.digest());
}

/// Gathers what a run touched; written last so output digests are final.
class Manifest {
public:
    Manifest(std::string command, std::uint64_t seed) : command_(std::move(command)) {
        body_["command"] = command_;
        body_["seed"] = seed;
        start_ = std::chrono::steady_clock::now();
    }

    void config(const json& snapshot) { body_["config"] = snapshot; }
    void input(const std::string& path) { body_["inputs"][path] = file_digest(path); }
    void output(const std::string& path) { outputs_.push_back(path); }

    void write() {
        if (outputs_.empty()) return;
        for (const auto& p : outputs_) body_["outputs"][p] = file_digest(p);
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start_);
        body_["timings_ms"] = elapsed.count();
        write_file(outputs_.front() + ".manifest.json", body_.dump(2) + "\n");
    }

private:
    std::string command_;
    json body_;
    std::vector<std::string> outputs_;
    std::chrono::steady_clock::time_point start_;
};

// --- config file <-> EwsConfig ---------------------------------------------

ews::EwsConfig load_config(const std::string& path) {
    ews::EwsConfig cfg;
    if (path.empty()) return cfg;
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ews::ParseError("config '" + path + "': " + e.what());
    }
    const auto get = [&](const json& obj, const char* key, auto& field) {
        if (obj.contains(key)) field = obj.at(key).get<std::decay_t<decltype(field)>>();
    };
    get(j, "window", cfg.window);
    get(j, "refit_stride", cfg.refit_stride);
    get(j, "train_stride", cfg.train_stride);
    get(j, "split", cfg.split);
    get(j, "warmup", cfg.warmup);
    get(j, "estimation_starts", cfg.estimation_starts);
    get(j, "seed", cfg.seed);
    get(j, "audit", cfg.audit);
    get(j, "return_column", cfg.return_column);
    get(j, "truth_column", cfg.truth_column);
    if (j.contains("predictor")) {
        const std::string name = j.at("predictor").get<std::string>();
        if (name == "lstm")
            cfg.predictor = ews::PredictorKind::lstm;
        else if (name == "bpnn")
            cfg.predictor = ews::PredictorKind::bpnn;
        else
            throw ews::ValidationError("config: predictor must be 'lstm' or 'bpnn'");
    }
    if (j.contains("train")) {
        const json& t = j.at("train");
        get(t, "batch_size", cfg.train.batch_size);
        get(t, "epochs", cfg.train.epochs);
        get(t, "learning_rate", cfg.train.learning_rate);
        get(t, "hidden", cfg.train.hidden);
        get(t, "clip_norm", cfg.train.clip_norm);
    }
    if (j.contains("threshold")) {
        const json& t = j.at("threshold");
        get(t, "bins", cfg.threshold.bins);
        get(t, "smooth_window", cfg.threshold.smooth_window);
    }
    return cfg;
}

json config_snapshot(const ews::EwsConfig& cfg) {
    json j;
    j["window"] = cfg.window;
    j["refit_stride"] = cfg.refit_stride;
    j["train_stride"] = cfg.train_stride;
    j["predictor"] = cfg.predictor == ews::PredictorKind::lstm ? "lstm" : "bpnn";
    j["split"] = cfg.split;
    j["warmup"] = cfg.warmup;
    j["estimation_starts"] = cfg.estimation_starts;
    j["seed"] = cfg.seed;
    j["audit"] = cfg.audit;
    j["return_column"] = cfg.return_column;
    j["truth_column"] = cfg.truth_column;
    j["train"] = {{"batch_size", cfg.train.batch_size},
                  {"epochs", cfg.train.epochs},
                  {"learning_rate", cfg.train.learning_rate},
                  {"hidden", cfg.train.hidden},
                  {"clip_norm", cfg.train.clip_norm}};
    j["threshold"] = {{"bins", cfg.threshold.bins},
                      {"smooth_window", cfg.threshold.smooth_window}};
    return j;
}

// --- record stream ----------------------------------------------------------

void write_records(const std::string& path, const std::vector<ews::WarningRecord>& records) {
    std::ostringstream out;
    out << "date,prob_high,cutoff,predicted,signal,true_label,suppressed,estimation_reused\n";
    for (const auto& r : records) {
        out << r.date.to_string() << ',' << ews::format_double(r.prob_high) << ','
            << ews::format_double(r.cutoff) << ',' << ews::format_double(r.predicted) << ','
            << r.signal << ',' << r.true_label << ',' << (r.suppressed ? 1 : 0) << ','
            << (r.estimation_reused ? 1 : 0) << '\n';
    }
    write_file(path, out.str());
}

std::vector<ews::WarningRecord> read_records(const std::string& path) {
    const ews::FeatureTable t = ews::read_table(path);
    std::vector<ews::WarningRecord> records(t.rows());
    const auto& prob = t.column("prob_high");
    const auto& cut = t.column("cutoff");
    const auto& pred = t.column("predicted");
    const auto& sig = t.column("signal");
    const auto& truth = t.column("true_label");
    const auto& sup = t.column("suppressed");
    const auto& reused = t.column("estimation_reused");
    for (std::size_t i = 0; i < t.rows(); ++i) {
        records[i].date = t.dates[i];
        records[i].prob_high = prob[i];
        records[i].cutoff = cut[i];
        records[i].predicted = pred[i];
        records[i].signal = static_cast<int>(std::lround(sig[i]));
        records[i].true_label = static_cast<int>(std::lround(truth[i]));
        records[i].suppressed = sup[i] != 0.0;
        records[i].estimation_reused = reused[i] != 0.0;
    }
    return records;
}

// --- subcommand payloads ----------------------------------------------------

struct SimulateArgs {
    std::size_t length = 2000;
    std::uint64_t seed = 42;
    std::string out;
    ews::SwarchParams params{0.05, 0.05, 0.5, 0.3, 4.0, 0.98, 0.95};
};

int run_simulate(const SimulateArgs& a) {
    Manifest manifest("simulate", a.seed);
    const ews::SimulatedPath path = ews::simulate_swarch(a.params, a.length, a.seed);

    ews::FeatureTable panel;
    panel.dates = path.returns.dates;
    std::vector<double> close(a.length), abs_ret(a.length), truth(a.length);
    double level = 100.0;
    for (std::size_t t = 0; t < a.length; ++t) {
        level *= std::exp(path.returns.values[t] / 100.0);
        close[t] = level;
        abs_ret[t] = std::fabs(path.returns.values[t]);
        truth[t] = path.true_states[t] == 2 ? 1.0 : 0.0;
    }
    panel.add_column("close", std::move(close));
    panel.add_column("return", path.returns.values);
    panel.add_column("abs_return", std::move(abs_ret));
    panel.add_column("truth", std::move(truth));
    ews::write_table(a.out, panel);

    manifest.output(a.out);
    manifest.write();
    std::cerr << "simulate: wrote " << a.length << " rows to " << a.out << "\n";
    return 0;
}

struct FitArgs {
    std::string input, out, probs_out;
    std::string return_column = "return";
    std::size_t starts = 5;
    std::uint64_t seed = 42;
};

int run_fit(const FitArgs& a) {
    Manifest manifest("fit", a.seed);
    manifest.input(a.input);
    const ews::FeatureTable panel = ews::read_table(a.input);

    ews::EstimateOptions opts;
    opts.starts = a.starts;
    opts.seed = a.seed;
    const ews::EstimationResult est = ews::estimate_swarch(
        std::span<const double>(panel.column(a.return_column)), opts);

    std::string text = est.params.to_text();
    text += "log_likelihood " + ews::format_double(est.log_likelihood) + "\n";
    text += "converged " + std::to_string(est.converged ? 1 : 0) + "\n";
    text += "degenerate " + std::to_string(est.degenerate ? 1 : 0) + "\n";
    write_file(a.out, text);
    manifest.output(a.out);
    if (!est.notes.empty()) std::cerr << "fit: " << est.notes << "\n";

    if (!a.probs_out.empty()) {
        ews::FeatureTable probs;
        probs.dates.assign(panel.dates.begin() + static_cast<std::ptrdiff_t>(est.filter.offset),
                           panel.dates.end());
        probs.add_column("prob_high", est.filter.prob_high);
        ews::write_table(a.probs_out, probs);
        manifest.output(a.probs_out);
    }
    manifest.write();
    return 0;
}

struct LabelArgs {
    std::string method = "two_peak";
    std::string probs, input, out, histogram_out;
    std::size_t bins = 50, smooth = 3;
    std::string close_column = "close";
    std::size_t window = 60;
    double lambda = 2.0;
};

int run_label(const LabelArgs& a) {
    Manifest manifest("label", 0);
    ews::CrisisSeries crises;
    std::optional<ews::SmoothedHistogram> hist;

    if (a.method == "two_peak") {
        if (a.probs.empty())
            throw ews::ValidationError("label: --probs is required for the two_peak method");
        manifest.input(a.probs);
        const ews::FeatureTable t = ews::read_table(a.probs);
        const auto& prob = t.column("prob_high");
        const ews::TwoPeakResult tp = ews::two_peak_cutoff(prob, a.bins, a.smooth);
        if (tp.fallback) std::cerr << "label: fewer than two peaks, fallback cutoff 0.5\n";
        crises = ews::label_crises(t.dates, prob, tp.cutoff);
        hist = tp.histogram;
    } else if (a.method == "cmax") {
        if (a.input.empty())
            throw ews::ValidationError("label: --input is required for the cmax method");
        manifest.input(a.input);
        const ews::FeatureTable t = ews::read_table(a.input);
        ews::PriceSeries prices;
        prices.dates = t.dates;
        prices.close = t.column(a.close_column);
        crises = ews::cmax_labels(prices, a.window, a.lambda);
    } else {
        throw ews::ValidationError("label: method must be two_peak or cmax");
    }

    std::ostringstream out;
    out << "date,label,cutoff\n";
    for (std::size_t i = 0; i < crises.size(); ++i)
        out << crises.dates[i].to_string() << ',' << crises.labels[i] << ','
            << ews::format_double(crises.cutoff[i]) << '\n';
    write_file(a.out, out.str());
    manifest.output(a.out);

    if (!a.histogram_out.empty() && hist) {
        std::ostringstream h;
        h << "bin_center,count,smoothed\n";
        for (std::size_t i = 0; i < hist->bins(); ++i)
            h << ews::format_double(hist->bin_center(i)) << ',' << hist->counts[i] << ','
              << ews::format_double(hist->smoothed[i]) << '\n';
        write_file(a.histogram_out, h.str());
        manifest.output(a.histogram_out);
    }
    manifest.write();
    return 0;
}

struct TrainArgs {
    std::string input, labels, out;
    std::string config;
    std::string predictor = "lstm";
    std::size_t kfold = 0;
    std::optional<std::size_t> epochs, batch, hidden, window;
    std::optional<double> learning_rate, split;
    std::optional<std::uint64_t> seed;
};

int run_train(const TrainArgs& a) {
    ews::EwsConfig cfg = load_config(a.config);
    if (a.predictor == "bpnn") cfg.predictor = ews::PredictorKind::bpnn;
    if (a.epochs) cfg.train.epochs = *a.epochs;
    if (a.batch) cfg.train.batch_size = *a.batch;
    if (a.hidden) cfg.train.hidden = *a.hidden;
    if (a.window) cfg.window = *a.window;
    if (a.learning_rate) cfg.train.learning_rate = *a.learning_rate;
    if (a.split) cfg.split = *a.split;
    if (a.seed) cfg.seed = *a.seed;
    cfg.train.window = cfg.window;
    cfg.train.seed = cfg.seed;

    Manifest manifest(a.kfold > 0 ? "train --kfold" : "train", cfg.seed);
    manifest.config(config_snapshot(cfg));
    manifest.input(a.input);
    manifest.input(a.labels);

    ews::FeatureTable panel = ews::read_table(a.input);
    const ews::FeatureTable label_table = ews::read_table(a.labels);
    // Filter-derived labels start one day into the panel, so accept any
    // contiguous date sub-range and train on the matching panel rows.
    if (label_table.rows() == 0)
        throw ews::ValidationError("train: label file is empty");
    const auto first = std::find(panel.dates.begin(), panel.dates.end(),
                                 label_table.dates.front());
    const auto offset =
        static_cast<std::size_t>(std::distance(panel.dates.begin(), first));
    if (first == panel.dates.end() ||
        offset + label_table.rows() > panel.rows() ||
        !std::equal(label_table.dates.begin(), label_table.dates.end(),
                    panel.dates.begin() + static_cast<std::ptrdiff_t>(offset)))
        throw ews::ValidationError(
            "train: label dates must form a contiguous range of the panel's date axis");
    if (offset > 0 || label_table.rows() < panel.rows())
        panel = panel.slice(offset, offset + label_table.rows());
    std::vector<int> labels(panel.rows());
    const auto& raw = label_table.column("label");
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = static_cast<int>(std::lround(raw[i]));

    // Batch utility: standardizes over the whole file (the dynamic
    // `predict` command is the one with the strict as-of-day guarantees).
    const ews::Standardizer stats = ews::Standardizer::fit(panel, 0, panel.rows());
    const ews::FeaturePanel spanel = stats.apply(panel);

    if (a.kfold > 0) {
        const auto test_begin = static_cast<std::size_t>(
            static_cast<double>(panel.rows()) * cfg.split);
        const ews::CvReport report = ews::kfold_cv(spanel, labels, test_begin, a.kfold,
                                                   cfg.train, cfg.predictor);
        std::ostringstream out;
        out << "fold,accuracy,bce_loss\n";
        for (std::size_t f = 0; f < report.folds.size(); ++f)
            out << f << ',' << ews::format_double(report.folds[f].accuracy) << ','
                << ews::format_double(report.folds[f].bce_loss) << '\n';
        out << "mean," << ews::format_double(report.mean.accuracy) << ','
            << ews::format_double(report.mean.bce_loss) << '\n';
        write_file(a.out, out.str());
    } else if (cfg.predictor == ews::PredictorKind::lstm) {
        const ews::TrainedLstm trained = ews::train_lstm(spanel, labels, cfg.train);
        write_file(a.out, trained.net.to_text());
        std::cerr << "train: final epoch loss "
                  << ews::format_double(trained.log.epoch_loss.back()) << ", "
                  << trained.log.clip_events << " clipped batches\n";
    } else {
        const ews::TrainedMlp trained = ews::train_mlp(spanel, labels, cfg.train);
        write_file(a.out, trained.net.to_text());
        std::cerr << "train: final epoch loss "
                  << ews::format_double(trained.log.epoch_loss.back()) << ", "
                  << trained.log.clip_events << " clipped batches\n";
    }
    manifest.output(a.out);
    manifest.write();
    return 0;
}

struct PredictArgs {
    std::string input, out, config;
    std::string audit_out, probs_out, cutoff_stats_out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> window, refit_stride, warmup;
    std::optional<std::string> predictor, truth_column;
    bool verbose = false;
};

int run_predict(const PredictArgs& a) {
    ews::EwsConfig cfg = load_config(a.config);
    if (a.seed) cfg.seed = *a.seed;
    if (a.window) cfg.window = *a.window;
    if (a.refit_stride) cfg.refit_stride = *a.refit_stride;
    if (a.warmup) cfg.warmup = *a.warmup;
    if (a.truth_column) cfg.truth_column = *a.truth_column;
    if (a.predictor) {
        if (*a.predictor == "lstm")
            cfg.predictor = ews::PredictorKind::lstm;
        else if (*a.predictor == "bpnn")
            cfg.predictor = ews::PredictorKind::bpnn;
        else
            throw ews::ValidationError("predict: predictor must be 'lstm' or 'bpnn'");
    }

    Manifest manifest("predict", cfg.seed);
    manifest.config(config_snapshot(cfg));
    manifest.input(a.input);
    const ews::FeatureTable panel = ews::read_table(a.input);

    const ews::EwsRun run = ews::run_ews(panel, cfg);
    write_records(a.out, run.records);
    manifest.output(a.out);
    if (a.verbose)
        std::cerr << "predict: " << run.records.size() << " records, " << run.refit_count
                  << " refits, " << run.retrain_count << " retrains, "
                  << run.estimation_failures << " estimation failures, "
                  << run.fallback_count << " cutoff fallbacks, " << run.suppressed_count
                  << " suppressed\n";

    if (!a.audit_out.empty()) {
        std::ostringstream out;
        out << "t,input_digest\n";
        for (const auto& s : run.audit)
            out << s.t << ',' << ews::to_hex(s.input_digest) << '\n';
        write_file(a.audit_out, out.str());
        manifest.output(a.audit_out);
    }
    if (!a.probs_out.empty() && !run.final_prob_high.empty()) {
        ews::FeatureTable probs;
        probs.dates.assign(panel.dates.begin() + 1,
                           panel.dates.begin() +
                               static_cast<std::ptrdiff_t>(run.final_prob_high.size() + 1));
        probs.add_column("prob_high", run.final_prob_high);
        ews::write_table(a.probs_out, probs);
        manifest.output(a.probs_out);
    }
    if (!a.cutoff_stats_out.empty() && !run.cutoffs.empty()) {
        const ews::CutoffStatistics st = ews::cutoff_statistics(run.cutoffs);
        std::string text;
        text += "count " + std::to_string(st.count) + "\n";
        text += "mean " + ews::format_double(st.mean) + "\n";
        text += "stdev " + ews::format_double(st.stdev) + "\n";
        text += "median " + ews::format_double(st.median) + "\n";
        text += "mode " + ews::format_double(st.mode) + "\n";
        text += "min " + ews::format_double(st.min) + "\n";
        text += "max " + ews::format_double(st.max) + "\n";
        text += "range " + ews::format_double(st.range) + "\n";
        write_file(a.cutoff_stats_out, text);
        manifest.output(a.cutoff_stats_out);
    }
    manifest.write();
    return 0;
}

struct EvaluateArgs {
    std::string records, out, roc_out, onsets_out;
    std::size_t horizon = 5;
};

int run_evaluate(const EvaluateArgs& a) {
    Manifest manifest("evaluate", 0);
    manifest.input(a.records);
    const std::vector<ews::WarningRecord> records = read_records(a.records);

    std::vector<int> labels, signals;
    std::vector<double> scores;
    for (const auto& r : records) {
        if (r.suppressed || (r.true_label != 0 && r.true_label != 1)) continue;
        labels.push_back(r.true_label);
        signals.push_back(r.signal);
        scores.push_back(r.predicted);
    }
    if (labels.empty())
        throw ews::ValidationError(
            "evaluate: no usable records (need true_label set and unsuppressed rows)");

    const ews::MetricsReport report = ews::compute_metrics(labels, scores, signals);
    write_file(a.out, report.to_text());
    manifest.output(a.out);

    if (!a.roc_out.empty()) {
        std::ostringstream out;
        out << "fpr,tpr\n";
        for (const auto& p : report.roc_points)
            out << ews::format_double(p.fpr) << ',' << ews::format_double(p.tpr) << '\n';
        write_file(a.roc_out, out.str());
        manifest.output(a.roc_out);
    }
    if (!a.onsets_out.empty()) {
        const ews::OnsetReport onsets = ews::onset_analysis(labels, signals, a.horizon);
        write_file(a.onsets_out, onsets.to_text());
        manifest.output(a.onsets_out);
    }
    manifest.write();
    return 0;
}

struct BacktestArgs {
    std::string input, records, out;
    std::string close_column = "close";
    double risk_free = 0.0;
    double cost = 0.0;
};

int run_backtest_cmd(const BacktestArgs& a) {
    Manifest manifest("backtest", 0);
    manifest.input(a.input);
    manifest.input(a.records);

    const ews::FeatureTable panel = ews::read_table(a.input);
    ews::PriceSeries prices;
    prices.dates = panel.dates;
    prices.close = panel.column(a.close_column);

    const std::vector<ews::WarningRecord> records = read_records(a.records);
    std::map<ews::Date, int> signal_on;  // information date -> signal
    for (const auto& r : records)
        if (!r.suppressed) signal_on[r.date] = r.signal;

    // Return day k spans rows k..k+1; the decision for it was made on row
    // k's date. Days without a record stay fully invested.
    std::vector<int> signals(prices.size() - 1, 0);
    for (std::size_t k = 0; k < signals.size(); ++k) {
        const auto it = signal_on.find(prices.dates[k]);
        if (it != signal_on.end()) signals[k] = it->second;
    }

    ews::BacktestOptions opts;
    opts.risk_free = a.risk_free;
    opts.transaction_cost = a.cost;
    const ews::BacktestResult strategy = ews::run_backtest(prices, signals, opts);
    const std::vector<int> hold(signals.size(), 0);
    const ews::BacktestResult market = ews::run_backtest(prices, hold, opts);

    std::ostringstream out;
    out << "model,expected_return,stdev,sharpe,n_days,n_exits\n";
    const auto row = [&](const char* name, const ews::BacktestResult& r) {
        out << name << ',' << ews::format_double(r.expected_return) << ','
            << ews::format_double(r.stdev) << ','
            << (r.sharpe_defined ? ews::format_double(r.sharpe) : std::string("undefined"))
            << ',' << r.n_days << ',' << r.n_exits << '\n';
    };
    row("market", market);
    row("strategy", strategy);
    write_file(a.out, out.str());
    manifest.output(a.out);
    manifest.write();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stock-turbulence early warning system"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 1 I/O or data error, 2 usage error, 3 numeric failure.");

    SimulateArgs sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "Generate a synthetic regime-switching panel");
    c_sim->add_option("--t", sim.length, "Number of daily rows")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    c_sim->add_option("--out", sim.out, "Output panel file")->required();
    c_sim->add_option("--u", sim.params.u, "Mean return level")->capture_default_str();
    c_sim->add_option("--theta1", sim.params.theta1, "AR(1) coefficient")->capture_default_str();
    c_sim->add_option("--alpha0", sim.params.alpha0, "ARCH constant")->capture_default_str();
    c_sim->add_option("--alpha1", sim.params.alpha1, "ARCH coefficient")->capture_default_str();
    c_sim->add_option("--gamma2", sim.params.gamma2, "High-regime variance scale")
        ->capture_default_str();
    c_sim->add_option("--p11", sim.params.p11, "Low-regime stay probability")
        ->capture_default_str();
    c_sim->add_option("--p22", sim.params.p22, "High-regime stay probability")
        ->capture_default_str();

    FitArgs fit;
    CLI::App* c_fit = app.add_subcommand("fit", "Fit the switching-volatility model once");
    c_fit->add_option("--input", fit.input, "Panel file")->required();
    c_fit->add_option("--out", fit.out, "Parameter file")->required();
    c_fit->add_option("--probs", fit.probs_out, "Also write the filtered probability series");
    c_fit->add_option("--return-column", fit.return_column, "Return column name")
        ->capture_default_str();
    c_fit->add_option("--starts", fit.starts, "Optimizer starts")->capture_default_str();
    c_fit->add_option("--seed", fit.seed, "RNG seed")->capture_default_str();

    LabelArgs lab;
    CLI::App* c_lab = app.add_subcommand("label", "Produce binary crisis labels");
    c_lab->add_option("--method", lab.method, "two_peak or cmax")->capture_default_str();
    c_lab->add_option("--probs", lab.probs, "Probability series file (two_peak)");
    c_lab->add_option("--input", lab.input, "Panel file with prices (cmax)");
    c_lab->add_option("--out", lab.out, "Crisis series file")->required();
    c_lab->add_option("--histogram", lab.histogram_out, "Also write the smoothed histogram");
    c_lab->add_option("--bins", lab.bins, "Histogram bins")->capture_default_str();
    c_lab->add_option("--smooth", lab.smooth, "Smoothing window")->capture_default_str();
    c_lab->add_option("--close-column", lab.close_column, "Close column name (cmax)")
        ->capture_default_str();
    c_lab->add_option("--window", lab.window, "Trailing max window (cmax)")
        ->capture_default_str();
    c_lab->add_option("--lambda", lab.lambda, "Deviation multiplier (cmax)")
        ->capture_default_str();

    TrainArgs tr;
    CLI::App* c_tr = app.add_subcommand("train", "Train a predictor on fixed labels");
    c_tr->add_option("--input", tr.input, "Panel file")->required();
    c_tr->add_option("--labels", tr.labels, "Crisis series file")->required();
    c_tr->add_option("--out", tr.out, "Model file (or CV report with --kfold)")->required();
    c_tr->add_option("--config", tr.config, "JSON config file");
    c_tr->add_option("--predictor", tr.predictor, "lstm or bpnn")->capture_default_str();
    c_tr->add_option("--kfold", tr.kfold, "Run chronological k-fold CV instead of training");
    c_tr->add_option("--epochs", tr.epochs, "Training epochs");
    c_tr->add_option("--batch", tr.batch, "Mini-batch size");
    c_tr->add_option("--hidden", tr.hidden, "Hidden units");
    c_tr->add_option("--window", tr.window, "Input window length");
    c_tr->add_option("--learning-rate", tr.learning_rate, "Gradient step size");
    c_tr->add_option("--split", tr.split, "Train fraction (CV test range)");
    c_tr->add_option("--seed", tr.seed, "RNG seed");

    PredictArgs pr;
    CLI::App* c_pr = app.add_subcommand("predict", "Run the daily recursive warning loop");
    c_pr->add_option("--input", pr.input, "Panel file")->required();
    c_pr->add_option("--out", pr.out, "Warning record file")->required();
    c_pr->add_option("--config", pr.config, "JSON config file");
    c_pr->add_option("--audit", pr.audit_out, "Also write per-step input digests");
    c_pr->add_option("--probs", pr.probs_out, "Also write the final filtered series");
    c_pr->add_option("--cutoff-stats", pr.cutoff_stats_out, "Also write cutoff statistics");
    c_pr->add_option("--seed", pr.seed, "RNG seed (overrides config)");
    c_pr->add_option("--window", pr.window, "Window length (overrides config)");
    c_pr->add_option("--refit-stride", pr.refit_stride, "Refit cadence (overrides config)");
    c_pr->add_option("--warmup", pr.warmup, "Warm-up observations (overrides config)");
    c_pr->add_option("--predictor", pr.predictor, "lstm or bpnn (overrides config)");
    c_pr->add_option("--truth-column", pr.truth_column, "Answer-key column (overrides config)");
    c_pr->add_flag("--verbose", pr.verbose, "Per-run diagnostics on stderr");

    EvaluateArgs ev;
    CLI::App* c_ev = app.add_subcommand("evaluate", "Score warning records against true labels");
    c_ev->add_option("--records", ev.records, "Warning record file")->required();
    c_ev->add_option("--out", ev.out, "Metrics report file")->required();
    c_ev->add_option("--roc", ev.roc_out, "Also write ROC points");
    c_ev->add_option("--onsets", ev.onsets_out, "Also write the onset report");
    c_ev->add_option("--horizon", ev.horizon, "Onset matching horizon")->capture_default_str();

    BacktestArgs bt;
    CLI::App* c_bt = app.add_subcommand("backtest", "Signal-gated strategy vs buy-and-hold");
    c_bt->add_option("--input", bt.input, "Panel file with prices")->required();
    c_bt->add_option("--records", bt.records, "Warning record file")->required();
    c_bt->add_option("--out", bt.out, "Result table file")->required();
    c_bt->add_option("--close-column", bt.close_column, "Close column name")
        ->capture_default_str();
    c_bt->add_option("--rf", bt.risk_free, "Daily risk-free rate")->capture_default_str();
    c_bt->add_option("--cost", bt.cost, "Per-switch transaction cost")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_fit->parsed()) return run_fit(fit);
        if (c_lab->parsed()) return run_label(lab);
        if (c_tr->parsed()) return run_train(tr);
        if (c_pr->parsed()) return run_predict(pr);
        if (c_ev->parsed()) return run_evaluate(ev);
        if (c_bt->parsed()) return run_backtest_cmd(bt);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ews::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const ews::EstimationError& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return 3;
    } catch (const ews::ValidationError& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return 2;
    } catch (const ews::ShapeError& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return 2;
    } catch (const ews::Error& e) {  // ParseError, IoError, MetricError
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
