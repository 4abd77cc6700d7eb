#include "ews/neural.hpp"

#include "ews/csv.hpp"
#include "ews/errors.hpp"
#include "ews/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace ews {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void fill_uniform(std::vector<double>& v, double radius, Rng& rng) {
    for (auto& x : v) x = (2.0 * rng.uniform01() - 1.0) * radius;
}

void check_dims(bool ok, const char* what) {
    if (!ok) throw ShapeError(what);
}

/// Per-step activations kept for backpropagation; row t holds step t.
struct LstmTrace {
    Matrix f, u, o, g, c, tanh_c, a;
    double yhat = 0.0;

    void resize(std::size_t steps, std::size_t hidden) {
        for (Matrix* m : {&f, &u, &o, &g, &c, &tanh_c, &a}) *m = Matrix(steps, hidden);
    }
};

double forward_traced(const LstmNetwork& net, const Matrix& window, LstmTrace& trace) {
    const std::size_t steps = window.rows, d = net.input_dim, h = net.hidden_dim;
    check_dims(window.cols == d, "lstm forward: window width != input_dim");
    check_dims(steps >= 1, "lstm forward: empty window");
    trace.resize(steps, h);

    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t j = 0; j < h; ++j) {
            double z[4] = {net.b[0][j], net.b[1][j], net.b[2][j], net.b[3][j]};
            for (std::size_t i = 0; i < d; ++i) {
                const double x = window(t, i);
                for (std::size_t gate = 0; gate < 4; ++gate) z[gate] += x * net.U[gate](i, j);
            }
            if (t > 0)
                for (std::size_t k = 0; k < h; ++k) {
                    const double ap = trace.a(t - 1, k);
                    for (std::size_t gate = 0; gate < 4; ++gate) z[gate] += ap * net.W[gate](k, j);
                }
            const double f = sigmoid(z[kForget]);
            const double u = sigmoid(z[kUpdate]);
            const double o = sigmoid(z[kOutput]);
            const double g = std::tanh(z[kCandidate]);
            const double c_prev = t > 0 ? trace.c(t - 1, j) : 0.0;
            const double c = f * c_prev + u * g;
            const double tc = std::tanh(c);
            trace.f(t, j) = f;
            trace.u(t, j) = u;
            trace.o(t, j) = o;
            trace.g(t, j) = g;
            trace.c(t, j) = c;
            trace.tanh_c(t, j) = tc;
            trace.a(t, j) = o * tc;
        }
    }

    double z_out = net.out_b;
    for (std::size_t j = 0; j < h; ++j) z_out += trace.a(steps - 1, j) * net.out_w[j];
    trace.yhat = sigmoid(z_out);
    return trace.yhat;
}

void zero_like(const LstmNetwork& net, LstmGradients& g) {
    for (std::size_t gate = 0; gate < 4; ++gate) {
        g.U[gate] = Matrix(net.input_dim, net.hidden_dim);
        g.W[gate] = Matrix(net.hidden_dim, net.hidden_dim);
        g.b[gate].assign(net.hidden_dim, 0.0);
    }
    g.out_w.assign(net.hidden_dim, 0.0);
    g.out_b = 0.0;
}

/// Adds `scale` times the one-example gradient to `grads`. The output-unit
/// error is yhat - y; everything upstream follows the chain rule through
/// the gates, walking the unrolled steps backwards.
void backward_traced(const LstmNetwork& net, const Matrix& window, const LstmTrace& trace,
                     int label, double scale, LstmGradients& grads) {
    const std::size_t steps = window.rows, d = net.input_dim, h = net.hidden_dim;
    const double delta = (trace.yhat - static_cast<double>(label)) * scale;

    grads.out_b += delta;
    std::vector<double> da(h), dc(h, 0.0), da_prev(h), dz[4];
    for (auto& v : dz) v.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        grads.out_w[j] += delta * trace.a(steps - 1, j);
        da[j] = delta * net.out_w[j];
    }

    for (std::size_t t = steps; t-- > 0;) {
        for (std::size_t j = 0; j < h; ++j) {
            const double f = trace.f(t, j), u = trace.u(t, j), o = trace.o(t, j),
                         g = trace.g(t, j), tc = trace.tanh_c(t, j);
            const double c_prev = t > 0 ? trace.c(t - 1, j) : 0.0;
            dc[j] += da[j] * o * (1.0 - tc * tc);
            dz[kOutput][j] = da[j] * tc * o * (1.0 - o);
            dz[kForget][j] = dc[j] * c_prev * f * (1.0 - f);
            dz[kUpdate][j] = dc[j] * g * u * (1.0 - u);
            dz[kCandidate][j] = dc[j] * u * (1.0 - g * g);
        }

        for (std::size_t gate = 0; gate < 4; ++gate) {
            for (std::size_t j = 0; j < h; ++j) grads.b[gate][j] += dz[gate][j];
            for (std::size_t i = 0; i < d; ++i) {
                const double x = window(t, i);
                if (x == 0.0) continue;
                for (std::size_t j = 0; j < h; ++j) grads.U[gate](i, j) += x * dz[gate][j];
            }
        }
        if (t > 0) {
            for (std::size_t gate = 0; gate < 4; ++gate)
                for (std::size_t k = 0; k < h; ++k) {
                    const double ap = trace.a(t - 1, k);
                    if (ap != 0.0)
                        for (std::size_t j = 0; j < h; ++j)
                            grads.W[gate](k, j) += ap * dz[gate][j];
                }
            for (std::size_t k = 0; k < h; ++k) {
                double sum = 0.0;
                for (std::size_t gate = 0; gate < 4; ++gate)
                    for (std::size_t j = 0; j < h; ++j) sum += net.W[gate](k, j) * dz[gate][j];
                da_prev[k] = sum;
            }
            for (std::size_t j = 0; j < h; ++j) {
                da[j] = da_prev[j];
                dc[j] *= trace.f(t, j);
            }
        }
    }
}

double squared_norm(const LstmGradients& g) {
    double s = g.out_b * g.out_b;
    for (const double v : g.out_w) s += v * v;
    for (std::size_t gate = 0; gate < 4; ++gate) {
        for (const double v : g.U[gate].data) s += v * v;
        for (const double v : g.W[gate].data) s += v * v;
        for (const double v : g.b[gate]) s += v * v;
    }
    return s;
}

void scale_gradients(LstmGradients& g, double k) {
    g.out_b *= k;
    for (auto& v : g.out_w) v *= k;
    for (std::size_t gate = 0; gate < 4; ++gate) {
        for (auto& v : g.U[gate].data) v *= k;
        for (auto& v : g.W[gate].data) v *= k;
        for (auto& v : g.b[gate]) v *= k;
    }
}

void apply_gradients(LstmNetwork& net, const LstmGradients& g, double lr) {
    net.out_b -= lr * g.out_b;
    for (std::size_t j = 0; j < net.hidden_dim; ++j) net.out_w[j] -= lr * g.out_w[j];
    for (std::size_t gate = 0; gate < 4; ++gate) {
        for (std::size_t i = 0; i < g.U[gate].data.size(); ++i)
            net.U[gate].data[i] -= lr * g.U[gate].data[i];
        for (std::size_t i = 0; i < g.W[gate].data.size(); ++i)
            net.W[gate].data[i] -= lr * g.W[gate].data[i];
        for (std::size_t j = 0; j < net.hidden_dim; ++j) net.b[gate][j] -= lr * g.b[gate][j];
    }
}

void gather_window(const FeaturePanel& panel, std::size_t end_row, std::size_t l, Matrix& out) {
    const std::size_t d = panel.cols();
    if (out.rows != l || out.cols != d) out = Matrix(l, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < l; ++r) out(r, c) = panel.columns[c][end_row - l + 1 + r];
}

std::vector<std::size_t> shuffled_order(std::size_t n, Rng& rng) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[rng.below(i + 1)]);
    return order;
}

void check_training_inputs(const FeaturePanel& panel, std::span<const int> labels,
                           const TrainConfig& cfg, std::span<const std::size_t> end_rows) {
    cfg.validate();
    if (labels.size() != panel.rows())
        throw ValidationError("training: labels must align with panel rows");
    if (panel.rows() < cfg.window + 1)
        throw ValidationError("training: need at least window+1 rows for one example");
    if (end_rows.empty()) throw ValidationError("training: no examples");
    for (const std::size_t t : end_rows)
        if (t + 1 < cfg.window || t + 1 >= panel.rows())
            throw ValidationError("training: window end row out of range");
    for (const int y : labels)
        if (y != 0 && y != 1) throw ValidationError("training: labels must be binary");
}

std::vector<std::size_t> all_end_rows(std::size_t rows, std::size_t window) {
    std::vector<std::size_t> out;
    if (rows > window)
        for (std::size_t t = window - 1; t + 1 < rows; ++t) out.push_back(t);
    return out;
}

}  // namespace

void TrainConfig::validate() const {
    if (window < 1) throw ValidationError("train config: window must be >= 1");
    if (batch_size < 1) throw ValidationError("train config: batch_size must be >= 1");
    if (epochs < 1) throw ValidationError("train config: epochs must be >= 1");
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw ValidationError("train config: learning_rate must be finite and >= 0");
    if (hidden < 1) throw ValidationError("train config: hidden must be >= 1");
    if (!(clip_norm >= 0.0)) throw ValidationError("train config: clip_norm must be >= 0");
}

std::size_t parameter_count(std::size_t input_dim, std::size_t hidden_dim) {
    if (input_dim < 1 || hidden_dim < 1)
        throw ValidationError("parameter_count: dimensions must be >= 1");
    return 4 * (hidden_dim * (input_dim + hidden_dim) + hidden_dim) + (hidden_dim + 1);
}

LstmNetwork init_lstm(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed) {
    if (input_dim < 1 || hidden_dim < 1)
        throw ValidationError("init_lstm: dimensions must be >= 1");
    LstmNetwork net;
    net.input_dim = input_dim;
    net.hidden_dim = hidden_dim;
    const double radius = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
    Rng rng(seed);
    for (std::size_t gate = 0; gate < 4; ++gate) {
        net.U[gate] = Matrix(input_dim, hidden_dim);
        net.W[gate] = Matrix(hidden_dim, hidden_dim);
        net.b[gate].resize(hidden_dim);
        fill_uniform(net.U[gate].data, radius, rng);
        fill_uniform(net.W[gate].data, radius, rng);
        fill_uniform(net.b[gate], radius, rng);
    }
    net.out_w.resize(hidden_dim);
    fill_uniform(net.out_w, radius, rng);
    net.out_b = (2.0 * rng.uniform01() - 1.0) * radius;
    return net;
}

MlpNetwork init_mlp(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed) {
    if (input_dim < 1 || hidden_dim < 1)
        throw ValidationError("init_mlp: dimensions must be >= 1");
    MlpNetwork net;
    net.input_dim = input_dim;
    net.hidden_dim = hidden_dim;
    const double radius = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
    Rng rng(seed);
    net.w1 = Matrix(input_dim, hidden_dim);
    net.b1.resize(hidden_dim);
    net.w2.resize(hidden_dim);
    fill_uniform(net.w1.data, radius, rng);
    fill_uniform(net.b1, radius, rng);
    fill_uniform(net.w2, radius, rng);
    net.b2 = (2.0 * rng.uniform01() - 1.0) * radius;
    return net;
}

CellState lstm_cell_step(const LstmNetwork& net, std::span<const double> x,
                         std::span<const double> a_prev, std::span<const double> c_prev) {
    check_dims(x.size() == net.input_dim, "lstm cell: input size != input_dim");
    check_dims(a_prev.size() == net.hidden_dim, "lstm cell: hidden state size != hidden_dim");
    check_dims(c_prev.size() == net.hidden_dim, "lstm cell: cell state size != hidden_dim");

    CellState s;
    s.a.resize(net.hidden_dim);
    s.c.resize(net.hidden_dim);
    for (std::size_t j = 0; j < net.hidden_dim; ++j) {
        double z[4] = {net.b[0][j], net.b[1][j], net.b[2][j], net.b[3][j]};
        for (std::size_t i = 0; i < net.input_dim; ++i)
            for (std::size_t gate = 0; gate < 4; ++gate) z[gate] += x[i] * net.U[gate](i, j);
        for (std::size_t k = 0; k < net.hidden_dim; ++k)
            for (std::size_t gate = 0; gate < 4; ++gate) z[gate] += a_prev[k] * net.W[gate](k, j);
        const double f = sigmoid(z[kForget]);
        const double u = sigmoid(z[kUpdate]);
        const double o = sigmoid(z[kOutput]);
        const double g = std::tanh(z[kCandidate]);
        s.c[j] = f * c_prev[j] + u * g;
        s.a[j] = o * std::tanh(s.c[j]);
    }
    return s;
}

double lstm_forward(const LstmNetwork& net, const Matrix& window) {
    LstmTrace trace;
    return forward_traced(net, window, trace);
}

double mlp_forward(const MlpNetwork& net, std::span<const double> input) {
    check_dims(input.size() == net.input_dim, "mlp forward: input size != input_dim");
    double z_out = net.b2;
    for (std::size_t j = 0; j < net.hidden_dim; ++j) {
        double z = net.b1[j];
        for (std::size_t i = 0; i < net.input_dim; ++i) z += input[i] * net.w1(i, j);
        z_out += sigmoid(z) * net.w2[j];
    }
    return sigmoid(z_out);
}

double mlp_forward(const MlpNetwork& net, const Matrix& window) {
    return mlp_forward(net, std::span<const double>(window.data));
}

double bce_point(double predicted, int label) {
    const double p = std::clamp(predicted, 1e-7, 1.0 - 1e-7);
    return label == 1 ? -std::log(p) : -std::log(1.0 - p);
}

LstmGradients lstm_gradients(const LstmNetwork& net, const Matrix& window, int label,
                             double* loss_out) {
    LstmTrace trace;
    const double yhat = forward_traced(net, window, trace);
    if (loss_out) *loss_out = bce_point(yhat, label);
    LstmGradients grads;
    zero_like(net, grads);
    backward_traced(net, window, trace, label, 1.0, grads);
    return grads;
}

TrainedLstm train_lstm(const FeaturePanel& panel, std::span<const int> labels,
                       const TrainConfig& cfg) {
    const auto end_rows = all_end_rows(panel.rows(), cfg.window);
    return train_lstm(panel, labels, cfg, end_rows);
}

TrainedLstm train_lstm(const FeaturePanel& panel, std::span<const int> labels,
                       const TrainConfig& cfg, std::span<const std::size_t> window_end_rows) {
    check_training_inputs(panel, labels, cfg, window_end_rows);
    const std::size_t l = cfg.window;
    const std::size_t n_examples = window_end_rows.size();

    TrainedLstm out;
    out.net = init_lstm(panel.cols(), cfg.hidden, derive_seed(cfg.seed, "lstm-init"));
    Rng shuffle_rng = make_rng(cfg.seed, "train-shuffle");

    LstmTrace trace;
    LstmGradients grads;
    zero_like(out.net, grads);
    Matrix window;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto order = shuffled_order(n_examples, shuffle_rng);
        double epoch_loss = 0.0;

        for (std::size_t begin = 0; begin < n_examples; begin += cfg.batch_size) {
            const std::size_t end = std::min(begin + cfg.batch_size, n_examples);
            const double inv = 1.0 / static_cast<double>(end - begin);
            zero_like(out.net, grads);

            for (std::size_t k = begin; k < end; ++k) {
                const std::size_t end_row = window_end_rows[order[k]];
                gather_window(panel, end_row, l, window);
                const double yhat = forward_traced(out.net, window, trace);
                epoch_loss += bce_point(yhat, labels[end_row + 1]);
                backward_traced(out.net, window, trace, labels[end_row + 1], inv, grads);
            }

            if (cfg.clip_norm > 0.0) {
                const double norm = std::sqrt(squared_norm(grads));
                if (norm > cfg.clip_norm) {
                    scale_gradients(grads, cfg.clip_norm / norm);
                    ++out.log.clip_events;
                }
            }
            apply_gradients(out.net, grads, cfg.learning_rate);
        }

        epoch_loss /= static_cast<double>(n_examples);
        if (!std::isfinite(epoch_loss))
            throw NumericError("lstm training diverged at epoch " + std::to_string(epoch));
        out.log.epoch_loss.push_back(epoch_loss);
    }
    return out;
}

namespace {

/// MLP gradients are cheap enough to hold in flat arrays beside the net.
struct MlpGradients {
    Matrix w1;
    std::vector<double> b1, w2;
    double b2 = 0.0;
};

}  // namespace

TrainedMlp train_mlp(const FeaturePanel& panel, std::span<const int> labels,
                     const TrainConfig& cfg) {
    const auto end_rows = all_end_rows(panel.rows(), cfg.window);
    return train_mlp(panel, labels, cfg, end_rows);
}

TrainedMlp train_mlp(const FeaturePanel& panel, std::span<const int> labels,
                     const TrainConfig& cfg, std::span<const std::size_t> window_end_rows) {
    check_training_inputs(panel, labels, cfg, window_end_rows);
    const std::size_t l = cfg.window, d = panel.cols();
    const std::size_t n_examples = window_end_rows.size();
    const std::size_t flat = l * d;

    TrainedMlp out;
    out.net = init_mlp(flat, cfg.hidden, derive_seed(cfg.seed, "mlp-init"));
    Rng shuffle_rng = make_rng(cfg.seed, "train-shuffle");
    const std::size_t h = cfg.hidden;

    MlpGradients grads;
    std::vector<double> input(flat), hidden_act(h), dz1(h);
    Matrix window;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto order = shuffled_order(n_examples, shuffle_rng);
        double epoch_loss = 0.0;

        for (std::size_t begin = 0; begin < n_examples; begin += cfg.batch_size) {
            const std::size_t end = std::min(begin + cfg.batch_size, n_examples);
            const double inv = 1.0 / static_cast<double>(end - begin);
            grads.w1 = Matrix(flat, h);
            grads.b1.assign(h, 0.0);
            grads.w2.assign(h, 0.0);
            grads.b2 = 0.0;

            for (std::size_t k = begin; k < end; ++k) {
                const std::size_t end_row = window_end_rows[order[k]];
                gather_window(panel, end_row, l, window);
                for (std::size_t i = 0; i < flat; ++i) input[i] = window.data[i];

                double z_out = out.net.b2;
                for (std::size_t j = 0; j < h; ++j) {
                    double z = out.net.b1[j];
                    for (std::size_t i = 0; i < flat; ++i) z += input[i] * out.net.w1(i, j);
                    hidden_act[j] = sigmoid(z);
                    z_out += hidden_act[j] * out.net.w2[j];
                }
                const double yhat = sigmoid(z_out);
                const int y = labels[end_row + 1];
                epoch_loss += bce_point(yhat, y);

                const double delta = (yhat - static_cast<double>(y)) * inv;
                grads.b2 += delta;
                for (std::size_t j = 0; j < h; ++j) {
                    grads.w2[j] += delta * hidden_act[j];
                    dz1[j] = delta * out.net.w2[j] * hidden_act[j] * (1.0 - hidden_act[j]);
                    grads.b1[j] += dz1[j];
                }
                for (std::size_t i = 0; i < flat; ++i) {
                    if (input[i] == 0.0) continue;
                    for (std::size_t j = 0; j < h; ++j) grads.w1(i, j) += input[i] * dz1[j];
                }
            }

            if (cfg.clip_norm > 0.0) {
                double sq = grads.b2 * grads.b2;
                for (const double v : grads.w1.data) sq += v * v;
                for (const double v : grads.b1) sq += v * v;
                for (const double v : grads.w2) sq += v * v;
                const double norm = std::sqrt(sq);
                if (norm > cfg.clip_norm) {
                    const double k = cfg.clip_norm / norm;
                    for (auto& v : grads.w1.data) v *= k;
                    for (auto& v : grads.b1) v *= k;
                    for (auto& v : grads.w2) v *= k;
                    grads.b2 *= k;
                    ++out.log.clip_events;
                }
            }
            for (std::size_t i = 0; i < grads.w1.data.size(); ++i)
                out.net.w1.data[i] -= cfg.learning_rate * grads.w1.data[i];
            for (std::size_t j = 0; j < h; ++j) {
                out.net.b1[j] -= cfg.learning_rate * grads.b1[j];
                out.net.w2[j] -= cfg.learning_rate * grads.w2[j];
            }
            out.net.b2 -= cfg.learning_rate * grads.b2;
        }

        epoch_loss /= static_cast<double>(n_examples);
        if (!std::isfinite(epoch_loss))
            throw NumericError("mlp training diverged at epoch " + std::to_string(epoch));
        out.log.epoch_loss.push_back(epoch_loss);
    }
    return out;
}

namespace {

void check_targets(const FeaturePanel& panel, const CrisisSeries& targets) {
    if (targets.dates != panel.dates)
        throw ValidationError("training: target dates must match the panel's date axis");
}

}  // namespace

TrainedLstm train_lstm(const FeaturePanel& panel, const CrisisSeries& targets,
                       const TrainConfig& cfg) {
    check_targets(panel, targets);
    return train_lstm(panel, std::span<const int>(targets.labels), cfg);
}

TrainedMlp train_mlp(const FeaturePanel& panel, const CrisisSeries& targets,
                     const TrainConfig& cfg) {
    check_targets(panel, targets);
    return train_mlp(panel, std::span<const int>(targets.labels), cfg);
}

namespace {

void append_values(std::string& out, std::span<const double> vs) {
    for (const double v : vs) {
        out += ' ';
        out += format_double(v);
    }
    out += '\n';
}

std::vector<double> read_values(std::istringstream& in, std::size_t n, const char* what) {
    std::vector<double> vs(n);
    std::string tok;
    for (auto& v : vs) {
        if (!(in >> tok)) throw ParseError(std::string("network text: truncated ") + what);
        v = parse_double(tok);
    }
    return vs;
}

}  // namespace

std::string LstmNetwork::to_text() const {
    std::string out = "lstm " + std::to_string(input_dim) + " " + std::to_string(hidden_dim) + "\n";
    static const char* names[4] = {"forget", "update", "output", "candidate"};
    for (std::size_t gate = 0; gate < 4; ++gate) {
        out += std::string("U_") + names[gate];
        append_values(out, U[gate].data);
        out += std::string("W_") + names[gate];
        append_values(out, W[gate].data);
        out += std::string("b_") + names[gate];
        append_values(out, b[gate]);
    }
    out += "out_w";
    append_values(out, out_w);
    out += "out_b " + format_double(out_b) + "\n";
    return out;
}

LstmNetwork LstmNetwork::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    std::size_t d = 0, h = 0;
    if (!(in >> tag >> d >> h) || tag != "lstm")
        throw ParseError("network text: expected 'lstm <input_dim> <hidden_dim>' header");
    LstmNetwork net;
    net.input_dim = d;
    net.hidden_dim = h;
    for (std::size_t gate = 0; gate < 4; ++gate) {
        in >> tag;
        net.U[gate] = Matrix(d, h);
        net.U[gate].data = read_values(in, d * h, "gate input weights");
        in >> tag;
        net.W[gate] = Matrix(h, h);
        net.W[gate].data = read_values(in, h * h, "gate hidden weights");
        in >> tag;
        net.b[gate] = read_values(in, h, "gate bias");
    }
    in >> tag;
    net.out_w = read_values(in, h, "output weights");
    in >> tag;
    net.out_b = read_values(in, 1, "output bias")[0];
    return net;
}

std::string MlpNetwork::to_text() const {
    std::string out = "mlp " + std::to_string(input_dim) + " " + std::to_string(hidden_dim) + "\n";
    out += "w1";
    append_values(out, w1.data);
    out += "b1";
    append_values(out, b1);
    out += "w2";
    append_values(out, w2);
    out += "b2 " + format_double(b2) + "\n";
    return out;
}

MlpNetwork MlpNetwork::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    std::size_t d = 0, h = 0;
    if (!(in >> tag >> d >> h) || tag != "mlp")
        throw ParseError("network text: expected 'mlp <input_dim> <hidden_dim>' header");
    MlpNetwork net;
    net.input_dim = d;
    net.hidden_dim = h;
    in >> tag;
    net.w1 = Matrix(d, h);
    net.w1.data = read_values(in, d * h, "hidden weights");
    in >> tag;
    net.b1 = read_values(in, h, "hidden bias");
    in >> tag;
    net.w2 = read_values(in, h, "output weights");
    in >> tag;
    net.b2 = read_values(in, 1, "output bias")[0];
    return net;
}

}  // namespace ews
