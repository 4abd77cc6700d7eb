#pragma once

#include "ews/data.hpp"
#include "ews/threshold.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ews {

/// Dense row-major matrix, just enough linear algebra for the networks.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Gate order used everywhere a network's parameters are enumerated
/// (initialization, gradients, serialization, counting).
enum Gate : std::size_t { kForget = 0, kUpdate = 1, kOutput = 2, kCandidate = 3 };

/// Single-layer recurrent cell bank with one sigmoid output unit applied
/// after the last step. Row-vector convention: gate pre-activation is
/// x_t U + a_{t-1} W + b, gates squash by sigmoid and the candidate by tanh;
/// c_t = forget ⊙ c_prev + update ⊙ candidate, a_t = output ⊙ tanh(c_t).
struct LstmNetwork {
    std::size_t input_dim = 0, hidden_dim = 0;
    std::array<Matrix, 4> U;               // input → gate, input_dim × hidden_dim
    std::array<Matrix, 4> W;               // hidden → gate, hidden_dim × hidden_dim
    std::array<std::vector<double>, 4> b;  // per-gate bias
    std::vector<double> out_w;             // hidden → output
    double out_b = 0.0;

    std::string to_text() const;
    static LstmNetwork from_text(const std::string& text);
};

/// One hidden sigmoid layer over the flattened window, sigmoid output.
struct MlpNetwork {
    std::size_t input_dim = 0, hidden_dim = 0;
    Matrix w1;                // input_dim × hidden_dim
    std::vector<double> b1;
    std::vector<double> w2;   // hidden_dim
    double b2 = 0.0;

    std::string to_text() const;
    static MlpNetwork from_text(const std::string& text);
};

/// Trainable parameter count: 4 gates of hidden*(input+hidden) weights plus
/// a hidden bias each, then the output unit's hidden weights and bias.
std::size_t parameter_count(std::size_t input_dim, std::size_t hidden_dim);

/// Weights and biases drawn uniformly from [-1/sqrt(hidden), 1/sqrt(hidden)]
/// in the documented enumeration order; bit-reproducible for a given seed.
LstmNetwork init_lstm(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed);
MlpNetwork init_mlp(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed);

struct CellState {
    std::vector<double> a;  // hidden activation
    std::vector<double> c;  // cell state
};

/// One recurrent step. Throws ShapeError on any dimension mismatch.
CellState lstm_cell_step(const LstmNetwork& net, std::span<const double> x,
                         std::span<const double> a_prev, std::span<const double> c_prev);

/// Unrolls the cell over the window's rows from the zero state and applies
/// the output sigmoid to the final hidden activation.
double lstm_forward(const LstmNetwork& net, const Matrix& window);
double mlp_forward(const MlpNetwork& net, const Matrix& window);
double mlp_forward(const MlpNetwork& net, std::span<const double> input);

/// Mean binary cross-entropy with predictions clamped to
/// [1e-7, 1 - 1e-7] before the logs.
double bce_point(double predicted, int label);

struct TrainConfig {
    std::size_t window = 5;        // steps per training example
    std::size_t batch_size = 20;
    std::size_t epochs = 100;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
    std::size_t hidden = 32;
    double clip_norm = 5.0;        // global gradient norm ceiling; 0 disables

    void validate() const;
};

struct TrainLog {
    std::vector<double> epoch_loss;  // mean training loss per epoch
    std::size_t clip_events = 0;     // batches whose gradient hit the ceiling
};

struct TrainedLstm {
    LstmNetwork net;
    TrainLog log;
};
struct TrainedMlp {
    MlpNetwork net;
    TrainLog log;
};

/// Supervised pairs: the window of panel rows ending at row t predicts
/// labels[t+1]. Plain mini-batch gradient descent on mean binary
/// cross-entropy; deterministic given cfg.seed. Throws NumericError naming
/// the epoch if the loss goes non-finite. The window_end_rows overloads
/// train on just those examples (cross-validation holds targets out).
TrainedLstm train_lstm(const FeaturePanel& panel, std::span<const int> labels,
                       const TrainConfig& cfg);
TrainedMlp train_mlp(const FeaturePanel& panel, std::span<const int> labels,
                     const TrainConfig& cfg);
TrainedLstm train_lstm(const FeaturePanel& panel, std::span<const int> labels,
                       const TrainConfig& cfg, std::span<const std::size_t> window_end_rows);
TrainedMlp train_mlp(const FeaturePanel& panel, std::span<const int> labels,
                     const TrainConfig& cfg, std::span<const std::size_t> window_end_rows);
TrainedLstm train_lstm(const FeaturePanel& panel, const CrisisSeries& targets,
                       const TrainConfig& cfg);
TrainedMlp train_mlp(const FeaturePanel& panel, const CrisisSeries& targets,
                     const TrainConfig& cfg);

/// Full per-parameter gradient of the one-example loss, laid out exactly
/// like the network; exposed so tests can compare against finite
/// differences.
struct LstmGradients {
    std::array<Matrix, 4> U, W;
    std::array<std::vector<double>, 4> b;
    std::vector<double> out_w;
    double out_b = 0.0;
};

LstmGradients lstm_gradients(const LstmNetwork& net, const Matrix& window, int label,
                             double* loss_out = nullptr);

}  // namespace ews
