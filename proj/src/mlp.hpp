// Copyright 2026 The qfp developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qfp {

/// Row-major feature matrix plus integer class labels.
struct Dataset {
    std::size_t rows = 0;
    std::size_t dim = 0;
    std::vector<double> features;  // rows * dim
    std::vector<int> labels;
    std::vector<std::string> class_names;
    int n_qubits = 0;

    std::span<const double> row(std::size_t r) const {
        return {features.data() + r * dim, dim};
    }
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

/// Per class: shuffle with the seed, cut at floor(f0*m) and floor(f1*m),
/// remainder to test. Deterministic per seed; every class needs >= 5 members.
SplitIndices stratified_split(const std::vector<int>& labels,
                              std::array<double, 3> fractions,
                              std::uint64_t seed);

/// Z-score parameters fit on the training split only. Features with
/// std < 1e-12 are centered but not divided.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> std_dev;

    void apply(std::span<const double> in, std::span<double> out) const;
    std::vector<double> apply_copy(std::span<const double> in) const;
};

Scaler fit_scaler(const Dataset& data, const std::vector<std::size_t>& rows);

/// Dense feed-forward [d, 25, 10, 5]: ReLU hidden layers, softmax output.
struct MLPModel {
    std::vector<std::size_t> dims;
    // weights[l] has shape dims[l+1] x dims[l], row-major; biases[l] has
    // dims[l+1] entries.
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static MLPModel he_uniform(const std::vector<std::size_t>& dims,
                               std::uint64_t seed);
    std::size_t n_layers() const { return weights.size(); }
};

/// Class probabilities for one (already scaled) input row.
std::vector<double> forward(const MLPModel& model, std::span<const double> x);

/// Softmax cross-entropy: -ln p[label], with p clamped at 1e-12.
double cross_entropy(std::span<const double> probs, int label);

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static Gradients zeros_like(const MLPModel& model);
};

/// Exact gradients of the mean batch loss (ReLU subgradient at 0 is 0).
Gradients backward(const MLPModel& model, const std::vector<double>& batch_x,
                   const std::vector<int>& batch_y, std::size_t dim);

struct AdamState {
    std::vector<std::vector<double>> m_weights, v_weights;
    std::vector<std::vector<double>> m_biases, v_biases;
    std::uint64_t step = 0;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState init(const MLPModel& model, double lr = 1e-3);
};

/// Standard Adam update with bias correction; increments state.step.
void adam_step(AdamState& state, MLPModel& model, const Gradients& grads);

struct TrainOptions {
    std::size_t epochs = 100;
    std::size_t batch_size = 200;
    double lr = 1e-3;
};

struct TrainReport {
    std::vector<double> train_loss;
    std::vector<double> train_acc;
    std::vector<double> val_loss;
    std::vector<double> val_acc;
};

struct TrainResult {
    MLPModel model;
    Scaler scaler;
    TrainReport report;
};

/// Mini-batch Adam for exactly opts.epochs epochs, reshuffled per epoch,
/// He-uniform init, no early stopping. Fully deterministic per seed.
TrainResult train(const Dataset& data, const SplitIndices& split,
                  std::uint64_t seed, const TrainOptions& opts = {});

struct ClassMetrics {
    std::string name;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

struct EvalReport {
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
    std::vector<ClassMetrics> per_class;
    double accuracy = 0.0;
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
    std::size_t total = 0;
};

int predict(const MLPModel& model, const Scaler& scaler,
            std::span<const double> raw_row);

EvalReport evaluate(const MLPModel& model, const Scaler& scaler,
                    const Dataset& data, const std::vector<std::size_t>& rows);

/// Metrics from a prediction list (used when features are pre-computed).
EvalReport evaluate_predictions(const std::vector<int>& truth,
                                const std::vector<int>& predicted,
                                const std::vector<std::string>& class_names);

/// Model (+scaler) persistence; see README for the JSON layout.
std::string model_to_json(const MLPModel& model, const Scaler& scaler,
                          const std::vector<std::string>& class_names,
                          int n_qubits, int registry_version,
                          const std::string& config_hash);

struct LoadedModel {
    MLPModel model;
    Scaler scaler;
    std::vector<std::string> class_names;
    int n_qubits = 0;
    int registry_version = 0;
    std::string config_hash;
};

LoadedModel model_from_json(std::string_view text);

}  // namespace qfp
