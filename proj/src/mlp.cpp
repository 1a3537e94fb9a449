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

#include "mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "rng.hpp"

namespace qfp {

namespace {

using json = nlohmann::ordered_json;

void matvec(const std::vector<double>& w, std::span<const double> x,
            const std::vector<double>& b, std::vector<double>& out) {
    const std::size_t rows = b.size();
    const std::size_t cols = x.size();
    out.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = b[r];
        const double* wr = w.data() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            acc += wr[c] * x[c];
        }
        out[r] = acc;
    }
}

void softmax_in_place(std::vector<double>& logits) {
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double& v : logits) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (double& v : logits) {
        v /= sum;
    }
}

/// Activations of every layer for one sample; reused across backprop.
struct ForwardTrace {
    std::vector<std::vector<double>> post;  // post[l] = activation after layer l
};

void forward_trace(const MLPModel& model, std::span<const double> x,
                   ForwardTrace& trace) {
    const std::size_t n_layers = model.n_layers();
    trace.post.resize(n_layers);
    std::span<const double> current = x;
    for (std::size_t l = 0; l < n_layers; ++l) {
        matvec(model.weights[l], current, model.biases[l], trace.post[l]);
        if (l + 1 < n_layers) {
            for (double& v : trace.post[l]) {
                v = std::max(0.0, v);
            }
        } else {
            softmax_in_place(trace.post[l]);
        }
        current = trace.post[l];
    }
}

}  // namespace

SplitIndices stratified_split(const std::vector<int>& labels,
                              std::array<double, 3> fractions,
                              std::uint64_t seed) {
    int n_classes = 0;
    for (int label : labels) {
        if (label < 0) {
            throw UsageError("stratified_split: negative label");
        }
        n_classes = std::max(n_classes, label + 1);
    }
    std::vector<std::vector<std::size_t>> per_class(
        static_cast<std::size_t>(n_classes));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        per_class[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    SplitIndices split;
    for (std::size_t cls = 0; cls < per_class.size(); ++cls) {
        auto& members = per_class[cls];
        if (members.size() < 5) {
            throw UsageError("stratified_split: class " + std::to_string(cls) +
                             " has fewer than 5 members");
        }
        Rng rng(derive_seed(seed, {tag(SeedTag::Split), cls}));
        rng.shuffle(members);
        const auto m = static_cast<double>(members.size());
        const auto n_train = static_cast<std::size_t>(std::floor(fractions[0] * m));
        const auto n_val = static_cast<std::size_t>(std::floor(fractions[1] * m));
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i < n_train) {
                split.train.push_back(members[i]);
            } else if (i < n_train + n_val) {
                split.val.push_back(members[i]);
            } else {
                split.test.push_back(members[i]);
            }
        }
    }
    return split;
}

void Scaler::apply(std::span<const double> in, std::span<double> out) const {
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double s = std_dev[i] < 1e-12 ? 1.0 : std_dev[i];
        out[i] = (in[i] - mean[i]) / s;
    }
}

std::vector<double> Scaler::apply_copy(std::span<const double> in) const {
    std::vector<double> out(in.size());
    apply(in, out);
    return out;
}

Scaler fit_scaler(const Dataset& data, const std::vector<std::size_t>& rows) {
    if (rows.empty()) {
        throw UsageError("fit_scaler: empty training split");
    }
    Scaler scaler;
    scaler.mean.assign(data.dim, 0.0);
    scaler.std_dev.assign(data.dim, 0.0);
    for (std::size_t r : rows) {
        const auto row = data.row(r);
        for (std::size_t j = 0; j < data.dim; ++j) {
            scaler.mean[j] += row[j];
        }
    }
    for (double& m : scaler.mean) {
        m /= static_cast<double>(rows.size());
    }
    for (std::size_t r : rows) {
        const auto row = data.row(r);
        for (std::size_t j = 0; j < data.dim; ++j) {
            const double d = row[j] - scaler.mean[j];
            scaler.std_dev[j] += d * d;
        }
    }
    for (double& s : scaler.std_dev) {
        s = std::sqrt(s / static_cast<double>(rows.size()));
    }
    return scaler;
}

MLPModel MLPModel::he_uniform(const std::vector<std::size_t>& dims,
                              std::uint64_t seed) {
    if (dims.size() < 2) {
        throw std::invalid_argument("MLPModel: need at least two layer dims");
    }
    MLPModel model;
    model.dims = dims;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Rng rng(derive_seed(seed, {tag(SeedTag::WeightInit), l}));
        const double limit = std::sqrt(6.0 / static_cast<double>(dims[l]));
        std::vector<double> w(dims[l + 1] * dims[l]);
        for (double& v : w) {
            v = rng.uniform(-limit, limit);
        }
        model.weights.push_back(std::move(w));
        model.biases.emplace_back(dims[l + 1], 0.0);
    }
    return model;
}

std::vector<double> forward(const MLPModel& model, std::span<const double> x) {
    if (x.size() != model.dims.front()) {
        throw std::invalid_argument("forward: input dimension mismatch");
    }
    ForwardTrace trace;
    forward_trace(model, x, trace);
    return trace.post.back();
}

double cross_entropy(std::span<const double> probs, int label) {
    if (label < 0 || static_cast<std::size_t>(label) >= probs.size()) {
        throw std::invalid_argument("cross_entropy: label out of range");
    }
    return -std::log(std::max(probs[static_cast<std::size_t>(label)], 1e-12));
}

Gradients Gradients::zeros_like(const MLPModel& model) {
    Gradients g;
    for (std::size_t l = 0; l < model.n_layers(); ++l) {
        g.weights.emplace_back(model.weights[l].size(), 0.0);
        g.biases.emplace_back(model.biases[l].size(), 0.0);
    }
    return g;
}

Gradients backward(const MLPModel& model, const std::vector<double>& batch_x,
                   const std::vector<int>& batch_y, std::size_t dim) {
    const std::size_t batch = batch_y.size();
    if (batch == 0 || batch_x.size() != batch * dim) {
        throw std::invalid_argument("backward: bad batch shape");
    }
    Gradients grads = Gradients::zeros_like(model);
    const std::size_t n_layers = model.n_layers();
    ForwardTrace trace;
    std::vector<double> delta;
    std::vector<double> delta_prev;

    for (std::size_t s = 0; s < batch; ++s) {
        const std::span<const double> x{batch_x.data() + s * dim, dim};
        forward_trace(model, x, trace);

        // Output layer: d loss / d logits = probs - onehot.
        delta = trace.post.back();
        delta[static_cast<std::size_t>(batch_y[s])] -= 1.0;

        for (std::size_t l = n_layers; l-- > 0;) {
            const std::span<const double> input =
                l == 0 ? x : std::span<const double>(trace.post[l - 1]);
            const std::size_t rows = model.biases[l].size();
            const std::size_t cols = input.size();
            for (std::size_t r = 0; r < rows; ++r) {
                grads.biases[l][r] += delta[r];
                double* gw = grads.weights[l].data() + r * cols;
                for (std::size_t c = 0; c < cols; ++c) {
                    gw[c] += delta[r] * input[c];
                }
            }
            if (l == 0) {
                break;
            }
            // Propagate: delta_prev = W^T delta, masked by ReLU activity.
            delta_prev.assign(cols, 0.0);
            for (std::size_t r = 0; r < rows; ++r) {
                const double* wr = model.weights[l].data() + r * cols;
                const double d = delta[r];
                for (std::size_t c = 0; c < cols; ++c) {
                    delta_prev[c] += wr[c] * d;
                }
            }
            for (std::size_t c = 0; c < cols; ++c) {
                if (trace.post[l - 1][c] <= 0.0) {
                    delta_prev[c] = 0.0;
                }
            }
            delta = delta_prev;
        }
    }

    const double inv = 1.0 / static_cast<double>(batch);
    for (auto& layer : grads.weights) {
        for (double& v : layer) {
            v *= inv;
        }
    }
    for (auto& layer : grads.biases) {
        for (double& v : layer) {
            v *= inv;
        }
    }
    return grads;
}

AdamState AdamState::init(const MLPModel& model, double lr) {
    AdamState state;
    state.lr = lr;
    for (std::size_t l = 0; l < model.n_layers(); ++l) {
        state.m_weights.emplace_back(model.weights[l].size(), 0.0);
        state.v_weights.emplace_back(model.weights[l].size(), 0.0);
        state.m_biases.emplace_back(model.biases[l].size(), 0.0);
        state.v_biases.emplace_back(model.biases[l].size(), 0.0);
    }
    return state;
}

namespace {

void adam_update(std::vector<double>& param, std::vector<double>& m,
                 std::vector<double>& v, const std::vector<double>& g,
                 const AdamState& s) {
    const double bc1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.step));
    const double bc2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.step));
    for (std::size_t i = 0; i < param.size(); ++i) {
        m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * g[i];
        v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * g[i] * g[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        param[i] -= s.lr * m_hat / (std::sqrt(v_hat) + s.eps);
    }
}

}  // namespace

void adam_step(AdamState& state, MLPModel& model, const Gradients& grads) {
    ++state.step;
    for (std::size_t l = 0; l < model.n_layers(); ++l) {
        adam_update(model.weights[l], state.m_weights[l], state.v_weights[l],
                    grads.weights[l], state);
        adam_update(model.biases[l], state.m_biases[l], state.v_biases[l],
                    grads.biases[l], state);
    }
}

namespace {

struct EpochMetrics {
    double loss = 0.0;
    double acc = 0.0;
};

EpochMetrics metrics_over(const MLPModel& model,
                          const std::vector<double>& scaled,
                          const Dataset& data,
                          const std::vector<std::size_t>& rows) {
    EpochMetrics out;
    if (rows.empty()) {
        return out;
    }
    std::size_t correct = 0;
    ForwardTrace trace;
    for (std::size_t r : rows) {
        const std::span<const double> x{scaled.data() + r * data.dim, data.dim};
        forward_trace(model, x, trace);
        const auto& probs = trace.post.back();
        out.loss += cross_entropy(probs, data.labels[r]);
        const auto arg = static_cast<int>(
            std::max_element(probs.begin(), probs.end()) - probs.begin());
        if (arg == data.labels[r]) {
            ++correct;
        }
    }
    out.loss /= static_cast<double>(rows.size());
    out.acc = static_cast<double>(correct) / static_cast<double>(rows.size());
    return out;
}

}  // namespace

TrainResult train(const Dataset& data, const SplitIndices& split,
                  std::uint64_t seed, const TrainOptions& opts) {
    if (split.train.empty()) {
        throw UsageError("train: empty training split");
    }
    int n_classes = 0;
    for (int label : data.labels) {
        n_classes = std::max(n_classes, label + 1);
    }

    TrainResult result;
    result.scaler = fit_scaler(data, split.train);

    // Scale the whole matrix once; splits index into it.
    std::vector<double> scaled(data.features.size());
    for (std::size_t r = 0; r < data.rows; ++r) {
        result.scaler.apply(data.row(r),
                            {scaled.data() + r * data.dim, data.dim});
    }

    const std::vector<std::size_t> dims{data.dim, 25, 10,
                                        static_cast<std::size_t>(n_classes)};
    result.model = MLPModel::he_uniform(dims, seed);
    AdamState adam = AdamState::init(result.model, opts.lr);

    std::vector<std::size_t> order = split.train;
    std::vector<double> batch_x;
    std::vector<int> batch_y;

    for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
        Rng rng(derive_seed(seed, {tag(SeedTag::EpochShuffle), epoch}));
        rng.shuffle(order);
        for (std::size_t start = 0; start < order.size();
             start += opts.batch_size) {
            const std::size_t stop =
                std::min(order.size(), start + opts.batch_size);
            batch_x.clear();
            batch_y.clear();
            for (std::size_t i = start; i < stop; ++i) {
                const std::size_t r = order[i];
                batch_x.insert(batch_x.end(), scaled.data() + r * data.dim,
                               scaled.data() + (r + 1) * data.dim);
                batch_y.push_back(data.labels[r]);
            }
            const Gradients grads =
                backward(result.model, batch_x, batch_y, data.dim);
            adam_step(adam, result.model, grads);
        }
        const EpochMetrics tr = metrics_over(result.model, scaled, data, split.train);
        const EpochMetrics va = metrics_over(result.model, scaled, data, split.val);
        result.report.train_loss.push_back(tr.loss);
        result.report.train_acc.push_back(tr.acc);
        result.report.val_loss.push_back(va.loss);
        result.report.val_acc.push_back(va.acc);
    }
    return result;
}

int predict(const MLPModel& model, const Scaler& scaler,
            std::span<const double> raw_row) {
    const std::vector<double> scaled = scaler.apply_copy(raw_row);
    const std::vector<double> probs = forward(model, scaled);
    return static_cast<int>(std::max_element(probs.begin(), probs.end()) -
                            probs.begin());
}

EvalReport evaluate(const MLPModel& model, const Scaler& scaler,
                    const Dataset& data, const std::vector<std::size_t>& rows) {
    std::vector<int> truth;
    std::vector<int> predicted;
    truth.reserve(rows.size());
    predicted.reserve(rows.size());
    for (std::size_t r : rows) {
        truth.push_back(data.labels[r]);
        predicted.push_back(predict(model, scaler, data.row(r)));
    }
    return evaluate_predictions(truth, predicted, data.class_names);
}

EvalReport evaluate_predictions(const std::vector<int>& truth,
                                const std::vector<int>& predicted,
                                const std::vector<std::string>& class_names) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("evaluate: size mismatch");
    }
    const std::size_t n_classes = class_names.size();
    EvalReport report;
    report.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
    report.total = truth.size();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto t = static_cast<std::size_t>(truth[i]);
        const auto p = static_cast<std::size_t>(predicted[i]);
        if (t >= n_classes || p >= n_classes) {
            throw std::invalid_argument("evaluate: label out of range");
        }
        ++report.confusion[t][p];
        if (t == p) {
            ++correct;
        }
    }
    report.accuracy = report.total == 0
                          ? 0.0
                          : static_cast<double>(correct) /
                                static_cast<double>(report.total);

    double weighted_p = 0.0, weighted_r = 0.0, weighted_f = 0.0;
    for (std::size_t cls = 0; cls < n_classes; ++cls) {
        std::size_t tp = report.confusion[cls][cls];
        std::size_t fp = 0;
        std::size_t fn = 0;
        for (std::size_t other = 0; other < n_classes; ++other) {
            if (other != cls) {
                fp += report.confusion[other][cls];
                fn += report.confusion[cls][other];
            }
        }
        ClassMetrics m;
        m.name = class_names[cls];
        m.support = tp + fn;
        m.precision = (tp + fp) == 0
                          ? 0.0
                          : static_cast<double>(tp) / static_cast<double>(tp + fp);
        m.recall = (tp + fn) == 0
                       ? 0.0
                       : static_cast<double>(tp) / static_cast<double>(tp + fn);
        m.f1 = (m.precision + m.recall) == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        report.macro_precision += m.precision;
        report.macro_recall += m.recall;
        report.macro_f1 += m.f1;
        weighted_p += m.precision * static_cast<double>(m.support);
        weighted_r += m.recall * static_cast<double>(m.support);
        weighted_f += m.f1 * static_cast<double>(m.support);
        report.per_class.push_back(std::move(m));
    }
    const auto k = static_cast<double>(n_classes);
    report.macro_precision /= k;
    report.macro_recall /= k;
    report.macro_f1 /= k;
    if (report.total > 0) {
        const auto t = static_cast<double>(report.total);
        report.weighted_precision = weighted_p / t;
        report.weighted_recall = weighted_r / t;
        report.weighted_f1 = weighted_f / t;
    }
    return report;
}

std::string model_to_json(const MLPModel& model, const Scaler& scaler,
                          const std::vector<std::string>& class_names,
                          int n_qubits, int registry_version,
                          const std::string& config_hash) {
    json root;
    root["dims"] = model.dims;
    root["weights"] = model.weights;
    root["biases"] = model.biases;
    root["scaler"] = {{"mean", scaler.mean}, {"std", scaler.std_dev}};
    root["class_names"] = class_names;
    root["n_qubits"] = n_qubits;
    root["registry_version"] = registry_version;
    root["config_hash"] = config_hash;
    return root.dump();
}

LoadedModel model_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    LoadedModel out;
    try {
        out.model.dims = root.at("dims").get<std::vector<std::size_t>>();
        out.model.weights =
            root.at("weights").get<std::vector<std::vector<double>>>();
        out.model.biases =
            root.at("biases").get<std::vector<std::vector<double>>>();
        out.scaler.mean = root.at("scaler").at("mean").get<std::vector<double>>();
        out.scaler.std_dev =
            root.at("scaler").at("std").get<std::vector<double>>();
        out.class_names =
            root.at("class_names").get<std::vector<std::string>>();
        out.n_qubits = root.at("n_qubits").get<int>();
        out.registry_version = root.at("registry_version").get<int>();
        out.config_hash = root.at("config_hash").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    // Shape consistency.
    if (out.model.weights.size() + 1 != out.model.dims.size() ||
        out.model.biases.size() != out.model.weights.size()) {
        throw ParseError("model JSON: inconsistent layer shapes");
    }
    for (std::size_t l = 0; l < out.model.weights.size(); ++l) {
        if (out.model.weights[l].size() !=
                out.model.dims[l] * out.model.dims[l + 1] ||
            out.model.biases[l].size() != out.model.dims[l + 1]) {
            throw ParseError("model JSON: weight shape mismatch at layer " +
                             std::to_string(l));
        }
    }
    return out;
}

}  // namespace qfp
