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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "mlp.hpp"
#include "verify.hpp"

namespace qfp {

/// Parses "3,4,6,8" into {3,4,6,8}.
std::vector<int> parse_qubit_list(const std::string& text);

struct GenSummary {
    std::size_t total_rows = 0;
    std::vector<std::size_t> per_class;
    std::string csv_path;
    std::string manifest_path;
};

/// Generates the labeled dataset: per (class, sample) builds the encoding,
/// samples a PQC, concatenates, transpiles, extracts features; writes the
/// feature CSV, optional circuit JSON files, and the manifest. Deterministic
/// per config regardless of worker count.
GenSummary cmd_gen(const ExperimentConfig& cfg);

struct TrainSummary {
    TrainReport report;
    std::string model_path;
    std::string curves_path;
    double final_val_accuracy = 0.0;
};

/// Stratified 60-20-20 split, Z-score scaler fit on train, exactly
/// cfg.epochs epochs of mini-batch Adam; persists the model and the
/// per-epoch curve CSV.
TrainSummary cmd_train(const ExperimentConfig& cfg);

/// Evaluates the persisted model on the test split; writes JSON + text
/// reports in the per-class precision/recall/F1 layout.
EvalReport cmd_eval(const ExperimentConfig& cfg);

struct ScalingRow {
    int n_qubits = 0;
    int n_features = 0;
    double test_accuracy = 0.0;
};

/// Runs gen/train/eval per qubit count into subdirectories and writes
/// (n, feature count, accuracy) rows to scaling.csv.
std::vector<ScalingRow> cmd_scaling(const ExperimentConfig& cfg,
                                    const std::vector<int>& qubit_counts);

struct DefenseClassDepth {
    std::string class_name;
    double original_mean = 0.0;
    double obfuscated_mean = 0.0;
    double delta_abs = 0.0;
    double delta_pct = 0.0;
    std::size_t instances = 0;
};

struct DefenseSummary {
    EvalReport undefended;
    EvalReport defended;
    std::vector<DefenseClassDepth> depth_table;
    /// Mean over instances of (defended depth - undefended depth) /
    /// undefended depth, in percent.
    double mean_overhead_pct = 0.0;
    double frac_depth_nondecreasing = 0.0;
    std::size_t instances_per_class = 0;
    std::optional<double> retrained_defended_accuracy;
};

/// Generates a fresh paired test set (same encodings with and without the
/// defense, fresh keys per circuit, defense_pqc_layers-layer PQCs), runs the
/// pre-trained classifier on both views, and reports accuracies plus the
/// per-class depth-overhead table.
DefenseSummary cmd_defense_eval(const ExperimentConfig& cfg);

/// Runs all oracle suites, printing one line per suite; throws VerifyError
/// if any fails.
std::vector<SuiteResult> cmd_verify(const ExperimentConfig& cfg);

struct DefendFileRequest {
    /// Either encoding_path + pqc_path, or circuit_path + boundary.
    std::string encoding_path;
    std::string pqc_path;
    std::string circuit_path;
    std::optional<std::size_t> boundary;
    std::uint64_t key_seed = 0;
    std::string out_json;
    std::string out_qasm;
};

/// Applies the defense to circuit files and writes IR JSON + QASM outputs.
/// Returns the key seed used.
std::uint64_t cmd_defend(const DefendFileRequest& request);

/// Feature CSV loading (header = "label," + feature names).
Dataset load_feature_csv(const std::string& path);

}  // namespace qfp
