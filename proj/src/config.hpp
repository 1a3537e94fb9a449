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

namespace qfp {

/// Experiment settings shared by every command. Loaded from a flat
/// `key = value` text file; any key can be overridden individually.
/// The environment variable QFP_SEED, when set, overrides base_seed.
struct ExperimentConfig {
    int n_qubits = 3;
    int samples_per_class = 3600;
    int pqc_layers_min = 1;
    int pqc_layers_max = 5;
    std::string coupling = "linear";  // linear | all_to_all
    std::uint64_t base_seed = 7;
    std::string defense = "off";  // off | on | both
    std::string output_dir = "out";
    int epochs = 100;
    int batch_size = 200;
    double learning_rate = 1e-3;
    int registry_version = 1;
    bool amplitude_real = false;
    bool baseline_barrier = false;
    bool write_circuits = true;
    int workers = 0;  // 0 = hardware concurrency
    int defense_samples_per_class = 800;
    int defense_pqc_layers = 5;
    bool retrain_adversary = false;
    int scaling_samples_per_class = 2000;
    std::string scaling_qubits = "3,4,6,8";

    static ExperimentConfig load_file(const std::string& path);

    /// Sets one key from its textual value; throws UsageError on unknown
    /// keys or unparsable values.
    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;

    /// Applies QFP_SEED when present.
    void apply_env();

    /// Throws UsageError when any invariant is violated.
    void validate() const;

    /// Hash over the generation-relevant keys; persisted in the dataset
    /// manifest so train/eval refuse to run against a skewed dataset.
    std::string gen_hash() const;
};

}  // namespace qfp
