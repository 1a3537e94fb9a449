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

#include <string>
#include <vector>

#include "circuit.hpp"

namespace qfp {

/// Registry version of the feature layout below; bump on any change so
/// trained models cannot be silently fed a different feature space.
constexpr int kFeatureRegistryVersion = 1;
constexpr int kGlobalFeatureCount = 27;

inline int feature_count(int n_qubits) {
    return kGlobalFeatureCount + 2 * n_qubits;
}

/// Fixed-length numeric fingerprint of a transpiled circuit:
/// 27 global features followed by per-qubit (rot_norm, xsx_norm) pairs.
struct FeatureVector {
    std::vector<double> values;
    std::vector<std::string> names;
    int registry_version = kFeatureRegistryVersion;
};

/// Stable feature identifiers: 27 globals then q{i}_rot_norm, q{i}_xsx_norm
/// for i = 0..n-1.
std::vector<std::string> feature_names(int n_qubits);

/// Computes registry v1 on a transpiled circuit. Throws std::invalid_argument
/// when the circuit contains a gate outside {X, SX, RZ, CX} (extraction is
/// only defined post-transpilation).
FeatureVector extract(const Circuit& c);

}  // namespace qfp
