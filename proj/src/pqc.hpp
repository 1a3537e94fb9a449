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
#include <vector>

#include "circuit.hpp"
#include "rng.hpp"

namespace qfp {

enum class Entanglement { Linear, Circular, Full };

std::string_view entanglement_name(Entanglement e);

/// Start-gate pool P for PQC diversity.
const std::vector<GateKind>& pqc_start_gates();

struct PQCConfig {
    int layers = 1;
    GateKind start_gate = GateKind::RX;
    std::vector<GateKind> rotation_pool{GateKind::RX, GateKind::RY, GateKind::RZ};
    Entanglement entanglement = Entanglement::Linear;
    std::uint64_t seed = 0;
};

/// One start gate, then `layers` x [rotation layer over rotation_pool with
/// angles ~ U(0,2pi); entanglement CX layer]. Deterministic per (cfg, n).
Circuit build_pqc(const PQCConfig& cfg, int n_qubits);

/// Uniformly samples a PQCConfig: start ~ U(P), entanglement ~ U({linear,
/// circular, full}), rotation_pool a random nonempty subset of {RX,RY,RZ},
/// layers ~ U{layers_min..layers_max}.
PQCConfig sample_pqc_config(int n_qubits, Rng& rng, int layers_min,
                            int layers_max);

/// Concatenation encoding || pqc with no barrier in between; the label is
/// inherited from the encoding circuit.
Circuit augment(const Circuit& encoding, const Circuit& pqc);

/// CX pairs for one entanglement layer.
std::vector<std::pair<int, int>> entanglement_pairs(Entanglement e, int n_qubits);

}  // namespace qfp
