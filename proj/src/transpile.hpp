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

#include <string_view>
#include <vector>

#include "circuit.hpp"

namespace qfp {

/// Undirected qubit connectivity constraint for two-qubit gates.
struct CouplingMap {
    int n_qubits = 0;
    std::vector<std::pair<int, int>> edges;

    static CouplingMap linear(int n_qubits);
    static CouplingMap all_to_all(int n_qubits);
    static CouplingMap preset(std::string_view name, int n_qubits);

    bool has_edge(int a, int b) const;
    void validate() const;
};

/// Lowers a 1-qubit gate to the {X, SX, RZ} alphabet in the canonical
/// RZ-SX-RZ-SX-RZ pattern (zero-angle RZ omitted, length <= 5). X, SX and RZ
/// pass through unchanged.
std::vector<Instruction> decompose_1q(const Instruction& inst);

/// Lowers a 2-qubit gate: CX passes through, SWAP becomes 3 CX, controlled
/// rotations become 1-qubit rotations plus exactly 2 CX.
std::vector<Instruction> decompose_2q(const Instruction& inst);

struct RouteResult {
    Circuit circuit;
    /// final_layout[logical] = physical wire holding that logical qubit at
    /// the end of the routed circuit.
    std::vector<int> final_layout;
    int swap_count = 0;
};

/// Makes every CX act on a coupling-map edge by inserting SWAP chains
/// (emitted as CX triples) along shortest paths. Input two-qubit gates must
/// all be CX.
RouteResult route(const Circuit& c, const CouplingMap& map);

/// Local rewrites within barrier-delimited regions: merge adjacent same-qubit
/// RZ (mod 2pi), drop RZ(0), cancel adjacent identical CX pairs and adjacent
/// X pairs. No rewrite crosses a barrier.
Circuit peephole(const Circuit& c);

struct TranspileStats {
    int depth_before = 0;
    int depth_after = 0;
    int swap_count = 0;
    std::size_t gates_after = 0;
};

struct TranspileResult {
    Circuit circuit;
    std::vector<int> final_layout;
    TranspileStats stats;
};

/// Full pipeline: decompose_2q -> route -> decompose_1q -> peephole -> strip
/// barriers. Output uses only {X, SX, RZ, CX} and respects the coupling map;
/// semantics are preserved modulo final_layout.
TranspileResult transpile(const Circuit& c, const CouplingMap& map);

}  // namespace qfp
