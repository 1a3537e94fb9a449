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

namespace qfp {

/// Per-qubit random phases defining one obfuscation/inversion pair.
struct ObfuscationKey {
    int n_qubits = 0;
    std::vector<double> thetas;  // each in [-pi, pi]
    std::uint64_t seed = 0;
};

/// theta_i ~ U[-pi, pi] i.i.d., deterministic per seed.
ObfuscationKey gen_key(int n_qubits, std::uint64_t seed);

/// H on every qubit, RX(theta_i) on every qubit, then CX on pairs
/// (0,1), (2,3), ... while 2j+1 < n.
Circuit obf_layer(const ObfuscationKey& key);

/// Exact gate-wise inverse: CX pairs in reverse order, RX(-theta_i), H.
Circuit inv_layer(const ObfuscationKey& key);

/// encoding || BARRIER || obf || BARRIER || inv || BARRIER || pqc.
/// Label preserved; meta marks the circuit as defended and records the key
/// seed.
Circuit defend(const Circuit& encoding, const Circuit& pqc,
               const ObfuscationKey& key);

}  // namespace qfp
