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

#include "defense.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace qfp {

ObfuscationKey gen_key(int n_qubits, std::uint64_t seed) {
    if (n_qubits < 1) {
        throw std::invalid_argument("gen_key: n_qubits must be >= 1");
    }
    ObfuscationKey key;
    key.n_qubits = n_qubits;
    key.seed = seed;
    Rng rng(seed);
    key.thetas.resize(static_cast<std::size_t>(n_qubits));
    for (double& theta : key.thetas) {
        theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return key;
}

Circuit obf_layer(const ObfuscationKey& key) {
    Circuit c(key.n_qubits);
    for (int q = 0; q < key.n_qubits; ++q) {
        c.append(Instruction::gate(GateKind::H, q));
    }
    for (int q = 0; q < key.n_qubits; ++q) {
        c.append(Instruction::rotation(GateKind::RX, q,
                                       key.thetas[static_cast<std::size_t>(q)]));
    }
    for (int j = 0; 2 * j + 1 < key.n_qubits; ++j) {
        c.append(Instruction::gate2(GateKind::CX, 2 * j, 2 * j + 1));
    }
    return c;
}

Circuit inv_layer(const ObfuscationKey& key) {
    Circuit c(key.n_qubits);
    int pairs = 0;
    while (2 * pairs + 1 < key.n_qubits) {
        ++pairs;
    }
    for (int j = pairs - 1; j >= 0; --j) {
        c.append(Instruction::gate2(GateKind::CX, 2 * j, 2 * j + 1));
    }
    for (int q = 0; q < key.n_qubits; ++q) {
        c.append(Instruction::rotation(GateKind::RX, q,
                                       -key.thetas[static_cast<std::size_t>(q)]));
    }
    for (int q = 0; q < key.n_qubits; ++q) {
        c.append(Instruction::gate(GateKind::H, q));
    }
    return c;
}

Circuit defend(const Circuit& encoding, const Circuit& pqc,
               const ObfuscationKey& key) {
    if (encoding.n_qubits() != pqc.n_qubits() ||
        encoding.n_qubits() != key.n_qubits) {
        throw std::invalid_argument("defend: qubit count mismatch");
    }
    std::vector<int> all(static_cast<std::size_t>(encoding.n_qubits()));
    std::iota(all.begin(), all.end(), 0);

    Circuit out = encoding;
    out.append(Instruction::barrier(all));
    out.extend(obf_layer(key));
    out.append(Instruction::barrier(all));
    out.extend(inv_layer(key));
    out.append(Instruction::barrier(all));
    out.extend(pqc);
    out.label = encoding.label;
    out.meta["defended"] = "1";
    out.meta["key_seed"] = std::to_string(key.seed);
    return out;
}

}  // namespace qfp
