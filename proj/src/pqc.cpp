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

#include "pqc.hpp"

#include <numbers>
#include <stdexcept>

namespace qfp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string_view entanglement_name(Entanglement e) {
    switch (e) {
        case Entanglement::Linear: return "linear";
        case Entanglement::Circular: return "circular";
        case Entanglement::Full: return "full";
    }
    return "?";
}

const std::vector<GateKind>& pqc_start_gates() {
    static const std::vector<GateKind> pool{
        GateKind::RX,  GateKind::RY,  GateKind::RZ,
        GateKind::CX,  GateKind::X,   GateKind::SX,
        GateKind::CRX, GateKind::CRY, GateKind::CRZ,
    };
    return pool;
}

std::vector<std::pair<int, int>> entanglement_pairs(Entanglement e,
                                                    int n_qubits) {
    std::vector<std::pair<int, int>> pairs;
    switch (e) {
        case Entanglement::Linear:
            for (int i = 0; i + 1 < n_qubits; ++i) {
                pairs.emplace_back(i, i + 1);
            }
            break;
        case Entanglement::Circular:
            for (int i = 0; i + 1 < n_qubits; ++i) {
                pairs.emplace_back(i, i + 1);
            }
            if (n_qubits >= 2) {
                pairs.emplace_back(n_qubits - 1, 0);
            }
            break;
        case Entanglement::Full:
            for (int i = 0; i < n_qubits; ++i) {
                for (int j = i + 1; j < n_qubits; ++j) {
                    pairs.emplace_back(i, j);
                }
            }
            break;
    }
    return pairs;
}

Circuit build_pqc(const PQCConfig& cfg, int n_qubits) {
    if (cfg.layers < 1) {
        throw std::invalid_argument("build_pqc: layers must be >= 1");
    }
    if (cfg.rotation_pool.empty()) {
        throw std::invalid_argument("build_pqc: empty rotation pool");
    }
    for (GateKind k : cfg.rotation_pool) {
        if (k != GateKind::RX && k != GateKind::RY && k != GateKind::RZ) {
            throw std::invalid_argument(
                "build_pqc: rotation pool may only contain RX/RY/RZ");
        }
    }
    const bool start_is_2q = is_two_qubit_gate(cfg.start_gate);
    if (n_qubits < 1 || (start_is_2q && n_qubits < 2)) {
        throw std::invalid_argument(
            "build_pqc: circuit too small for the requested start gate");
    }

    Rng rng(cfg.seed);
    Circuit c(n_qubits);

    switch (cfg.start_gate) {
        case GateKind::X:
        case GateKind::SX:
            c.append(Instruction::gate(cfg.start_gate, 0));
            break;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            c.append(Instruction::rotation(cfg.start_gate, 0,
                                           rng.uniform(0.0, kTwoPi)));
            break;
        case GateKind::CX:
            c.append(Instruction::gate2(GateKind::CX, 0, 1));
            break;
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ:
            c.append(Instruction::controlled_rotation(
                cfg.start_gate, 0, 1, rng.uniform(0.0, kTwoPi)));
            break;
        default:
            throw std::invalid_argument("build_pqc: unsupported start gate");
    }

    const auto pairs = entanglement_pairs(cfg.entanglement, n_qubits);
    for (int layer = 0; layer < cfg.layers; ++layer) {
        for (int q = 0; q < n_qubits; ++q) {
            const GateKind kind =
                cfg.rotation_pool[rng.below(cfg.rotation_pool.size())];
            c.append(Instruction::rotation(kind, q, rng.uniform(0.0, kTwoPi)));
        }
        for (const auto& [a, b] : pairs) {
            c.append(Instruction::gate2(GateKind::CX, a, b));
        }
    }
    return c;
}

PQCConfig sample_pqc_config(int n_qubits, Rng& rng, int layers_min,
                            int layers_max) {
    if (layers_min < 1 || layers_max < layers_min) {
        throw std::invalid_argument("sample_pqc_config: bad layer range");
    }
    PQCConfig cfg;
    cfg.layers = rng.range(layers_min, layers_max);
    const auto& starts = pqc_start_gates();
    // Two-qubit start gates need n >= 2.
    while (true) {
        const GateKind candidate = starts[rng.below(starts.size())];
        if (n_qubits >= 2 || !is_two_qubit_gate(candidate)) {
            cfg.start_gate = candidate;
            break;
        }
    }
    const std::uint64_t pool_mask = 1 + rng.below(7);
    cfg.rotation_pool.clear();
    if (pool_mask & 1) cfg.rotation_pool.push_back(GateKind::RX);
    if (pool_mask & 2) cfg.rotation_pool.push_back(GateKind::RY);
    if (pool_mask & 4) cfg.rotation_pool.push_back(GateKind::RZ);
    cfg.entanglement = static_cast<Entanglement>(rng.below(3));
    cfg.seed = rng.next_u64();
    return cfg;
}

Circuit augment(const Circuit& encoding, const Circuit& pqc) {
    if (encoding.n_qubits() != pqc.n_qubits()) {
        throw std::invalid_argument("augment: qubit count mismatch");
    }
    Circuit out = encoding;
    out.extend(pqc);
    for (const auto& [key, value] : pqc.meta) {
        out.meta.emplace(key, value);
    }
    return out;
}

}  // namespace qfp
