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

#include "circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfp {

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::SX:
        case GateKind::H:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            return 1;
        case GateKind::CX:
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ:
        case GateKind::SWAP:
            return 2;
        case GateKind::Barrier:
            return -1;
    }
    return -1;
}

int gate_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ:
            return 1;
        default:
            return 0;
    }
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::SX: return "SX";
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CX: return "CX";
        case GateKind::CRX: return "CRX";
        case GateKind::CRY: return "CRY";
        case GateKind::CRZ: return "CRZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::Barrier: return "BARRIER";
    }
    return "?";
}

std::string_view gate_qasm_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "x";
        case GateKind::SX: return "sx";
        case GateKind::H: return "h";
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::CX: return "cx";
        case GateKind::CRX: return "crx";
        case GateKind::CRY: return "cry";
        case GateKind::CRZ: return "crz";
        case GateKind::SWAP: return "swap";
        case GateKind::Barrier: return "barrier";
    }
    return "?";
}

std::optional<GateKind> gate_from_name(std::string_view name) {
    for (GateKind k : all_gate_kinds()) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<GateKind> gate_from_qasm_name(std::string_view name) {
    for (GateKind k : all_gate_kinds()) {
        if (gate_qasm_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

bool is_basis_gate(GateKind kind) {
    return kind == GateKind::X || kind == GateKind::SX ||
           kind == GateKind::RZ || kind == GateKind::CX;
}

bool is_two_qubit_gate(GateKind kind) { return gate_arity(kind) == 2; }

std::string_view encoding_class_name(EncodingClass cls) {
    switch (cls) {
        case EncodingClass::Amplitude: return "Amplitude";
        case EncodingClass::Basis: return "Basis";
        case EncodingClass::AngleRX: return "AngleRX";
        case EncodingClass::AngleRY: return "AngleRY";
        case EncodingClass::AngleRZ: return "AngleRZ";
    }
    return "?";
}

std::optional<EncodingClass> encoding_class_from_name(std::string_view name) {
    for (int i = 0; i < kNumEncodingClasses; ++i) {
        auto cls = static_cast<EncodingClass>(i);
        if (encoding_class_name(cls) == name) {
            return cls;
        }
    }
    return std::nullopt;
}

std::vector<std::string> encoding_class_names() {
    std::vector<std::string> names;
    names.reserve(kNumEncodingClasses);
    for (int i = 0; i < kNumEncodingClasses; ++i) {
        names.emplace_back(encoding_class_name(static_cast<EncodingClass>(i)));
    }
    return names;
}

void validate_instruction(const Instruction& inst, int n_qubits) {
    const int arity = gate_arity(inst.kind);
    if (arity >= 0 && static_cast<int>(inst.qubits.size()) != arity) {
        throw std::invalid_argument(
            std::string(gate_name(inst.kind)) + ": expected " +
            std::to_string(arity) + " qubit operand(s), got " +
            std::to_string(inst.qubits.size()));
    }
    if (inst.kind == GateKind::Barrier && inst.qubits.empty()) {
        throw std::invalid_argument("BARRIER: needs at least one qubit");
    }
    for (int q : inst.qubits) {
        if (q < 0 || q >= n_qubits) {
            throw std::invalid_argument(
                std::string(gate_name(inst.kind)) + ": qubit index " +
                std::to_string(q) + " out of range for " +
                std::to_string(n_qubits) + " qubit(s)");
        }
    }
    for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
        for (std::size_t j = i + 1; j < inst.qubits.size(); ++j) {
            if (inst.qubits[i] == inst.qubits[j]) {
                throw std::invalid_argument(
                    std::string(gate_name(inst.kind)) +
                    ": duplicate qubit operand " +
                    std::to_string(inst.qubits[i]));
            }
        }
    }
    const auto want_params = static_cast<std::size_t>(gate_param_count(inst.kind));
    if (inst.params.size() != want_params) {
        throw std::invalid_argument(
            std::string(gate_name(inst.kind)) + ": expected " +
            std::to_string(want_params) + " parameter(s), got " +
            std::to_string(inst.params.size()));
    }
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("Circuit: n_qubits must be positive");
    }
}

void Circuit::append(Instruction inst) {
    validate_instruction(inst, n_qubits_);
    instructions_.push_back(std::move(inst));
}

void Circuit::extend(const Circuit& other) {
    if (other.n_qubits() != n_qubits_) {
        throw std::invalid_argument("Circuit::extend: qubit count mismatch");
    }
    instructions_.insert(instructions_.end(), other.instructions_.begin(),
                         other.instructions_.end());
}

bool Circuit::operator==(const Circuit& other) const {
    return n_qubits_ == other.n_qubits_ && label == other.label &&
           meta == other.meta && instructions_ == other.instructions_;
}

std::vector<int> asap_layers(const Circuit& c) {
    std::vector<int> frontier(static_cast<std::size_t>(c.n_qubits()), 0);
    std::vector<int> layers(c.size(), 0);
    std::size_t idx = 0;
    for (const Instruction& inst : c.instructions()) {
        if (inst.kind == GateKind::Barrier) {
            int sync = 0;
            for (int q : inst.qubits) {
                sync = std::max(sync, frontier[static_cast<std::size_t>(q)]);
            }
            for (int q : inst.qubits) {
                frontier[static_cast<std::size_t>(q)] = sync;
            }
            layers[idx] = 0;
        } else {
            int layer = 0;
            for (int q : inst.qubits) {
                layer = std::max(layer, frontier[static_cast<std::size_t>(q)]);
            }
            ++layer;
            for (int q : inst.qubits) {
                frontier[static_cast<std::size_t>(q)] = layer;
            }
            layers[idx] = layer;
        }
        ++idx;
    }
    return layers;
}

int depth(const Circuit& c) {
    int result = 0;
    for (int layer : asap_layers(c)) {
        result = std::max(result, layer);
    }
    return result;
}

std::map<GateKind, std::size_t> gate_counts(const Circuit& c) {
    std::map<GateKind, std::size_t> counts;
    for (GateKind k : all_gate_kinds()) {
        counts[k] = 0;
    }
    for (const Instruction& inst : c.instructions()) {
        ++counts[inst.kind];
    }
    return counts;
}

std::size_t gate_total(const Circuit& c) {
    std::size_t total = 0;
    for (const Instruction& inst : c.instructions()) {
        if (inst.kind != GateKind::Barrier) {
            ++total;
        }
    }
    return total;
}

}  // namespace qfp
