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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qfp {

/// Gate vocabulary of the circuit IR. The hardware basis set is exactly
/// {X, SX, RZ, CX}; everything else is lowered by the transpiler.
enum class GateKind {
    X,
    SX,
    H,
    RX,
    RY,
    RZ,
    CX,
    CRX,
    CRY,
    CRZ,
    SWAP,
    Barrier,
};

constexpr int kNumGateKinds = 12;

constexpr std::array<GateKind, kNumGateKinds> all_gate_kinds() {
    return {GateKind::X,   GateKind::SX,  GateKind::H,   GateKind::RX,
            GateKind::RY,  GateKind::RZ,  GateKind::CX,  GateKind::CRX,
            GateKind::CRY, GateKind::CRZ, GateKind::SWAP, GateKind::Barrier};
}

/// Number of qubit operands; -1 for Barrier (spans any >= 1).
int gate_arity(GateKind kind);
/// Number of real rotation parameters (radians).
int gate_param_count(GateKind kind);
std::string_view gate_name(GateKind kind);
std::string_view gate_qasm_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);
std::optional<GateKind> gate_from_qasm_name(std::string_view name);
/// True for the hardware basis set {X, SX, RZ, CX}.
bool is_basis_gate(GateKind kind);
bool is_two_qubit_gate(GateKind kind);

/// The five encoding labels, in canonical order (defines class indices 0..4).
enum class EncodingClass {
    Amplitude = 0,
    Basis = 1,
    AngleRX = 2,
    AngleRY = 3,
    AngleRZ = 4,
};

constexpr int kNumEncodingClasses = 5;
std::string_view encoding_class_name(EncodingClass cls);
std::optional<EncodingClass> encoding_class_from_name(std::string_view name);
std::vector<std::string> encoding_class_names();

/// One gate application. For controlled gates qubits[0] is the control and
/// qubits[1] the target.
struct Instruction {
    GateKind kind;
    std::vector<int> qubits;
    std::vector<double> params;

    static Instruction gate(GateKind kind, int qubit) {
        return {kind, {qubit}, {}};
    }
    static Instruction rotation(GateKind kind, int qubit, double angle) {
        return {kind, {qubit}, {angle}};
    }
    static Instruction gate2(GateKind kind, int a, int b) {
        return {kind, {a, b}, {}};
    }
    static Instruction controlled_rotation(GateKind kind, int control,
                                           int target, double angle) {
        return {kind, {control, target}, {angle}};
    }
    static Instruction barrier(std::vector<int> qubits) {
        return {GateKind::Barrier, std::move(qubits), {}};
    }

    bool operator==(const Instruction&) const = default;
};

/// Throws std::invalid_argument when the instruction violates arity,
/// parameter-count, qubit-range, or operand-distinctness rules.
void validate_instruction(const Instruction& inst, int n_qubits);

/// Ordered instruction list over a flat qubit register. Immutable by
/// convention after construction; all operations on circuits are pure.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    const std::vector<Instruction>& instructions() const { return instructions_; }
    std::size_t size() const { return instructions_.size(); }
    bool empty() const { return instructions_.empty(); }

    void append(Instruction inst);
    /// Appends every instruction of `other` (qubit counts must match).
    void extend(const Circuit& other);

    bool operator==(const Circuit& other) const;

    std::optional<EncodingClass> label;
    std::map<std::string, std::string> meta;

  private:
    int n_qubits_ = 0;
    std::vector<Instruction> instructions_;
};

/// ASAP layering depth. Barriers synchronize their qubits but count zero.
int depth(const Circuit& c);

/// ASAP layer (1-based) of every instruction; barriers get 0.
std::vector<int> asap_layers(const Circuit& c);

/// Exact multiset counts per gate kind, barriers counted separately.
std::map<GateKind, std::size_t> gate_counts(const Circuit& c);

/// Non-barrier instruction count.
std::size_t gate_total(const Circuit& c);

}  // namespace qfp
