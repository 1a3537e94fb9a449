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

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "circuit.hpp"
#include "rng.hpp"

namespace qfp {

using Complex = std::complex<double>;

/// Dense 2^n amplitude vector, little-endian qubit ordering: qubit 0 is the
/// least significant bit of the basis index.
class StateVector {
  public:
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, std::vector<Complex> amplitudes);

    static StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    std::vector<Complex>& amplitudes() { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

  private:
    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Applies one instruction's unitary in place. Barriers are no-ops.
/// Conventions: RZ(t) = diag(e^{-it/2}, e^{it/2}), SX = sqrt(X), CX with
/// qubits[0] as control.
void apply_instruction(StateVector& state, const Instruction& inst);

/// Runs the circuit from |0...0>.
StateVector run(const Circuit& c);
/// Runs the circuit from the given initial state (dimension must match).
StateVector run(const Circuit& c, StateVector initial);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Haar-random state: i.i.d. standard complex Gaussian entries, normalized.
StateVector random_state(int n_qubits, Rng& rng);

/// Re-expresses a physical-wire state on logical labels given
/// layout[logical] = physical wire.
StateVector apply_layout(const StateVector& physical,
                         const std::vector<int>& layout);

struct EquivalenceOptions {
    int trials = 8;
    double tol = 1e-9;
    /// When set, c2's output is read through this logical->physical map
    /// before comparison (needed after routing).
    std::optional<std::vector<int>> layout;
    std::uint64_t seed = 0x5eed5eedULL;
};

/// True iff for `trials` Haar-random inputs the outputs of c1 and c2 agree
/// up to global phase within tol. Requires n <= 14.
bool equivalent_up_to_global_phase(const Circuit& c1, const Circuit& c2,
                                   const EquivalenceOptions& opts = {});

}  // namespace qfp
