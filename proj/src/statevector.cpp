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

#include "statevector.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qfp {

namespace {

// Row-major 2x2 unitary [u00, u01, u10, u11].
using Mat2 = std::array<Complex, 4>;

Mat2 single_qubit_matrix(GateKind kind, double theta) {
    const Complex i{0.0, 1.0};
    switch (kind) {
        case GateKind::X:
            return {Complex{0}, Complex{1}, Complex{1}, Complex{0}};
        case GateKind::SX:
            return {0.5 * Complex{1, 1}, 0.5 * Complex{1, -1},
                    0.5 * Complex{1, -1}, 0.5 * Complex{1, 1}};
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return {Complex{s}, Complex{s}, Complex{s}, Complex{-s}};
        }
        case GateKind::RX: {
            const double c = std::cos(theta / 2.0);
            const double s = std::sin(theta / 2.0);
            return {Complex{c}, -i * s, -i * s, Complex{c}};
        }
        case GateKind::RY: {
            const double c = std::cos(theta / 2.0);
            const double s = std::sin(theta / 2.0);
            return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
        }
        case GateKind::RZ:
            return {std::exp(-i * (theta / 2.0)), Complex{0}, Complex{0},
                    std::exp(i * (theta / 2.0))};
        default:
            throw std::invalid_argument("not a single-qubit gate");
    }
}

void apply_1q(std::vector<Complex>& amps, int qubit, const Mat2& u) {
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t n = amps.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        if ((idx & mask) == 0) {
            const Complex a = amps[idx];
            const Complex b = amps[idx | mask];
            amps[idx] = u[0] * a + u[1] * b;
            amps[idx | mask] = u[2] * a + u[3] * b;
        }
    }
}

void apply_controlled_1q(std::vector<Complex>& amps, int control, int target,
                         const Mat2& u) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t n = amps.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        if ((idx & cmask) != 0 && (idx & tmask) == 0) {
            const Complex a = amps[idx];
            const Complex b = amps[idx | tmask];
            amps[idx] = u[0] * a + u[1] * b;
            amps[idx | tmask] = u[2] * a + u[3] * b;
        }
    }
}

void apply_cx(std::vector<Complex>& amps, int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t n = amps.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        if ((idx & cmask) != 0 && (idx & tmask) == 0) {
            std::swap(amps[idx], amps[idx | tmask]);
        }
    }
}

void apply_swap(std::vector<Complex>& amps, int a, int b) {
    const std::size_t amask = std::size_t{1} << a;
    const std::size_t bmask = std::size_t{1} << b;
    const std::size_t n = amps.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        if ((idx & amask) != 0 && (idx & bmask) == 0) {
            std::swap(amps[idx], amps[(idx & ~amask) | bmask]);
        }
    }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("StateVector: unsupported qubit count");
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0});
    amplitudes_[0] = Complex{1};
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("StateVector: amplitude count != 2^n");
    }
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const Complex& a : amplitudes_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void apply_instruction(StateVector& state, const Instruction& inst) {
    auto& amps = state.amplitudes();
    switch (inst.kind) {
        case GateKind::X:
        case GateKind::SX:
        case GateKind::H:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ: {
            const double theta = inst.params.empty() ? 0.0 : inst.params[0];
            apply_1q(amps, inst.qubits[0], single_qubit_matrix(inst.kind, theta));
            return;
        }
        case GateKind::CX:
            apply_cx(amps, inst.qubits[0], inst.qubits[1]);
            return;
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ: {
            const GateKind rot = inst.kind == GateKind::CRX  ? GateKind::RX
                                 : inst.kind == GateKind::CRY ? GateKind::RY
                                                              : GateKind::RZ;
            apply_controlled_1q(amps, inst.qubits[0], inst.qubits[1],
                                single_qubit_matrix(rot, inst.params[0]));
            return;
        }
        case GateKind::SWAP:
            apply_swap(amps, inst.qubits[0], inst.qubits[1]);
            return;
        case GateKind::Barrier:
            return;
    }
}

StateVector run(const Circuit& c) { return run(c, StateVector(c.n_qubits())); }

StateVector run(const Circuit& c, StateVector initial) {
    if (initial.n_qubits() != c.n_qubits()) {
        throw std::invalid_argument("run: state/circuit qubit count mismatch");
    }
    for (const Instruction& inst : c.instructions()) {
        apply_instruction(initial, inst);
    }
    return initial;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Complex overlap{0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        overlap += std::conj(a[i]) * b[i];
    }
    return std::norm(overlap);
}

StateVector random_state(int n_qubits, Rng& rng) {
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    double norm_sq = 0.0;
    for (Complex& a : amps) {
        a = Complex{rng.normal(), rng.normal()};
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (Complex& a : amps) {
        a *= inv;
    }
    return StateVector(n_qubits, std::move(amps));
}

StateVector apply_layout(const StateVector& physical,
                         const std::vector<int>& layout) {
    const int n = physical.n_qubits();
    if (static_cast<int>(layout.size()) != n) {
        throw std::invalid_argument("apply_layout: layout size mismatch");
    }
    std::vector<Complex> out(physical.dim());
    for (std::size_t logical_idx = 0; logical_idx < out.size(); ++logical_idx) {
        std::size_t phys_idx = 0;
        for (int l = 0; l < n; ++l) {
            if ((logical_idx >> l) & 1u) {
                phys_idx |= std::size_t{1} << layout[static_cast<std::size_t>(l)];
            }
        }
        out[logical_idx] = physical[phys_idx];
    }
    return StateVector(n, std::move(out));
}

bool equivalent_up_to_global_phase(const Circuit& c1, const Circuit& c2,
                                   const EquivalenceOptions& opts) {
    if (c1.n_qubits() != c2.n_qubits()) {
        throw std::invalid_argument(
            "equivalent_up_to_global_phase: qubit count mismatch");
    }
    if (c1.n_qubits() > 14) {
        throw std::invalid_argument(
            "equivalent_up_to_global_phase: n_qubits > 14");
    }
    Rng rng(opts.seed);
    for (int t = 0; t < opts.trials; ++t) {
        const StateVector input = random_state(c1.n_qubits(), rng);
        const StateVector a = run(c1, input);
        StateVector b = run(c2, input);
        if (opts.layout.has_value()) {
            b = apply_layout(b, *opts.layout);
        }
        if (fidelity(a, b) < 1.0 - opts.tol) {
            return false;
        }
    }
    return true;
}

}  // namespace qfp
