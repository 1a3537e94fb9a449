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
#include <vector>

#include "circuit.hpp"

namespace qfp {

/// 2^n complex amplitudes, expected L2-normalized.
using AmplitudeVector = std::vector<std::complex<double>>;

enum class RotationAxis { X, Y, Z };

/// Bit-to-qubit mapping: one X gate on every qubit whose bit is 1.
Circuit basis_encode(const std::vector<int>& bits);

/// One R_axis(x_i) per qubit (single feature per qubit).
Circuit angle_encode(const std::vector<double>& features, RotationAxis axis);

/// i.i.d. standard complex Gaussian entries, L2-normalized; deterministic
/// per seed. With real_only the imaginary parts are zero.
AmplitudeVector haar_random_state(int n_qubits, std::uint64_t seed,
                                  bool real_only = false);

/// State preparation over {RY, RZ, CX}: recursive disentanglement with
/// multiplexed RY magnitude and RZ phase rotations, controls expanded into
/// CX + single-qubit rotations (Gray-code walk). Prepares the target vector
/// from |0...0> up to global phase; CX count <= 2^(n+1).
/// Zero-angle rotations are emitted as-is; the transpiler's peephole drops
/// them later.
Circuit amplitude_encode(const AmplitudeVector& target);

/// Dispatches to the matching constructor with seeded random inputs:
/// Basis: fair bits; AngleR*: x_i ~ U(0, 2pi); Amplitude: haar_random_state
/// with this seed.
Circuit sample_encoding(EncodingClass cls, int n_qubits, std::uint64_t seed,
                        bool real_amplitudes = false);

}  // namespace qfp
