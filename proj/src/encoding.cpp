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

#include "encoding.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rng.hpp"

namespace qfp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t gray(std::uint64_t i) { return i ^ (i >> 1); }

/// In-place Walsh-Hadamard transform: a[m] <- sum_c (-1)^{popcount(m & c)} a[c].
void walsh_hadamard(std::vector<double>& a) {
    for (std::size_t len = 1; len < a.size(); len <<= 1) {
        for (std::size_t block = 0; block < a.size(); block += len << 1) {
            for (std::size_t i = block; i < block + len; ++i) {
                const double x = a[i];
                const double y = a[i + len];
                a[i] = x + y;
                a[i + len] = x - y;
            }
        }
    }
}

/// One multiplexed rotation: R_axis(angles[c]) on `target`, selected by the
/// computational-basis value c of `selects` (selects[b] carries bit b).
/// Decomposed into 2^k rotations interleaved with 2^k CX along a Gray-code
/// walk; for k = 0 it is a plain rotation.
void emit_multiplexed_rotation(Circuit& circuit, GateKind axis, int target,
                               const std::vector<int>& selects,
                               const std::vector<double>& angles) {
    const std::size_t k = selects.size();
    if (k == 0) {
        circuit.append(Instruction::rotation(axis, target, angles[0]));
        return;
    }
    const std::size_t count = std::size_t{1} << k;
    std::vector<double> transformed = angles;
    walsh_hadamard(transformed);
    const double scale = 1.0 / static_cast<double>(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double alpha = transformed[gray(j)] * scale;
        circuit.append(Instruction::rotation(axis, target, alpha));
        const int ctrl_bit =
            (j + 1 == count)
                ? static_cast<int>(k) - 1
                : std::countr_zero(static_cast<std::uint64_t>(j) + 1);
        circuit.append(Instruction::gate2(GateKind::CX,
                                          selects[static_cast<std::size_t>(ctrl_bit)],
                                          target));
    }
}

struct MultiplexStep {
    GateKind axis;
    int target;
    std::vector<int> selects;
    std::vector<double> angles;
};

}  // namespace

Circuit basis_encode(const std::vector<int>& bits) {
    if (bits.empty()) {
        throw std::invalid_argument("basis_encode: empty bit string");
    }
    Circuit c(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) {
            throw std::invalid_argument("basis_encode: bits must be 0 or 1");
        }
        if (bits[i] == 1) {
            c.append(Instruction::gate(GateKind::X, static_cast<int>(i)));
        }
    }
    c.label = EncodingClass::Basis;
    return c;
}

Circuit angle_encode(const std::vector<double>& features, RotationAxis axis) {
    if (features.empty()) {
        throw std::invalid_argument("angle_encode: empty feature vector");
    }
    Circuit c(static_cast<int>(features.size()));
    GateKind kind;
    switch (axis) {
        case RotationAxis::X:
            kind = GateKind::RX;
            c.label = EncodingClass::AngleRX;
            break;
        case RotationAxis::Y:
            kind = GateKind::RY;
            c.label = EncodingClass::AngleRY;
            break;
        case RotationAxis::Z:
            kind = GateKind::RZ;
            c.label = EncodingClass::AngleRZ;
            break;
        default:
            throw std::invalid_argument("angle_encode: bad axis");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        c.append(Instruction::rotation(kind, static_cast<int>(i), features[i]));
    }
    return c;
}

AmplitudeVector haar_random_state(int n_qubits, std::uint64_t seed,
                                  bool real_only) {
    if (n_qubits < 1) {
        throw std::invalid_argument("haar_random_state: n_qubits must be >= 1");
    }
    Rng rng(seed);
    AmplitudeVector v(std::size_t{1} << n_qubits);
    double norm_sq = 0.0;
    for (auto& a : v) {
        const double re = rng.normal();
        const double im = real_only ? 0.0 : rng.normal();
        a = {re, im};
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : v) {
        a *= inv;
    }
    return v;
}

Circuit amplitude_encode(const AmplitudeVector& target) {
    const std::size_t dim = target.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument(
            "amplitude_encode: dimension must be a power of two >= 2");
    }
    double norm_sq = 0.0;
    for (const auto& a : target) {
        norm_sq += std::norm(a);
    }
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-9) {
        throw std::invalid_argument("amplitude_encode: input is not normalized");
    }
    const int n = std::countr_zero(dim);

    // Disentangle qubit m = 0, 1, ... in turn: a multiplexed RZ aligns the
    // phases of each amplitude pair, a multiplexed RY zeroes the |1>
    // component. Recording the steps and inverting them afterwards yields the
    // preparation circuit.
    AmplitudeVector work = target;
    std::vector<MultiplexStep> steps;
    for (int m = 0; m < n; ++m) {
        const std::size_t half = work.size() / 2;
        std::vector<double> rz_angles(half);
        std::vector<double> ry_angles(half);
        AmplitudeVector next(half);
        for (std::size_t i = 0; i < half; ++i) {
            const std::complex<double> a = work[2 * i];
            const std::complex<double> b = work[2 * i + 1];
            const double mag_a = std::abs(a);
            const double mag_b = std::abs(b);
            const double r = std::hypot(mag_a, mag_b);
            double gamma = 0.0;
            double delta = 0.0;
            if (r > 1e-15) {
                gamma = 2.0 * std::atan2(mag_b, mag_a);
                const double phase_a = mag_a > 1e-15 ? std::arg(a) : 0.0;
                const double phase_b = mag_b > 1e-15 ? std::arg(b) : phase_a;
                delta = phase_b - phase_a;
            }
            rz_angles[i] = -delta;
            ry_angles[i] = -gamma;
            // Residual amplitude after RZ(-delta) then RY(-gamma).
            const std::complex<double> i_unit{0.0, 1.0};
            const std::complex<double> a1 = a * std::exp(i_unit * (delta / 2.0));
            const std::complex<double> b1 = b * std::exp(-i_unit * (delta / 2.0));
            next[i] = std::cos(gamma / 2.0) * a1 + std::sin(gamma / 2.0) * b1;
        }
        std::vector<int> selects;
        for (int b = m + 1; b < n; ++b) {
            selects.push_back(b);
        }
        steps.push_back({GateKind::RZ, m, selects, std::move(rz_angles)});
        steps.push_back({GateKind::RY, m, std::move(selects), std::move(ry_angles)});
        work = std::move(next);
    }

    // Invert: reverse the step order and negate every angle.
    Circuit circuit(n);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        std::vector<double> negated = it->angles;
        for (double& a : negated) {
            a = -a;
        }
        emit_multiplexed_rotation(circuit, it->axis, it->target, it->selects,
                                  negated);
    }
    circuit.label = EncodingClass::Amplitude;
    return circuit;
}

Circuit sample_encoding(EncodingClass cls, int n_qubits, std::uint64_t seed,
                        bool real_amplitudes) {
    if (n_qubits < 1) {
        throw std::invalid_argument("sample_encoding: n_qubits must be >= 1");
    }
    switch (cls) {
        case EncodingClass::Basis: {
            Rng rng(seed);
            std::vector<int> bits(static_cast<std::size_t>(n_qubits));
            for (auto& b : bits) {
                b = rng.bit() ? 1 : 0;
            }
            return basis_encode(bits);
        }
        case EncodingClass::AngleRX:
        case EncodingClass::AngleRY:
        case EncodingClass::AngleRZ: {
            Rng rng(seed);
            std::vector<double> features(static_cast<std::size_t>(n_qubits));
            for (auto& x : features) {
                x = rng.uniform(0.0, kTwoPi);
            }
            const RotationAxis axis = cls == EncodingClass::AngleRX
                                          ? RotationAxis::X
                                      : cls == EncodingClass::AngleRY
                                          ? RotationAxis::Y
                                          : RotationAxis::Z;
            return angle_encode(features, axis);
        }
        case EncodingClass::Amplitude:
            return amplitude_encode(
                haar_random_state(n_qubits, seed, real_amplitudes));
    }
    throw std::invalid_argument("sample_encoding: bad class");
}

}  // namespace qfp
