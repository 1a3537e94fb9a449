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

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "encoding.hpp"
#include "statevector.hpp"

using namespace qfp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("basis_encode structure") {
    SUBCASE("[1,0,1] -> X q0; X q2") {
        const Circuit c = basis_encode({1, 0, 1});
        REQUIRE(c.size() == 2);
        CHECK(c.instructions()[0] == Instruction::gate(GateKind::X, 0));
        CHECK(c.instructions()[1] == Instruction::gate(GateKind::X, 2));
        CHECK(c.label == EncodingClass::Basis);
    }
    SUBCASE("all-zero input gives an empty circuit") {
        const Circuit c = basis_encode({0, 0, 0});
        CHECK(c.empty());
        CHECK(c.n_qubits() == 3);
    }
    SUBCASE("single bit") {
        const Circuit c = basis_encode({1});
        REQUIRE(c.size() == 1);
        CHECK(c.instructions()[0].kind == GateKind::X);
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(basis_encode({}), std::invalid_argument);
    }
}

TEST_CASE("basis_encode prepares the exact computational basis state") {
    Rng rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.range(1, 6);
        std::vector<int> bits(static_cast<std::size_t>(n));
        std::size_t index = 0;
        for (int q = 0; q < n; ++q) {
            bits[static_cast<std::size_t>(q)] = rng.bit() ? 1 : 0;
            if (bits[static_cast<std::size_t>(q)]) {
                index |= std::size_t{1} << q;
            }
        }
        const StateVector out = run(basis_encode(bits));
        CHECK(std::norm(out[index]) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("angle_encode") {
    SUBCASE("zero features on Y axis act as identity") {
        const Circuit c = angle_encode({0.0, 0.0}, RotationAxis::Y);
        REQUIRE(c.size() == 2);
        CHECK(c.label == EncodingClass::AngleRY);
        const StateVector out = run(c);
        CHECK(std::abs(out[0] - Complex{1.0, 0.0}) < 1e-12);
    }
    SUBCASE("RX(pi) from |0> has fidelity 1 with |1>") {
        const Circuit c = angle_encode({kPi}, RotationAxis::X);
        const StateVector out = run(c);
        Circuit flip(1);
        flip.append(Instruction::gate(GateKind::X, 0));
        CHECK(fidelity(out, run(flip)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("Z axis keeps the exact angles") {
        const Circuit c = angle_encode({0.7, 1.3, 5.1}, RotationAxis::Z);
        REQUIRE(c.size() == 3);
        CHECK(c.label == EncodingClass::AngleRZ);
        CHECK(c.instructions()[0].params[0] == 0.7);
        CHECK(c.instructions()[1].params[0] == 1.3);
        CHECK(c.instructions()[2].params[0] == 5.1);
        for (int q = 0; q < 3; ++q) {
            CHECK(c.instructions()[static_cast<std::size_t>(q)].kind ==
                  GateKind::RZ);
            CHECK(c.instructions()[static_cast<std::size_t>(q)].qubits[0] == q);
        }
    }
    SUBCASE("gate count equals qubit count, all same kind on distinct qubits") {
        const Circuit c = angle_encode({1.0, 2.0, 3.0, 4.0}, RotationAxis::X);
        CHECK(c.size() == 4);
        for (const Instruction& inst : c.instructions()) {
            CHECK(inst.kind == GateKind::RX);
        }
    }
}

TEST_CASE("haar_random_state") {
    SUBCASE("normalized") {
        for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
            const AmplitudeVector v = haar_random_state(3, seed);
            double norm_sq = 0.0;
            for (const auto& a : v) {
                norm_sq += std::norm(a);
            }
            CHECK(std::abs(std::sqrt(norm_sq) - 1.0) < 1e-12);
        }
    }
    SUBCASE("deterministic per seed") {
        const AmplitudeVector a = haar_random_state(4, 777);
        const AmplitudeVector b = haar_random_state(4, 777);
        CHECK(a == b);
        const AmplitudeVector c = haar_random_state(4, 778);
        CHECK(a != c);
    }
    SUBCASE("mean |amplitude|^2 over many samples approaches 1/2^n") {
        // Monte Carlo oracle: at n=2 each basis index carries 0.25 on
        // average.
        const int samples = 10000;
        std::array<double, 4> acc{};
        for (int s = 0; s < samples; ++s) {
            const AmplitudeVector v =
                haar_random_state(2, 100000 + static_cast<std::uint64_t>(s));
            for (std::size_t i = 0; i < 4; ++i) {
                acc[i] += std::norm(v[i]);
            }
        }
        for (double& a : acc) {
            a /= samples;
            CHECK(a == doctest::Approx(0.25).epsilon(0.04));
        }
    }
    SUBCASE("real_only leaves imaginary parts zero") {
        const AmplitudeVector v = haar_random_state(3, 5, /*real_only=*/true);
        for (const auto& a : v) {
            CHECK(a.imag() == 0.0);
        }
    }
}

TEST_CASE("amplitude_encode") {
    SUBCASE("basis state e_0 yields all-zero rotation angles") {
        AmplitudeVector v(8, Complex{0.0, 0.0});
        v[0] = 1.0;
        const Circuit c = amplitude_encode(v);
        for (const Instruction& inst : c.instructions()) {
            if (!inst.params.empty()) {
                CHECK(std::abs(inst.params[0]) < 1e-12);
            }
        }
        CHECK(fidelity(run(c), StateVector(3)) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(c.label == EncodingClass::Amplitude);
    }
    SUBCASE("single-qubit uniform superposition") {
        const AmplitudeVector v{Complex{1.0 / std::sqrt(2.0), 0.0},
                                Complex{1.0 / std::sqrt(2.0), 0.0}};
        const Circuit c = amplitude_encode(v);
        const StateVector got = run(c);
        const StateVector want(1, v);
        CHECK(fidelity(got, want) == doctest::Approx(1.0).epsilon(1e-9));
        // Expected form: a RY(pi/2) with the RZ slot at zero angle.
        bool found_ry_half_pi = false;
        for (const Instruction& inst : c.instructions()) {
            if (inst.kind == GateKind::RY &&
                std::abs(inst.params[0] - kPi / 2.0) < 1e-12) {
                found_ry_half_pi = true;
            }
        }
        CHECK(found_ry_half_pi);
    }
    SUBCASE("output alphabet and CX budget") {
        const AmplitudeVector v = haar_random_state(5, 31337);
        const Circuit c = amplitude_encode(v);
        std::size_t cx = 0;
        for (const Instruction& inst : c.instructions()) {
            const bool allowed = inst.kind == GateKind::RY ||
                                 inst.kind == GateKind::RZ ||
                                 inst.kind == GateKind::CX ||
                                 inst.kind == GateKind::X;
            CHECK(allowed);
            if (inst.kind == GateKind::CX) {
                ++cx;
            }
        }
        CHECK(cx <= (std::size_t{1} << 6));  // 2^(n+1) at n=5
    }
    SUBCASE("oracle fidelity over Haar-random vectors up to n = 8") {
        Rng rng(8844);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + trial % 7;  // n in 2..8
            const AmplitudeVector v = haar_random_state(n, rng.next_u64());
            const Circuit c = amplitude_encode(v);
            const StateVector got = run(c);
            const StateVector want(n, v);
            REQUIRE(fidelity(got, want) >= 1.0 - 1e-9);
        }
    }
    SUBCASE("rejects unnormalized and non-power-of-two input") {
        CHECK_THROWS_AS(amplitude_encode({Complex{1.0}, Complex{1.0}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(amplitude_encode(AmplitudeVector(3, Complex{0.5})),
                        std::invalid_argument);
    }
}

TEST_CASE("sample_encoding dispatch and determinism") {
    SUBCASE("basis circuits contain only X gates") {
        const Circuit c = sample_encoding(EncodingClass::Basis, 3, 42);
        for (const Instruction& inst : c.instructions()) {
            CHECK(inst.kind == GateKind::X);
        }
    }
    SUBCASE("angle RY samples exactly n RY gates") {
        const Circuit c = sample_encoding(EncodingClass::AngleRY, 4, 42);
        CHECK(c.size() == 4);
        for (const Instruction& inst : c.instructions()) {
            CHECK(inst.kind == GateKind::RY);
        }
    }
    SUBCASE("amplitude sample prepares haar_random_state(n, seed)") {
        const std::uint64_t seed = 918273;
        const Circuit c = sample_encoding(EncodingClass::Amplitude, 3, seed);
        const StateVector got = run(c);
        const StateVector want(3, haar_random_state(3, seed));
        CHECK(fidelity(got, want) >= 1.0 - 1e-9);
    }
    SUBCASE("byte-identical circuits on repeat") {
        for (int cls = 0; cls < kNumEncodingClasses; ++cls) {
            const auto encoding_class = static_cast<EncodingClass>(cls);
            const Circuit a = sample_encoding(encoding_class, 3, 5);
            const Circuit b = sample_encoding(encoding_class, 3, 5);
            CHECK(a == b);
        }
    }
}
