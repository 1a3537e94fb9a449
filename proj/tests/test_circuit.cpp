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

#include "circuit.hpp"

using namespace qfp;

TEST_CASE("gate metadata: arity and parameter counts are fixed per kind") {
    CHECK(gate_arity(GateKind::X) == 1);
    CHECK(gate_arity(GateKind::SX) == 1);
    CHECK(gate_arity(GateKind::H) == 1);
    CHECK(gate_arity(GateKind::RZ) == 1);
    CHECK(gate_arity(GateKind::CX) == 2);
    CHECK(gate_arity(GateKind::CRY) == 2);
    CHECK(gate_arity(GateKind::SWAP) == 2);
    CHECK(gate_arity(GateKind::Barrier) == -1);

    CHECK(gate_param_count(GateKind::RX) == 1);
    CHECK(gate_param_count(GateKind::CRZ) == 1);
    CHECK(gate_param_count(GateKind::X) == 0);
    CHECK(gate_param_count(GateKind::CX) == 0);

    for (GateKind k : {GateKind::X, GateKind::SX, GateKind::RZ, GateKind::CX}) {
        CHECK(is_basis_gate(k));
    }
    CHECK_FALSE(is_basis_gate(GateKind::H));
    CHECK_FALSE(is_basis_gate(GateKind::Barrier));
}

TEST_CASE("encoding classes: five values in canonical order") {
    CHECK(kNumEncodingClasses == 5);
    CHECK(static_cast<int>(EncodingClass::Amplitude) == 0);
    CHECK(static_cast<int>(EncodingClass::Basis) == 1);
    CHECK(static_cast<int>(EncodingClass::AngleRX) == 2);
    CHECK(static_cast<int>(EncodingClass::AngleRY) == 3);
    CHECK(static_cast<int>(EncodingClass::AngleRZ) == 4);
    CHECK(encoding_class_from_name("AngleRY") == EncodingClass::AngleRY);
    CHECK_FALSE(encoding_class_from_name("bogus").has_value());
}

TEST_CASE("instruction validation") {
    Circuit c(2);
    CHECK_THROWS_AS(c.append(Instruction::gate2(GateKind::CX, 0, 0)),
                    std::invalid_argument);  // duplicate operand
    CHECK_THROWS_AS(c.append(Instruction::gate(GateKind::X, 5)),
                    std::invalid_argument);  // out of range
    CHECK_THROWS_AS(c.append({GateKind::RZ, {0}, {}}),
                    std::invalid_argument);  // missing parameter
    CHECK_THROWS_AS(c.append({GateKind::X, {0}, {1.0}}),
                    std::invalid_argument);  // spurious parameter
    CHECK_THROWS_AS(c.append(Instruction::barrier({})),
                    std::invalid_argument);
    CHECK_NOTHROW(c.append(Instruction::barrier({0, 1})));
}

TEST_CASE("depth: empty circuit") {
    Circuit c(3);
    CHECK(depth(c) == 0);
}

TEST_CASE("depth: serial chain then two-qubit gate") {
    Circuit c(2);
    c.append(Instruction::gate(GateKind::X, 0));
    c.append(Instruction::gate(GateKind::X, 0));
    c.append(Instruction::gate2(GateKind::CX, 0, 1));
    CHECK(depth(c) == 3);
}

TEST_CASE("depth: fully parallel layer") {
    Circuit c(3);
    for (int q = 0; q < 3; ++q) {
        c.append(Instruction::gate(GateKind::X, q));
    }
    CHECK(depth(c) == 1);
}

TEST_CASE("depth: barriers synchronize but count zero") {
    Circuit c(2);
    c.append(Instruction::gate(GateKind::X, 0));
    c.append(Instruction::barrier({0, 1}));
    // After the barrier, q1's gate cannot land in layer 1.
    c.append(Instruction::gate(GateKind::X, 1));
    CHECK(depth(c) == 2);

    SUBCASE("appending barriers never changes depth") {
        const int before = depth(c);
        c.append(Instruction::barrier({0}));
        c.append(Instruction::barrier({0, 1}));
        CHECK(depth(c) == before);
    }
}

TEST_CASE("depth is bounded by the non-barrier gate count") {
    Circuit c(3);
    c.append(Instruction::gate(GateKind::X, 0));
    c.append(Instruction::barrier({0, 1, 2}));
    c.append(Instruction::gate(GateKind::SX, 1));
    c.append(Instruction::gate2(GateKind::CX, 1, 2));
    CHECK(depth(c) <= static_cast<int>(gate_total(c)));
}

TEST_CASE("gate_counts") {
    Circuit c(2);
    SUBCASE("empty circuit counts all zero") {
        for (const auto& [kind, count] : gate_counts(c)) {
            CHECK(count == 0);
        }
    }
    SUBCASE("direct counting") {
        c.append(Instruction::gate(GateKind::X, 0));
        c.append(Instruction::gate(GateKind::SX, 1));
        c.append(Instruction::gate2(GateKind::CX, 0, 1));
        auto counts = gate_counts(c);
        CHECK(counts[GateKind::X] == 1);
        CHECK(counts[GateKind::SX] == 1);
        CHECK(counts[GateKind::CX] == 1);
        CHECK(counts[GateKind::RZ] == 0);
    }
    SUBCASE("repeated rotations") {
        c.append(Instruction::rotation(GateKind::RZ, 0, 0.5));
        c.append(Instruction::rotation(GateKind::RZ, 0, 1.0));
        CHECK(gate_counts(c)[GateKind::RZ] == 2);
        CHECK(gate_total(c) == 2);
    }
}
