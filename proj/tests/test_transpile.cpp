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
#include "serialize.hpp"
#include "statevector.hpp"
#include "transpile.hpp"
#include "verify.hpp"

using namespace qfp;

namespace {
constexpr double kPi = std::numbers::pi;

bool oracle_equivalent(const Instruction& inst,
                       const std::vector<Instruction>& decomposed,
                       int n_qubits) {
    Circuit original(n_qubits);
    original.append(inst);
    Circuit lowered(n_qubits);
    for (const Instruction& piece : decomposed) {
        lowered.append(piece);
    }
    return equivalent_up_to_global_phase(original, lowered);
}
}  // namespace

TEST_CASE("decompose_1q") {
    SUBCASE("basis gates pass through") {
        const auto rz = Instruction::rotation(GateKind::RZ, 0, 1.3);
        CHECK(decompose_1q(rz) == std::vector<Instruction>{rz});
        const auto x = Instruction::gate(GateKind::X, 0);
        CHECK(decompose_1q(x) == std::vector<Instruction>{x});
        const auto sx = Instruction::gate(GateKind::SX, 0);
        CHECK(decompose_1q(sx) == std::vector<Instruction>{sx});
    }
    SUBCASE("H lowers to the RZ/SX pattern and stays equivalent") {
        const auto h = Instruction::gate(GateKind::H, 0);
        const auto out = decompose_1q(h);
        CHECK(out.size() <= 5);
        for (const Instruction& inst : out) {
            CHECK((inst.kind == GateKind::RZ || inst.kind == GateKind::SX));
        }
        CHECK(oracle_equivalent(h, out, 1));
    }
    SUBCASE("RX/RY at random angles stay equivalent") {
        Rng rng(606);
        for (int trial = 0; trial < 20; ++trial) {
            const double theta = rng.uniform(0.0, 2.0 * kPi);
            const GateKind kind = trial % 2 == 0 ? GateKind::RX : GateKind::RY;
            const auto inst = Instruction::rotation(kind, 0, theta);
            const auto out = decompose_1q(inst);
            CHECK(out.size() <= 5);
            CHECK(oracle_equivalent(inst, out, 1));
        }
    }
    SUBCASE("RX(0) is oracle-equivalent to the identity") {
        const auto inst = Instruction::rotation(GateKind::RX, 0, 0.0);
        Circuit lowered(1);
        for (const Instruction& piece : decompose_1q(inst)) {
            lowered.append(piece);
        }
        CHECK(equivalent_up_to_global_phase(lowered, Circuit(1)));
    }
    SUBCASE("the canonical pattern alternates RZ and SX") {
        // RZ-SX-RZ-SX-RZ with zero-angle RZ omitted: no two adjacent RZ.
        const auto out =
            decompose_1q(Instruction::rotation(GateKind::RX, 0, 0.9));
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            CHECK_FALSE((out[i].kind == GateKind::RZ &&
                         out[i + 1].kind == GateKind::RZ));
        }
    }
    SUBCASE("rejects two-qubit input") {
        CHECK_THROWS_AS(decompose_1q(Instruction::gate2(GateKind::CX, 0, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("decompose_2q") {
    SUBCASE("CX passes through") {
        const auto cx = Instruction::gate2(GateKind::CX, 0, 1);
        CHECK(decompose_2q(cx) == std::vector<Instruction>{cx});
    }
    SUBCASE("SWAP becomes three CX and stays equivalent") {
        const auto swap = Instruction::gate2(GateKind::SWAP, 0, 1);
        const auto out = decompose_2q(swap);
        CHECK(out.size() == 3);
        CHECK(oracle_equivalent(swap, out, 2));
    }
    SUBCASE("controlled rotations contain exactly two CX") {
        Rng rng(607);
        for (GateKind kind : {GateKind::CRX, GateKind::CRY, GateKind::CRZ}) {
            const double theta = rng.uniform(0.0, 2.0 * kPi);
            const auto inst =
                Instruction::controlled_rotation(kind, 0, 1, theta);
            const auto out = decompose_2q(inst);
            std::size_t cx = 0;
            for (const Instruction& piece : out) {
                if (piece.kind == GateKind::CX) {
                    ++cx;
                }
            }
            CHECK(cx == 2);
            CHECK(oracle_equivalent(inst, out, 2));
        }
    }
    SUBCASE("CRY(1.1) matches the controlled-RY unitary") {
        const auto inst =
            Instruction::controlled_rotation(GateKind::CRY, 0, 1, 1.1);
        CHECK(oracle_equivalent(inst, decompose_2q(inst), 2));
    }
    SUBCASE("CRZ(0) is oracle-equivalent to the identity") {
        const auto inst =
            Instruction::controlled_rotation(GateKind::CRZ, 0, 1, 0.0);
        Circuit lowered(2);
        for (const Instruction& piece : decompose_2q(inst)) {
            lowered.append(piece);
        }
        CHECK(equivalent_up_to_global_phase(lowered, Circuit(2)));
    }
    SUBCASE("reversed operand order is honored") {
        const auto inst =
            Instruction::controlled_rotation(GateKind::CRX, 1, 0, 2.2);
        CHECK(oracle_equivalent(inst, decompose_2q(inst), 2));
    }
}

TEST_CASE("route") {
    SUBCASE("all-to-all needs no swaps and keeps the identity layout") {
        Circuit c(3);
        c.append(Instruction::gate2(GateKind::CX, 0, 2));
        const RouteResult routed = route(c, CouplingMap::all_to_all(3));
        CHECK(routed.swap_count == 0);
        CHECK(routed.final_layout == std::vector<int>{0, 1, 2});
    }
    SUBCASE("linear(3) routes CX q0 q2 through a swap") {
        Circuit c(3);
        c.append(Instruction::gate2(GateKind::CX, 0, 2));
        const CouplingMap map = CouplingMap::linear(3);
        const RouteResult routed = route(c, map);
        CHECK(routed.swap_count >= 1);
        for (const Instruction& inst : routed.circuit.instructions()) {
            if (inst.kind == GateKind::CX) {
                CHECK(map.has_edge(inst.qubits[0], inst.qubits[1]));
            }
        }
        EquivalenceOptions opts;
        opts.layout = routed.final_layout;
        CHECK(equivalent_up_to_global_phase(c, routed.circuit, opts));
    }
    SUBCASE("routing preserves semantics on random circuits") {
        Rng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            Circuit c(4);
            // Random CX-only circuits (route's precondition).
            const int gates = rng.range(1, 16);
            for (int g = 0; g < gates; ++g) {
                const int a = rng.range(0, 3);
                int b = rng.range(0, 2);
                if (b >= a) {
                    ++b;
                }
                c.append(Instruction::gate2(GateKind::CX, a, b));
            }
            const RouteResult routed = route(c, CouplingMap::linear(4));
            EquivalenceOptions opts;
            opts.layout = routed.final_layout;
            opts.seed = rng.next_u64();
            REQUIRE(equivalent_up_to_global_phase(c, routed.circuit, opts));
        }
    }
    SUBCASE("disconnected map names the unroutable pair") {
        Circuit c(3);
        c.append(Instruction::gate2(GateKind::CX, 0, 2));
        CouplingMap map;
        map.n_qubits = 3;
        map.edges = {{0, 1}};  // qubit 2 isolated
        CHECK_THROWS_WITH_AS(route(c, map),
                             doctest::Contains("unroutable"), UsageError);
    }
}

TEST_CASE("peephole") {
    SUBCASE("adjacent RZ merge mod 2pi") {
        Circuit c(1);
        c.append(Instruction::rotation(GateKind::RZ, 0, 1.0));
        c.append(Instruction::rotation(GateKind::RZ, 0, 2.0));
        const Circuit out = peephole(c);
        REQUIRE(out.size() == 1);
        CHECK(out.instructions()[0].params[0] == doctest::Approx(3.0));
    }
    SUBCASE("adjacent identical CX pairs cancel") {
        Circuit c(2);
        c.append(Instruction::gate2(GateKind::CX, 0, 1));
        c.append(Instruction::gate2(GateKind::CX, 0, 1));
        CHECK(peephole(c).empty());
    }
    SUBCASE("opposite-orientation CX pairs do not cancel") {
        Circuit c(2);
        c.append(Instruction::gate2(GateKind::CX, 0, 1));
        c.append(Instruction::gate2(GateKind::CX, 1, 0));
        CHECK(peephole(c).size() == 2);
    }
    SUBCASE("X X cancels") {
        Circuit c(1);
        c.append(Instruction::gate(GateKind::X, 0));
        c.append(Instruction::gate(GateKind::X, 0));
        CHECK(peephole(c).empty());
    }
    SUBCASE("zero-angle RZ is dropped") {
        Circuit c(1);
        c.append(Instruction::rotation(GateKind::RZ, 0, 0.0));
        c.append(Instruction::rotation(GateKind::RZ, 0, 2.0 * kPi));
        CHECK(peephole(c).empty());
    }
    SUBCASE("a barrier blocks the merge") {
        Circuit c(1);
        c.append(Instruction::rotation(GateKind::RZ, 0, 1.0));
        c.append(Instruction::barrier({0}));
        c.append(Instruction::rotation(GateKind::RZ, 0, 2.0));
        const Circuit out = peephole(c);
        REQUIRE(out.size() == 3);
        CHECK(out.instructions()[0].params[0] == doctest::Approx(1.0));
        CHECK(out.instructions()[1].kind == GateKind::Barrier);
        CHECK(out.instructions()[2].params[0] == doctest::Approx(2.0));
    }
    SUBCASE("merges that sum to zero remove both gates") {
        Circuit c(1);
        c.append(Instruction::rotation(GateKind::RZ, 0, 1.5));
        c.append(Instruction::rotation(GateKind::RZ, 0, 2.0 * kPi - 1.5));
        CHECK(peephole(c).empty());
    }
    SUBCASE("an intervening gate on the qubit blocks the merge") {
        Circuit c(2);
        c.append(Instruction::rotation(GateKind::RZ, 0, 1.0));
        c.append(Instruction::gate2(GateKind::CX, 0, 1));
        c.append(Instruction::rotation(GateKind::RZ, 0, 2.0));
        CHECK(peephole(c).size() == 3);
    }
    SUBCASE("peephole preserves semantics") {
        Rng rng(2024);
        for (int trial = 0; trial < 20; ++trial) {
            // Basis-alphabet circuits with barriers.
            Circuit c(3);
            const int gates = rng.range(5, 40);
            for (int g = 0; g < gates; ++g) {
                switch (rng.below(5)) {
                    case 0:
                        c.append(Instruction::gate(GateKind::X,
                                                   rng.range(0, 2)));
                        break;
                    case 1:
                        c.append(Instruction::gate(GateKind::SX,
                                                   rng.range(0, 2)));
                        break;
                    case 2:
                        c.append(Instruction::rotation(
                            GateKind::RZ, rng.range(0, 2),
                            rng.uniform(0.0, 2.0 * kPi)));
                        break;
                    case 3: {
                        const int a = rng.range(0, 2);
                        int b = rng.range(0, 1);
                        if (b >= a) {
                            ++b;
                        }
                        c.append(Instruction::gate2(GateKind::CX, a, b));
                        break;
                    }
                    default:
                        c.append(Instruction::barrier({rng.range(0, 2)}));
                        break;
                }
            }
            REQUIRE(equivalent_up_to_global_phase(c, peephole(c)));
        }
    }
}

TEST_CASE("transpile") {
    SUBCASE("basis-encoded bits pass through untouched") {
        const TranspileResult tr =
            transpile(basis_encode({1, 0, 1}), CouplingMap::all_to_all(3));
        REQUIRE(tr.circuit.size() == 2);
        CHECK(tr.circuit.instructions()[0] == Instruction::gate(GateKind::X, 0));
        CHECK(tr.circuit.instructions()[1] == Instruction::gate(GateKind::X, 2));
        CHECK(tr.stats.depth_after == 1);
        CHECK(tr.circuit.label == EncodingClass::Basis);
    }
    SUBCASE("RZ encodings pass through with exact angles") {
        const Circuit enc = angle_encode({0.4, 1.9, 2.7}, RotationAxis::Z);
        const TranspileResult tr = transpile(enc, CouplingMap::linear(3));
        REQUIRE(tr.circuit.size() == 3);
        for (const Instruction& inst : tr.circuit.instructions()) {
            CHECK(inst.kind == GateKind::RZ);
        }
        CHECK(tr.circuit.instructions()[0].params[0] == 0.4);
    }
    SUBCASE("RY encodings become RZ/SX blocks, oracle-equivalent") {
        const Circuit enc = angle_encode({0.8, 2.2, 4.4}, RotationAxis::Y);
        const TranspileResult tr = transpile(enc, CouplingMap::all_to_all(3));
        for (const Instruction& inst : tr.circuit.instructions()) {
            CHECK((inst.kind == GateKind::RZ || inst.kind == GateKind::SX));
        }
        EquivalenceOptions opts;
        opts.layout = tr.final_layout;
        CHECK(equivalent_up_to_global_phase(enc, tr.circuit, opts));
    }
    SUBCASE("output alphabet, coupling compliance, and barrier stripping") {
        Rng rng(37);
        for (int trial = 0; trial < 25; ++trial) {
            const int n = rng.range(2, 5);
            const Circuit c = random_circuit(n, rng.range(5, 40), rng);
            const CouplingMap map = CouplingMap::linear(n);
            const TranspileResult tr = transpile(c, map);
            for (const Instruction& inst : tr.circuit.instructions()) {
                CHECK(is_basis_gate(inst.kind));
                if (inst.kind == GateKind::CX) {
                    CHECK(map.has_edge(inst.qubits[0], inst.qubits[1]));
                }
            }
        }
    }
    SUBCASE("semantic preservation on random mixed circuits") {
        Rng rng(38);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = rng.range(2, 5);
            const Circuit c = random_circuit(n, rng.range(5, 30), rng);
            const CouplingMap map = rng.bit() ? CouplingMap::linear(n)
                                              : CouplingMap::all_to_all(n);
            const TranspileResult tr = transpile(c, map);
            EquivalenceOptions opts;
            opts.layout = tr.final_layout;
            opts.seed = rng.next_u64();
            REQUIRE(equivalent_up_to_global_phase(c, tr.circuit, opts));
        }
    }
    SUBCASE("deterministic: identical emission on repeat") {
        Rng rng(39);
        const Circuit c = random_circuit(4, 30, rng);
        const CouplingMap map = CouplingMap::linear(4);
        CHECK(emit_json(transpile(c, map).circuit) ==
              emit_json(transpile(c, map).circuit));
    }
    SUBCASE("stats are populated") {
        Circuit c(2);
        c.append(Instruction::gate(GateKind::H, 0));
        c.append(Instruction::gate2(GateKind::CX, 0, 1));
        const TranspileResult tr = transpile(c, CouplingMap::linear(2));
        CHECK(tr.stats.depth_before == 2);
        CHECK(tr.stats.depth_after == depth(tr.circuit));
        CHECK(tr.stats.gates_after == tr.circuit.size());
        CHECK(tr.stats.swap_count == 0);
    }
}
