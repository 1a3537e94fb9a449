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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "defense.hpp"
#include "encoding.hpp"
#include "pqc.hpp"
#include "statevector.hpp"
#include "transpile.hpp"

using namespace qfp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gen_key") {
    SUBCASE("angles lie in [-pi, pi], deterministic per seed") {
        const ObfuscationKey a = gen_key(6, 42);
        const ObfuscationKey b = gen_key(6, 42);
        CHECK(a.thetas == b.thetas);
        for (double theta : a.thetas) {
            CHECK(theta >= -kPi);
            CHECK(theta <= kPi);
        }
        const ObfuscationKey c = gen_key(6, 43);
        CHECK(a.thetas != c.thetas);
    }
    SUBCASE("empirical mean of theta is near zero") {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const ObfuscationKey key = gen_key(100, seed);
            for (double theta : key.thetas) {
                sum += theta;
                ++count;
            }
        }
        CHECK(std::abs(sum / static_cast<double>(count)) < 0.02);
    }
}

TEST_CASE("obf_layer structure") {
    SUBCASE("n=1: H then RX, no CX") {
        const ObfuscationKey key = gen_key(1, 5);
        const Circuit c = obf_layer(key);
        REQUIRE(c.size() == 2);
        CHECK(c.instructions()[0] == Instruction::gate(GateKind::H, 0));
        CHECK(c.instructions()[1].kind == GateKind::RX);
    }
    SUBCASE("n=4: 4 H + 4 RX + CX(0,1) + CX(2,3)") {
        const ObfuscationKey key = gen_key(4, 5);
        const Circuit c = obf_layer(key);
        REQUIRE(c.size() == 10);
        for (int q = 0; q < 4; ++q) {
            CHECK(c.instructions()[static_cast<std::size_t>(q)] ==
                  Instruction::gate(GateKind::H, q));
            CHECK(c.instructions()[static_cast<std::size_t>(4 + q)].kind ==
                  GateKind::RX);
        }
        CHECK(c.instructions()[8] == Instruction::gate2(GateKind::CX, 0, 1));
        CHECK(c.instructions()[9] == Instruction::gate2(GateKind::CX, 2, 3));
    }
    SUBCASE("n=5: exactly two CX (odd last qubit unpaired)") {
        const Circuit c = obf_layer(gen_key(5, 5));
        CHECK(gate_counts(c)[GateKind::CX] == 2);
    }
}

TEST_CASE("inv_layer is the exact gate-wise inverse") {
    SUBCASE("n=4 gate order: CX(2,3); CX(0,1); RX(-theta) x4; H x4") {
        const ObfuscationKey key = gen_key(4, 17);
        const Circuit c = inv_layer(key);
        REQUIRE(c.size() == 10);
        CHECK(c.instructions()[0] == Instruction::gate2(GateKind::CX, 2, 3));
        CHECK(c.instructions()[1] == Instruction::gate2(GateKind::CX, 0, 1));
        for (int q = 0; q < 4; ++q) {
            const Instruction& rx = c.instructions()[static_cast<std::size_t>(2 + q)];
            CHECK(rx.kind == GateKind::RX);
            CHECK(rx.params[0] ==
                  -key.thetas[static_cast<std::size_t>(rx.qubits[0])]);
            CHECK(c.instructions()[static_cast<std::size_t>(6 + q)].kind ==
                  GateKind::H);
        }
    }
    SUBCASE("obf || inv restores random states") {
        Rng rng(2000);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = rng.range(1, 8);
            const ObfuscationKey key = gen_key(n, rng.next_u64());
            Circuit round_trip = obf_layer(key);
            round_trip.extend(inv_layer(key));
            const StateVector input = random_state(n, rng);
            CHECK(fidelity(input, run(round_trip, input)) >= 1.0 - 1e-9);
        }
    }
    SUBCASE("all-zero key reduces to mirrored CX and H layers") {
        ObfuscationKey key = gen_key(4, 3);
        std::fill(key.thetas.begin(), key.thetas.end(), 0.0);
        Circuit round_trip = obf_layer(key);
        round_trip.extend(inv_layer(key));
        CHECK(equivalent_up_to_global_phase(round_trip, Circuit(4)));
    }
    SUBCASE("a wrong inversion key is caught by the fidelity check") {
        // Mutation check: inverting with a different key must not restore
        // the state.
        const ObfuscationKey key = gen_key(3, 10);
        const ObfuscationKey wrong = gen_key(3, 11);
        Circuit broken = obf_layer(key);
        broken.extend(inv_layer(wrong));
        Rng rng(12);
        const StateVector input = random_state(3, rng);
        CHECK(fidelity(input, run(broken, input)) < 1.0 - 1e-9);
    }
}

TEST_CASE("defend") {
    const Circuit enc = sample_encoding(EncodingClass::AngleRY, 4, 31);
    Rng pqc_rng(77);
    const PQCConfig pqc_cfg = sample_pqc_config(4, pqc_rng, 2, 2);
    const Circuit pqc = build_pqc(pqc_cfg, 4);
    const ObfuscationKey key = gen_key(4, 99);
    const Circuit defended = defend(enc, pqc, key);

    SUBCASE("three barriers in the defended IR; label and meta set") {
        CHECK(gate_counts(defended)[GateKind::Barrier] == 3);
        CHECK(defended.label == EncodingClass::AngleRY);
        CHECK(defended.meta.at("defended") == "1");
        CHECK(defended.meta.at("key_seed") == "99");
    }
    SUBCASE("semantics match the undefended circuit through transpilation") {
        const Circuit baseline = augment(enc, pqc);
        for (const auto& map :
             {CouplingMap::linear(4), CouplingMap::all_to_all(4)}) {
            const TranspileResult tr = transpile(defended, map);
            EquivalenceOptions opts;
            opts.layout = tr.final_layout;
            CHECK(equivalent_up_to_global_phase(baseline, tr.circuit, opts));
            // The adversary's view carries no barriers.
            CHECK(gate_counts(tr.circuit)[GateKind::Barrier] == 0);
        }
    }
    SUBCASE("transpiled defended depth is not below the undefended depth") {
        const Circuit baseline = augment(enc, pqc);
        const CouplingMap map = CouplingMap::linear(4);
        CHECK(transpile(defended, map).stats.depth_after >=
              transpile(baseline, map).stats.depth_after);
    }
    SUBCASE("the obfuscation survives transpilation behind the barriers") {
        // Without barriers the peephole would collapse obf || inv to nothing;
        // the defended artifact must stay strictly larger.
        const Circuit baseline = augment(enc, pqc);
        const CouplingMap map = CouplingMap::all_to_all(4);
        CHECK(transpile(defended, map).circuit.size() >
              transpile(baseline, map).circuit.size());
    }
    SUBCASE("distinct keys give gate-parameter-wise distinct circuits") {
        const Circuit other = defend(enc, pqc, gen_key(4, 100));
        bool differs = false;
        for (std::size_t i = 0; i < defended.size(); ++i) {
            if (!(defended.instructions()[i] == other.instructions()[i])) {
                differs = true;
                break;
            }
        }
        CHECK(differs);
    }
    SUBCASE("qubit mismatch throws") {
        CHECK_THROWS_AS(defend(enc, pqc, gen_key(3, 1)), std::invalid_argument);
    }
}
