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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "encoding.hpp"
#include "fingerprint.hpp"
#include "pqc.hpp"
#include "transpile.hpp"
#include "verify.hpp"

using namespace qfp;

namespace {

std::size_t name_index(const FeatureVector& fv, const std::string& name) {
    const auto it = std::find(fv.names.begin(), fv.names.end(), name);
    REQUIRE(it != fv.names.end());
    return static_cast<std::size_t>(it - fv.names.begin());
}

double feature(const FeatureVector& fv, const std::string& name) {
    return fv.values[name_index(fv, name)];
}

}  // namespace

TEST_CASE("feature_names") {
    SUBCASE("length follows 27 + 2n") {
        CHECK(feature_names(1).size() == 29);
        CHECK(feature_names(3).size() == 33);
        CHECK(feature_names(14).size() == 55);
        CHECK(feature_names(100).size() == 227);
    }
    SUBCASE("first name is depth; per-qubit names trail") {
        const auto names = feature_names(2);
        CHECK(names.front() == "depth");
        CHECK(names[27] == "q0_rot_norm");
        CHECK(names[28] == "q0_xsx_norm");
        CHECK(names[29] == "q1_rot_norm");
        CHECK(names[30] == "q1_xsx_norm");
    }
    SUBCASE("names are unique") {
        const auto names = feature_names(10);
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("extract: ratio features from direct counting") {
    Circuit c(2);
    c.append(Instruction::gate(GateKind::X, 0));
    c.append(Instruction::gate(GateKind::SX, 1));
    c.append(Instruction::gate2(GateKind::CX, 0, 1));
    const FeatureVector fv = extract(c);
    CHECK(fv.values.size() == 31);
    CHECK(feature(fv, "ratio_x") == doctest::Approx(1.0 / 3.0));
    CHECK(feature(fv, "ratio_sx") == doctest::Approx(1.0 / 3.0));
    CHECK(feature(fv, "ratio_cx") == doctest::Approx(1.0 / 3.0));
    CHECK(feature(fv, "ratio_rz") == 0.0);
    CHECK(feature(fv, "total_gates") == 3.0);
}

TEST_CASE("extract: empty-circuit defaults") {
    const FeatureVector fv = extract(Circuit(3));
    CHECK(fv.values.size() == 33);
    CHECK(feature(fv, "depth") == 0.0);
    CHECK(feature(fv, "ratio_x") == 0.0);
    CHECK(feature(fv, "rz_angle_entropy") == 0.0);
    CHECK(feature(fv, "rot_mod_entropy") == 0.0);
    CHECK(feature(fv, "cx_pair_entropy") == 0.0);
    CHECK(feature(fv, "first_cx_layer_frac") == 1.0);
    CHECK(feature(fv, "frac_gates_before_first_cx") == 1.0);
    CHECK(feature(fv, "frac_qubits_binary_prefix") == 0.0);
    for (double v : fv.values) {
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("extract rejects non-basis gates") {
    Circuit c(1);
    c.append(Instruction::gate(GateKind::H, 0));
    CHECK_THROWS_AS(extract(c), std::invalid_argument);

    Circuit barrier_only(2);
    barrier_only.append(Instruction::barrier({0, 1}));
    CHECK_THROWS_AS(extract(barrier_only), std::invalid_argument);
}

TEST_CASE("extract: length law across qubit counts") {
    for (int n : {1, 3, 14, 100}) {
        const FeatureVector fv = extract(Circuit(n));
        CHECK(static_cast<int>(fv.values.size()) == 27 + 2 * n);
        CHECK(fv.names.size() == fv.values.size());
        CHECK(fv.registry_version == kFeatureRegistryVersion);
    }
}

TEST_CASE("extract: distinct angles raise rz_distinct_ratio") {
    PQCConfig cfg;
    cfg.layers = 2;
    cfg.start_gate = GateKind::SX;
    cfg.rotation_pool = {GateKind::RY};
    cfg.entanglement = Entanglement::Linear;
    cfg.seed = 11;
    const Circuit pqc = build_pqc(cfg, 3);
    const CouplingMap map = CouplingMap::all_to_all(3);

    const Circuit varied =
        augment(angle_encode({0.7, 1.3, 5.1}, RotationAxis::Z), pqc);
    const Circuit constant =
        augment(angle_encode({0.7, 0.7, 0.7}, RotationAxis::Z), pqc);

    const FeatureVector fv_varied = extract(transpile(varied, map).circuit);
    const FeatureVector fv_constant = extract(transpile(constant, map).circuit);
    CHECK(feature(fv_varied, "rz_distinct_ratio") >
          feature(fv_constant, "rz_distinct_ratio"));
}

TEST_CASE("extract: bounded features stay in range on random circuits") {
    Rng rng(64);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.range(2, 6);
        const Circuit c = random_circuit(n, rng.range(0, 60), rng);
        const FeatureVector fv =
            extract(transpile(c, CouplingMap::linear(n)).circuit);
        for (const char* name :
             {"ratio_x", "ratio_sx", "ratio_rz", "ratio_cx",
              "frac_qubits_first_gate_x", "frac_qubits_binary_prefix",
              "rz_angle_entropy", "rot_mod_entropy", "cx_pair_entropy",
              "frac_rz_clifford", "rz_distinct_ratio", "max_qubit_cx_share",
              "first_cx_layer_frac", "frac_gates_before_first_cx"}) {
            const double v = feature(fv, name);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0 + 1e-12);
        }
        const double autocorr = feature(fv, "rot_lag1_autocorr");
        CHECK(autocorr >= -1.0);
        CHECK(autocorr <= 1.0);
        for (double v : fv.values) {
            CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("extract: determinism") {
    Rng rng(65);
    const Circuit c = random_circuit(4, 50, rng);
    const Circuit t = transpile(c, CouplingMap::linear(4)).circuit;
    const FeatureVector a = extract(t);
    const FeatureVector b = extract(t);
    CHECK(a.values == b.values);
}

TEST_CASE("extract: adding a CX never decreases cx-count numerators") {
    Circuit c(3);
    c.append(Instruction::gate(GateKind::X, 0));
    c.append(Instruction::gate2(GateKind::CX, 0, 1));
    const FeatureVector before = extract(c);
    Circuit more = c;
    more.append(Instruction::gate2(GateKind::CX, 1, 2));
    const FeatureVector after = extract(more);
    CHECK(feature(after, "cx_per_qubit") >= feature(before, "cx_per_qubit"));
    CHECK(feature(after, "distinct_cx_pair_frac") >=
          feature(before, "distinct_cx_pair_frac"));
}

TEST_CASE("extract: targeted registry values on a hand-built circuit") {
    // q0: RZ(0.5) SX ; q1: X ; then CX(0,1)
    Circuit c(2);
    c.append(Instruction::rotation(GateKind::RZ, 0, 0.5));
    c.append(Instruction::gate(GateKind::SX, 0));
    c.append(Instruction::gate(GateKind::X, 1));
    c.append(Instruction::gate2(GateKind::CX, 0, 1));
    const FeatureVector fv = extract(c);

    CHECK(feature(fv, "rz_sx_bigram_rate") == doctest::Approx(1.0));
    CHECK(feature(fv, "frac_qubits_first_gate_x") == doctest::Approx(0.5));
    CHECK(feature(fv, "frac_qubits_binary_prefix") == doctest::Approx(0.5));
    CHECK(feature(fv, "rz_angle_mean") == doctest::Approx(0.5));
    CHECK(feature(fv, "frac_rz_clifford") == 0.0);
    CHECK(feature(fv, "rz_distinct_ratio") == doctest::Approx(1.0));
    // The CX lands at layer 3 of depth 3; 3 of 4 gates precede it.
    CHECK(feature(fv, "first_cx_layer_frac") == doctest::Approx(1.0));
    CHECK(feature(fv, "frac_gates_before_first_cx") == doctest::Approx(0.75));
    CHECK(feature(fv, "q0_rot_norm") == doctest::Approx(0.25));
    CHECK(feature(fv, "q0_xsx_norm") == doctest::Approx(0.25));
    CHECK(feature(fv, "q1_xsx_norm") == doctest::Approx(0.25));
}
