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

#include <cstdint>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "rng.hpp"

namespace qfp {

/// Random mixed-gate circuit (all kinds, including controlled rotations,
/// SWAPs and occasional barriers) for property testing.
Circuit random_circuit(int n_qubits, int n_gates, Rng& rng,
                       bool include_barriers = true);

struct SuiteResult {
    std::string name;
    int trials = 0;
    bool passed = true;
    std::string detail;  // counterexample seed / failure description
};

struct VerifyOptions {
    std::uint64_t seed = 20260809ULL;
    int transpile_trials = 200;
    int state_prep_trials = 100;
    int invertibility_trials = 100;
    int gradient_probes = 100;
};

/// Transpile semantic preservation: random circuits at n <= 6 transpiled on
/// linear and all-to-all maps stay fidelity >= 1 - 1e-9 modulo layout.
SuiteResult verify_transpile_equivalence(const VerifyOptions& opts);

/// Amplitude state preparation reaches fidelity >= 1 - 1e-9 against the
/// statevector oracle for Haar-random vectors, n in 2..6.
SuiteResult verify_state_prep(const VerifyOptions& opts);

/// obf_layer || inv_layer restores random states to fidelity >= 1 - 1e-9.
SuiteResult verify_obfuscation_invertibility(const VerifyOptions& opts);

/// backward() matches central finite differences (h = 1e-5) to relative
/// error < 1e-5 over random parameter probes.
SuiteResult verify_gradient_check(const VerifyOptions& opts);

std::vector<SuiteResult> run_all_suites(const VerifyOptions& opts);

}  // namespace qfp
