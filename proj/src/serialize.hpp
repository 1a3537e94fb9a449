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

#include <string>
#include <string_view>

#include "circuit.hpp"
#include "errors.hpp"

namespace qfp {

/// Circuit JSON schema:
///   {"n_qubits": int, "label": string|null, "meta": {string: string},
///    "instructions": [{"kind": string, "qubits": [int], "params": [float]}]}
/// Round-trips exactly, including parameter bits.
std::string emit_json(const Circuit& c);
Circuit parse_json(std::string_view text);

/// OpenQASM 2.0 subset: single register `q[n]`, gates x/sx/h/rx/ry/rz/cx/
/// crx/cry/crz/swap/barrier, numeric angle literals. Anything else is a
/// ParseError. Label and meta are not representable in QASM.
std::string emit_qasm(const Circuit& c);
Circuit parse_qasm(std::string_view text);

}  // namespace qfp
