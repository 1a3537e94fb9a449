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

#include "transpile.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "errors.hpp"

namespace qfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroAngleTol = 1e-12;

double mod_2pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r -= kTwoPi;
    }
    return r;
}

bool is_zero_mod_2pi(double angle) {
    const double r = mod_2pi(angle);
    return r < kZeroAngleTol || kTwoPi - r < kZeroAngleTol;
}

void push_rz(std::vector<Instruction>& out, int qubit, double angle) {
    const double r = mod_2pi(angle);
    if (!is_zero_mod_2pi(r)) {
        out.push_back(Instruction::rotation(GateKind::RZ, qubit, r));
    }
}

/// Emits the ZXZXZ expansion of RZ(a) RY(b) RZ(c) in circuit order.
void push_zxzxz(std::vector<Instruction>& out, int qubit, double a, double b,
                double c) {
    push_rz(out, qubit, c);
    out.push_back(Instruction::gate(GateKind::SX, qubit));
    push_rz(out, qubit, b - kPi);
    out.push_back(Instruction::gate(GateKind::SX, qubit));
    push_rz(out, qubit, a + kPi);
}

using Mat2 = std::array<std::complex<double>, 4>;

Mat2 mat2_mul(const Mat2& lhs, const Mat2& rhs) {
    return {lhs[0] * rhs[0] + lhs[1] * rhs[2],
            lhs[0] * rhs[1] + lhs[1] * rhs[3],
            lhs[2] * rhs[0] + lhs[3] * rhs[2],
            lhs[2] * rhs[1] + lhs[3] * rhs[3]};
}

Mat2 unitary_of(const Instruction& inst) {
    const std::complex<double> i{0.0, 1.0};
    switch (inst.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return {std::complex<double>{s}, std::complex<double>{s},
                    std::complex<double>{s}, std::complex<double>{-s}};
        }
        case GateKind::RX: {
            const double c = std::cos(inst.params[0] / 2.0);
            const double s = std::sin(inst.params[0] / 2.0);
            return {std::complex<double>{c}, -i * s, -i * s,
                    std::complex<double>{c}};
        }
        case GateKind::RY: {
            const double c = std::cos(inst.params[0] / 2.0);
            const double s = std::sin(inst.params[0] / 2.0);
            return {std::complex<double>{c}, std::complex<double>{-s},
                    std::complex<double>{s}, std::complex<double>{c}};
        }
        default:
            throw std::invalid_argument("unitary_of: unsupported gate");
    }
}

/// ZYZ Euler extraction: U ~ RZ(a) RY(b) RZ(c) up to global phase.
void zyz_angles(Mat2 u, double& a, double& b, double& c) {
    // Project to SU(2).
    const std::complex<double> det = u[0] * u[3] - u[1] * u[2];
    const std::complex<double> phase =
        std::exp(std::complex<double>{0.0, -0.5 * std::arg(det)}) /
        std::sqrt(std::abs(det));
    for (auto& entry : u) {
        entry *= phase;
    }
    const double m00 = std::abs(u[0]);
    const double m10 = std::abs(u[2]);
    b = 2.0 * std::atan2(m10, m00);
    if (m10 < 1e-12) {
        a = -2.0 * std::arg(u[0]);
        c = 0.0;
    } else if (m00 < 1e-12) {
        a = 2.0 * std::arg(u[2]);
        c = 0.0;
    } else {
        // arg(u00) = -(a+c)/2, arg(u10) = (a-c)/2.
        a = std::arg(u[2]) - std::arg(u[0]);
        c = -std::arg(u[2]) - std::arg(u[0]);
    }
}

/// Emits a maximal run of adjacent same-qubit {H, RX, RY} gates. A run of
/// two or more gates that includes an H fuses into one ZXZXZ block; all
/// other runs lower gate-by-gate, keeping single-rotation artifacts in their
/// canonical per-kind form.
void flush_run(std::vector<Instruction>& out, int qubit,
               std::vector<Instruction>& run) {
    if (run.empty()) {
        return;
    }
    bool has_h = false;
    for (const Instruction& inst : run) {
        has_h = has_h || inst.kind == GateKind::H;
    }
    if (run.size() >= 2 && has_h) {
        Mat2 u = unitary_of(run[0]);
        for (std::size_t i = 1; i < run.size(); ++i) {
            u = mat2_mul(unitary_of(run[i]), u);
        }
        double a = 0.0;
        double b = 0.0;
        double c = 0.0;
        zyz_angles(u, a, b, c);
        push_zxzxz(out, qubit, a, b, c);
    } else {
        for (const Instruction& inst : run) {
            for (Instruction& piece : decompose_1q(inst)) {
                out.push_back(std::move(piece));
            }
        }
    }
    run.clear();
}

}  // namespace

CouplingMap CouplingMap::linear(int n_qubits) {
    CouplingMap map;
    map.n_qubits = n_qubits;
    for (int i = 0; i + 1 < n_qubits; ++i) {
        map.edges.emplace_back(i, i + 1);
    }
    return map;
}

CouplingMap CouplingMap::all_to_all(int n_qubits) {
    CouplingMap map;
    map.n_qubits = n_qubits;
    for (int i = 0; i < n_qubits; ++i) {
        for (int j = i + 1; j < n_qubits; ++j) {
            map.edges.emplace_back(i, j);
        }
    }
    return map;
}

CouplingMap CouplingMap::preset(std::string_view name, int n_qubits) {
    if (name == "linear") {
        return linear(n_qubits);
    }
    if (name == "all_to_all") {
        return all_to_all(n_qubits);
    }
    throw UsageError("unknown coupling preset '" + std::string(name) +
                     "' (expected linear or all_to_all)");
}

bool CouplingMap::has_edge(int a, int b) const {
    for (const auto& [u, v] : edges) {
        if ((u == a && v == b) || (u == b && v == a)) {
            return true;
        }
    }
    return false;
}

void CouplingMap::validate() const {
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_qubits || v >= n_qubits || u == v) {
            throw std::invalid_argument("CouplingMap: bad edge");
        }
    }
}

std::vector<Instruction> decompose_1q(const Instruction& inst) {
    if (gate_arity(inst.kind) != 1) {
        throw std::invalid_argument("decompose_1q: not a 1-qubit gate");
    }
    const int q = inst.qubits[0];
    switch (inst.kind) {
        case GateKind::X:
        case GateKind::SX:
        case GateKind::RZ:
            return {inst};
        default:
            break;
    }

    // ZYZ Euler angles (a, b, c) with U ~ RZ(a) RY(b) RZ(c), then
    // RY(b) ~ RZ(pi) SX RZ(b - pi) SX, giving the ZXZXZ pattern
    // RZ(c), SX, RZ(b - pi), SX, RZ(a + pi) in circuit order.
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    switch (inst.kind) {
        case GateKind::H:
            a = 0.0;
            b = kPi / 2.0;
            c = kPi;
            break;
        case GateKind::RX:
            a = -kPi / 2.0;
            b = inst.params[0];
            c = kPi / 2.0;
            break;
        case GateKind::RY:
            a = 0.0;
            b = inst.params[0];
            c = 0.0;
            break;
        default:
            throw std::invalid_argument("decompose_1q: unsupported gate");
    }
    std::vector<Instruction> out;
    push_zxzxz(out, q, a, b, c);
    return out;
}

std::vector<Instruction> decompose_2q(const Instruction& inst) {
    if (gate_arity(inst.kind) != 2) {
        throw std::invalid_argument("decompose_2q: not a 2-qubit gate");
    }
    const int control = inst.qubits[0];
    const int target = inst.qubits[1];
    switch (inst.kind) {
        case GateKind::CX:
            return {inst};
        case GateKind::SWAP:
            return {Instruction::gate2(GateKind::CX, control, target),
                    Instruction::gate2(GateKind::CX, target, control),
                    Instruction::gate2(GateKind::CX, control, target)};
        case GateKind::CRZ: {
            const double theta = inst.params[0];
            return {Instruction::rotation(GateKind::RZ, target, theta / 2.0),
                    Instruction::gate2(GateKind::CX, control, target),
                    Instruction::rotation(GateKind::RZ, target, -theta / 2.0),
                    Instruction::gate2(GateKind::CX, control, target)};
        }
        case GateKind::CRY: {
            const double theta = inst.params[0];
            return {Instruction::rotation(GateKind::RY, target, theta / 2.0),
                    Instruction::gate2(GateKind::CX, control, target),
                    Instruction::rotation(GateKind::RY, target, -theta / 2.0),
                    Instruction::gate2(GateKind::CX, control, target)};
        }
        case GateKind::CRX: {
            // Conjugate the CRZ form by RY(+-pi/2) on the target to move the
            // rotation axis from Z to X.
            const double theta = inst.params[0];
            return {Instruction::rotation(GateKind::RY, target, -kPi / 2.0),
                    Instruction::rotation(GateKind::RZ, target, theta / 2.0),
                    Instruction::gate2(GateKind::CX, control, target),
                    Instruction::rotation(GateKind::RZ, target, -theta / 2.0),
                    Instruction::gate2(GateKind::CX, control, target),
                    Instruction::rotation(GateKind::RY, target, kPi / 2.0)};
        }
        default:
            throw std::invalid_argument("decompose_2q: unsupported gate");
    }
}

namespace {

/// BFS shortest path between physical wires; empty when unreachable.
std::vector<int> shortest_path(const std::vector<std::vector<int>>& adjacency,
                               int from, int to) {
    std::vector<int> parent(adjacency.size(), -1);
    std::deque<int> queue{from};
    parent[static_cast<std::size_t>(from)] = from;
    while (!queue.empty()) {
        const int node = queue.front();
        queue.pop_front();
        if (node == to) {
            break;
        }
        for (int next : adjacency[static_cast<std::size_t>(node)]) {
            if (parent[static_cast<std::size_t>(next)] == -1) {
                parent[static_cast<std::size_t>(next)] = node;
                queue.push_back(next);
            }
        }
    }
    if (parent[static_cast<std::size_t>(to)] == -1) {
        return {};
    }
    std::vector<int> path{to};
    while (path.back() != from) {
        path.push_back(parent[static_cast<std::size_t>(path.back())]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

RouteResult route(const Circuit& c, const CouplingMap& map) {
    if (map.n_qubits != c.n_qubits()) {
        throw std::invalid_argument("route: coupling map size mismatch");
    }
    map.validate();
    const int n = c.n_qubits();
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
    for (const auto& [u, v] : map.edges) {
        adjacency[static_cast<std::size_t>(u)].push_back(v);
        adjacency[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& neighbors : adjacency) {
        std::sort(neighbors.begin(), neighbors.end());
    }

    std::vector<int> logical_to_phys(static_cast<std::size_t>(n));
    std::iota(logical_to_phys.begin(), logical_to_phys.end(), 0);
    std::vector<int> phys_to_logical = logical_to_phys;

    RouteResult result{Circuit(n), {}, 0};
    Circuit& out = result.circuit;
    out.label = c.label;
    out.meta = c.meta;

    auto emit_swap = [&](int a, int b) {
        out.append(Instruction::gate2(GateKind::CX, a, b));
        out.append(Instruction::gate2(GateKind::CX, b, a));
        out.append(Instruction::gate2(GateKind::CX, a, b));
        const int la = phys_to_logical[static_cast<std::size_t>(a)];
        const int lb = phys_to_logical[static_cast<std::size_t>(b)];
        std::swap(phys_to_logical[static_cast<std::size_t>(a)],
                  phys_to_logical[static_cast<std::size_t>(b)]);
        logical_to_phys[static_cast<std::size_t>(la)] = b;
        logical_to_phys[static_cast<std::size_t>(lb)] = a;
        ++result.swap_count;
    };

    for (const Instruction& inst : c.instructions()) {
        if (inst.kind == GateKind::Barrier) {
            std::vector<int> mapped;
            mapped.reserve(inst.qubits.size());
            for (int q : inst.qubits) {
                mapped.push_back(logical_to_phys[static_cast<std::size_t>(q)]);
            }
            out.append(Instruction::barrier(std::move(mapped)));
            continue;
        }
        if (gate_arity(inst.kind) == 1) {
            Instruction mapped = inst;
            mapped.qubits[0] = logical_to_phys[static_cast<std::size_t>(inst.qubits[0])];
            out.append(std::move(mapped));
            continue;
        }
        if (inst.kind != GateKind::CX) {
            throw std::invalid_argument(
                "route: two-qubit gates must be lowered to CX first (got " +
                std::string(gate_name(inst.kind)) + ")");
        }
        int pc = logical_to_phys[static_cast<std::size_t>(inst.qubits[0])];
        int pt = logical_to_phys[static_cast<std::size_t>(inst.qubits[1])];
        if (!map.has_edge(pc, pt)) {
            const std::vector<int> path = shortest_path(adjacency, pc, pt);
            if (path.empty()) {
                throw UsageError(
                    "route: qubit pair (" + std::to_string(inst.qubits[0]) +
                    ", " + std::to_string(inst.qubits[1]) +
                    ") is unroutable on the coupling map (physical " +
                    std::to_string(pc) + " / " + std::to_string(pt) + ")");
            }
            // Walk the control toward the target.
            for (std::size_t i = 0; i + 2 < path.size(); ++i) {
                emit_swap(path[i], path[i + 1]);
            }
            pc = path[path.size() - 2];
            pt = path.back();
        }
        out.append(Instruction::gate2(GateKind::CX, pc, pt));
    }
    result.final_layout = logical_to_phys;
    return result;
}

Circuit peephole(const Circuit& c) {
    std::vector<Instruction> work(c.instructions().begin(),
                                  c.instructions().end());
    const std::size_t n = static_cast<std::size_t>(c.n_qubits());

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<bool> dead(work.size(), false);
        // last_op[q]: index of the latest live instruction touching qubit q;
        // -1 when none, -2 when the latest toucher is a barrier (fence).
        std::vector<long> last_op(n, -1);

        for (std::size_t i = 0; i < work.size(); ++i) {
            Instruction& inst = work[i];
            if (inst.kind == GateKind::Barrier) {
                for (int q : inst.qubits) {
                    last_op[static_cast<std::size_t>(q)] = -2;
                }
                continue;
            }
            if (inst.kind == GateKind::RZ) {
                const auto q = static_cast<std::size_t>(inst.qubits[0]);
                const long prev = last_op[q];
                if (prev >= 0 && work[static_cast<std::size_t>(prev)].kind == GateKind::RZ) {
                    auto& prev_inst = work[static_cast<std::size_t>(prev)];
                    const double merged =
                        mod_2pi(prev_inst.params[0] + inst.params[0]);
                    dead[i] = true;
                    changed = true;
                    if (is_zero_mod_2pi(merged)) {
                        dead[static_cast<std::size_t>(prev)] = true;
                        last_op[q] = -1;
                    } else {
                        prev_inst.params[0] = merged;
                    }
                    continue;
                }
                if (is_zero_mod_2pi(inst.params[0])) {
                    dead[i] = true;
                    changed = true;
                    continue;
                }
                last_op[q] = static_cast<long>(i);
                continue;
            }
            if (inst.kind == GateKind::X) {
                const auto q = static_cast<std::size_t>(inst.qubits[0]);
                const long prev = last_op[q];
                if (prev >= 0 && work[static_cast<std::size_t>(prev)].kind == GateKind::X) {
                    dead[static_cast<std::size_t>(prev)] = true;
                    dead[i] = true;
                    last_op[q] = -1;
                    changed = true;
                    continue;
                }
                last_op[q] = static_cast<long>(i);
                continue;
            }
            if (inst.kind == GateKind::CX) {
                const auto qc = static_cast<std::size_t>(inst.qubits[0]);
                const auto qt = static_cast<std::size_t>(inst.qubits[1]);
                const long prev = last_op[qc];
                if (prev >= 0 && last_op[qt] == prev) {
                    const auto& prev_inst = work[static_cast<std::size_t>(prev)];
                    if (prev_inst.kind == GateKind::CX &&
                        prev_inst.qubits == inst.qubits) {
                        dead[static_cast<std::size_t>(prev)] = true;
                        dead[i] = true;
                        last_op[qc] = -1;
                        last_op[qt] = -1;
                        changed = true;
                        continue;
                    }
                }
                last_op[qc] = static_cast<long>(i);
                last_op[qt] = static_cast<long>(i);
                continue;
            }
            // Any other gate just blocks rewrites across it.
            for (int q : inst.qubits) {
                last_op[static_cast<std::size_t>(q)] = static_cast<long>(i);
            }
        }

        if (changed) {
            std::vector<Instruction> next;
            next.reserve(work.size());
            for (std::size_t i = 0; i < work.size(); ++i) {
                if (!dead[i]) {
                    next.push_back(std::move(work[i]));
                }
            }
            work = std::move(next);
        }
    }

    Circuit out(c.n_qubits());
    out.label = c.label;
    out.meta = c.meta;
    for (Instruction& inst : work) {
        out.append(std::move(inst));
    }
    return out;
}

TranspileResult transpile(const Circuit& c, const CouplingMap& map) {
    // 1. Lower two-qubit gates to CX + single-qubit rotations.
    Circuit lowered2q(c.n_qubits());
    lowered2q.label = c.label;
    lowered2q.meta = c.meta;
    for (const Instruction& inst : c.instructions()) {
        if (is_two_qubit_gate(inst.kind)) {
            for (Instruction& piece : decompose_2q(inst)) {
                lowered2q.append(std::move(piece));
            }
        } else {
            lowered2q.append(inst);
        }
    }

    // 2. Satisfy the coupling constraint.
    RouteResult routed = route(lowered2q, map);

    // 3. Lower single-qubit gates to {X, SX, RZ}, fusing maximal adjacent
    // same-qubit {H, RX, RY} runs into one ZXZXZ block each.
    Circuit lowered1q(c.n_qubits());
    lowered1q.label = routed.circuit.label;
    lowered1q.meta = routed.circuit.meta;
    {
        std::vector<std::vector<Instruction>> runs(
            static_cast<std::size_t>(c.n_qubits()));
        std::vector<Instruction> buffer;
        auto flush_qubit = [&](int q) {
            flush_run(buffer, q, runs[static_cast<std::size_t>(q)]);
            for (Instruction& piece : buffer) {
                lowered1q.append(std::move(piece));
            }
            buffer.clear();
        };
        for (const Instruction& inst : routed.circuit.instructions()) {
            const bool fusable = inst.kind == GateKind::H ||
                                 inst.kind == GateKind::RX ||
                                 inst.kind == GateKind::RY;
            if (fusable) {
                runs[static_cast<std::size_t>(inst.qubits[0])].push_back(inst);
                continue;
            }
            for (int q : inst.qubits) {
                flush_qubit(q);
            }
            lowered1q.append(inst);
        }
        for (int q = 0; q < c.n_qubits(); ++q) {
            flush_qubit(q);
        }
    }

    // 4. Peephole optimization, fenced by barriers.
    Circuit optimized = peephole(lowered1q);

    // 5. Strip barriers: the executed artifact carries none.
    Circuit out(c.n_qubits());
    out.label = optimized.label;
    out.meta = optimized.meta;
    for (const Instruction& inst : optimized.instructions()) {
        if (inst.kind != GateKind::Barrier) {
            out.append(inst);
        }
    }

    TranspileResult result;
    result.stats.depth_before = depth(c);
    result.stats.depth_after = depth(out);
    result.stats.swap_count = routed.swap_count;
    result.stats.gates_after = out.size();
    result.final_layout = std::move(routed.final_layout);
    result.circuit = std::move(out);
    return result;
}

}  // namespace qfp
