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

#include "fingerprint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qfp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kAngleBins = 16;

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

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return sum / static_cast<double>(xs.size());
}

double std_of(const std::vector<double>& xs) {
    if (xs.empty()) {
        return 0.0;
    }
    const double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) {
        acc += (x - m) * (x - m);
    }
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

/// Shannon entropy of a 16-bin histogram over [0, 2pi), normalized by ln 16.
double binned_angle_entropy(const std::vector<double>& angles_mod) {
    if (angles_mod.empty()) {
        return 0.0;
    }
    std::array<std::size_t, kAngleBins> bins{};
    for (double a : angles_mod) {
        auto bin = static_cast<int>(a / (kTwoPi / kAngleBins));
        bin = std::clamp(bin, 0, kAngleBins - 1);
        ++bins[static_cast<std::size_t>(bin)];
    }
    const double total = static_cast<double>(angles_mod.size());
    double h = 0.0;
    for (std::size_t count : bins) {
        if (count > 0) {
            const double p = static_cast<double>(count) / total;
            h -= p * std::log(p);
        }
    }
    return h / std::log(static_cast<double>(kAngleBins));
}

double pearson_lag1(const std::vector<double>& xs) {
    if (xs.size() < 3) {
        return 0.0;
    }
    const std::size_t m = xs.size() - 1;
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_a += xs[i];
        mean_b += xs[i + 1];
    }
    mean_a /= static_cast<double>(m);
    mean_b /= static_cast<double>(m);
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double da = xs[i] - mean_a;
        const double db = xs[i + 1] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a <= 0.0 || var_b <= 0.0) {
        return 0.0;
    }
    return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

}  // namespace

std::vector<std::string> feature_names(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("feature_names: n_qubits must be >= 1");
    }
    std::vector<std::string> names = {
        "depth",
        "total_gates",
        "ratio_x",
        "ratio_sx",
        "ratio_rz",
        "ratio_cx",
        "frac_qubits_first_gate_x",
        "frac_qubits_binary_prefix",
        "rz_sx_bigram_rate",
        "sx_rz_sx_trigram_rate",
        "rz_angle_mean",
        "rz_angle_std",
        "rz_angle_entropy",
        "frac_rz_clifford",
        "rz_distinct_ratio",
        "rot_lag1_autocorr",
        "rot_mod_mean",
        "rot_mod_std",
        "rot_mod_entropy",
        "cx_per_qubit",
        "cx_pair_entropy",
        "distinct_cx_pair_frac",
        "max_qubit_cx_share",
        "first_cx_layer_frac",
        "frac_gates_before_first_cx",
        "mean_gates_per_qubit_norm",
        "var_gates_per_qubit_norm",
    };
    for (int q = 0; q < n_qubits; ++q) {
        names.push_back("q" + std::to_string(q) + "_rot_norm");
        names.push_back("q" + std::to_string(q) + "_xsx_norm");
    }
    return names;
}

FeatureVector extract(const Circuit& c) {
    for (const Instruction& inst : c.instructions()) {
        if (!is_basis_gate(inst.kind)) {
            throw std::invalid_argument(
                "extract: non-basis gate " + std::string(gate_name(inst.kind)) +
                " present; extract applies to transpiled circuits only");
        }
    }

    const auto n = static_cast<std::size_t>(c.n_qubits());
    const auto& ins = c.instructions();
    const double total = static_cast<double>(ins.size());
    const double total_guard = std::max(1.0, total);

    std::size_t x_count = 0;
    std::size_t sx_count = 0;
    std::size_t rz_count = 0;
    std::size_t cx_count = 0;

    std::vector<std::size_t> qubit_rz(n, 0);
    std::vector<std::size_t> qubit_xsx(n, 0);
    std::vector<std::size_t> qubit_touch(n, 0);
    std::vector<std::size_t> qubit_cx(n, 0);
    std::vector<GateKind> first_gate(n, GateKind::Barrier);
    std::vector<bool> has_gate(n, false);
    std::vector<bool> saw_cx(n, false);
    std::vector<bool> prefix_all_x(n, true);
    std::vector<std::size_t> prefix_len(n, 0);
    // Per-qubit previous and previous-previous gate kind, for n-gram rates.
    std::vector<GateKind> prev1(n, GateKind::Barrier);
    std::vector<GateKind> prev2(n, GateKind::Barrier);

    std::vector<double> rz_angles_raw;
    std::vector<double> rz_angles_mod;
    std::set<long long> rz_distinct;
    std::size_t rz_clifford = 0;
    std::size_t rz_sx_bigrams = 0;
    std::size_t sx_rz_sx_trigrams = 0;

    std::map<std::pair<int, int>, std::size_t> cx_pairs;
    long first_cx_index = -1;

    std::size_t index = 0;
    for (const Instruction& inst : ins) {
        for (int q : inst.qubits) {
            ++qubit_touch[static_cast<std::size_t>(q)];
            if (!has_gate[static_cast<std::size_t>(q)]) {
                has_gate[static_cast<std::size_t>(q)] = true;
                first_gate[static_cast<std::size_t>(q)] = inst.kind;
            }
        }
        switch (inst.kind) {
            case GateKind::X: {
                ++x_count;
                const auto q = static_cast<std::size_t>(inst.qubits[0]);
                ++qubit_xsx[q];
                if (!saw_cx[q]) {
                    ++prefix_len[q];
                }
                break;
            }
            case GateKind::SX: {
                ++sx_count;
                const auto q = static_cast<std::size_t>(inst.qubits[0]);
                ++qubit_xsx[q];
                if (!saw_cx[q]) {
                    prefix_all_x[q] = false;
                    ++prefix_len[q];
                }
                if (prev1[q] == GateKind::RZ) {
                    ++rz_sx_bigrams;
                }
                if (prev2[q] == GateKind::SX && prev1[q] == GateKind::RZ) {
                    ++sx_rz_sx_trigrams;
                }
                break;
            }
            case GateKind::RZ: {
                ++rz_count;
                const auto q = static_cast<std::size_t>(inst.qubits[0]);
                ++qubit_rz[q];
                if (!saw_cx[q]) {
                    prefix_all_x[q] = false;
                    ++prefix_len[q];
                }
                const double raw = inst.params[0];
                const double modded = mod_2pi(raw);
                rz_angles_raw.push_back(raw);
                rz_angles_mod.push_back(modded);
                rz_distinct.insert(std::llround(raw * 1e6));
                const double frac = std::fmod(modded, kHalfPi);
                if (std::min(frac, kHalfPi - frac) < 1e-6) {
                    ++rz_clifford;
                }
                break;
            }
            case GateKind::CX: {
                ++cx_count;
                const auto qc = static_cast<std::size_t>(inst.qubits[0]);
                const auto qt = static_cast<std::size_t>(inst.qubits[1]);
                ++qubit_cx[qc];
                ++qubit_cx[qt];
                saw_cx[qc] = true;
                saw_cx[qt] = true;
                const auto key = std::minmax(inst.qubits[0], inst.qubits[1]);
                ++cx_pairs[{key.first, key.second}];
                if (first_cx_index < 0) {
                    first_cx_index = static_cast<long>(index);
                }
                break;
            }
            default:
                break;
        }
        for (int q : inst.qubits) {
            prev2[static_cast<std::size_t>(q)] = prev1[static_cast<std::size_t>(q)];
            prev1[static_cast<std::size_t>(q)] = inst.kind;
        }
        ++index;
    }

    const int circuit_depth = depth(c);

    std::size_t first_x = 0;
    std::size_t binary_prefix = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (has_gate[q] && first_gate[q] == GateKind::X) {
            ++first_x;
        }
        if (prefix_len[q] > 0 && prefix_all_x[q]) {
            ++binary_prefix;
        }
    }

    // CX pair distribution entropy, normalized by ln of the number of
    // possible unordered pairs.
    double pair_entropy = 0.0;
    const double n_pairs_possible =
        static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    if (cx_count > 0 && n_pairs_possible >= 2.0) {
        for (const auto& [pair, count] : cx_pairs) {
            const double p = static_cast<double>(count) / static_cast<double>(cx_count);
            pair_entropy -= p * std::log(p);
        }
        pair_entropy /= std::log(n_pairs_possible);
    }

    double max_cx_share = 0.0;
    if (cx_count > 0) {
        for (std::size_t q = 0; q < n; ++q) {
            max_cx_share = std::max(
                max_cx_share, static_cast<double>(qubit_cx[q]) /
                                  (2.0 * static_cast<double>(cx_count)));
        }
    }

    double first_cx_layer_frac = 1.0;
    double frac_before_first_cx = 1.0;
    if (first_cx_index >= 0 && circuit_depth > 0) {
        const std::vector<int> layers = asap_layers(c);
        first_cx_layer_frac =
            static_cast<double>(layers[static_cast<std::size_t>(first_cx_index)]) /
            static_cast<double>(circuit_depth);
        frac_before_first_cx =
            static_cast<double>(first_cx_index) / total_guard;
    }

    double touch_mean = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
        touch_mean += static_cast<double>(qubit_touch[q]);
    }
    touch_mean /= static_cast<double>(n);
    double touch_var = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
        const double d = static_cast<double>(qubit_touch[q]) - touch_mean;
        touch_var += d * d;
    }
    touch_var /= static_cast<double>(n);

    FeatureVector fv;
    fv.names = feature_names(c.n_qubits());
    fv.values.reserve(fv.names.size());
    auto push = [&fv](double v) { fv.values.push_back(v); };

    push(static_cast<double>(circuit_depth));
    push(total);
    push(static_cast<double>(x_count) / total_guard);
    push(static_cast<double>(sx_count) / total_guard);
    push(static_cast<double>(rz_count) / total_guard);
    push(static_cast<double>(cx_count) / total_guard);
    push(static_cast<double>(first_x) / static_cast<double>(n));
    push(static_cast<double>(binary_prefix) / static_cast<double>(n));
    push(static_cast<double>(rz_sx_bigrams) /
         std::max(1.0, static_cast<double>(rz_count)));
    push(static_cast<double>(sx_rz_sx_trigrams) /
         std::max(1.0, static_cast<double>(sx_count)));
    push(mean_of(rz_angles_mod));
    push(std_of(rz_angles_mod));
    push(binned_angle_entropy(rz_angles_mod));
    push(static_cast<double>(rz_clifford) /
         std::max(1.0, static_cast<double>(rz_count)));
    push(static_cast<double>(rz_distinct.size()) /
         std::max(1.0, static_cast<double>(rz_count)));
    push(pearson_lag1(rz_angles_raw));
    push(mean_of(rz_angles_mod));
    push(std_of(rz_angles_mod));
    push(binned_angle_entropy(rz_angles_mod));
    push(static_cast<double>(cx_count) / static_cast<double>(n));
    push(pair_entropy);
    push(n_pairs_possible > 0.0
             ? static_cast<double>(cx_pairs.size()) / n_pairs_possible
             : 0.0);
    push(max_cx_share);
    push(first_cx_layer_frac);
    push(frac_before_first_cx);
    push(total > 0.0 ? touch_mean / total : 0.0);
    push(total > 0.0 ? touch_var / (total * total) : 0.0);

    for (std::size_t q = 0; q < n; ++q) {
        push(static_cast<double>(qubit_rz[q]) / total_guard);
        push(static_cast<double>(qubit_xsx[q]) / total_guard);
    }
    return fv;
}

}  // namespace qfp
