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

#include "verify.hpp"

#include <cmath>
#include <numbers>

#include "defense.hpp"
#include "encoding.hpp"
#include "mlp.hpp"
#include "statevector.hpp"
#include "transpile.hpp"

namespace qfp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Circuit random_circuit(int n_qubits, int n_gates, Rng& rng,
                       bool include_barriers) {
    Circuit c(n_qubits);
    for (int g = 0; g < n_gates; ++g) {
        if (include_barriers && rng.below(12) == 0) {
            // Barrier over a random nonempty prefix-free qubit subset.
            std::vector<int> qubits;
            for (int q = 0; q < n_qubits; ++q) {
                if (rng.bit()) {
                    qubits.push_back(q);
                }
            }
            if (qubits.empty()) {
                qubits.push_back(rng.range(0, n_qubits - 1));
            }
            c.append(Instruction::barrier(std::move(qubits)));
            continue;
        }
        const auto kinds = all_gate_kinds();
        GateKind kind = kinds[rng.below(kNumGateKinds - 1)];  // skip Barrier slot
        if (n_qubits < 2 && is_two_qubit_gate(kind)) {
            kind = GateKind::RY;
        }
        if (gate_arity(kind) == 1) {
            const int q = rng.range(0, n_qubits - 1);
            if (gate_param_count(kind) == 1) {
                c.append(Instruction::rotation(kind, q, rng.uniform(0.0, kTwoPi)));
            } else {
                c.append(Instruction::gate(kind, q));
            }
        } else {
            const int a = rng.range(0, n_qubits - 1);
            int b = rng.range(0, n_qubits - 2);
            if (b >= a) {
                ++b;
            }
            if (gate_param_count(kind) == 1) {
                c.append(Instruction::controlled_rotation(
                    kind, a, b, rng.uniform(0.0, kTwoPi)));
            } else {
                c.append(Instruction::gate2(kind, a, b));
            }
        }
    }
    return c;
}

SuiteResult verify_transpile_equivalence(const VerifyOptions& opts) {
    SuiteResult result{"transpile-equivalence", opts.transpile_trials, true, ""};
    Rng rng(derive_seed(opts.seed, {tag(SeedTag::Verify), 1}));
    for (int t = 0; t < opts.transpile_trials; ++t) {
        const std::uint64_t trial_seed = rng.next_u64();
        Rng trial_rng(trial_seed);
        const int n = trial_rng.range(2, 6);
        const int gates = trial_rng.range(5, 40);
        const Circuit c = random_circuit(n, gates, trial_rng);
        const CouplingMap map = trial_rng.bit() ? CouplingMap::linear(n)
                                                : CouplingMap::all_to_all(n);
        const TranspileResult tr = transpile(c, map);
        EquivalenceOptions eq;
        eq.layout = tr.final_layout;
        eq.seed = trial_rng.next_u64();
        if (!equivalent_up_to_global_phase(c, tr.circuit, eq)) {
            result.passed = false;
            result.detail = "counterexample seed " + std::to_string(trial_seed);
            return result;
        }
    }
    return result;
}

SuiteResult verify_state_prep(const VerifyOptions& opts) {
    SuiteResult result{"state-prep-fidelity", opts.state_prep_trials, true, ""};
    Rng rng(derive_seed(opts.seed, {tag(SeedTag::Verify), 2}));
    for (int t = 0; t < opts.state_prep_trials; ++t) {
        const std::uint64_t trial_seed = rng.next_u64();
        const int n = 2 + t % 5;  // n in 2..6
        const AmplitudeVector target = haar_random_state(n, trial_seed);
        const Circuit prep = amplitude_encode(target);
        const StateVector got = run(prep);
        const StateVector want(n, target);
        if (fidelity(got, want) < 1.0 - 1e-9) {
            result.passed = false;
            result.detail = "counterexample seed " + std::to_string(trial_seed) +
                            " at n=" + std::to_string(n);
            return result;
        }
    }
    return result;
}

SuiteResult verify_obfuscation_invertibility(const VerifyOptions& opts) {
    SuiteResult result{"obfuscation-invertibility", opts.invertibility_trials,
                       true, ""};
    Rng rng(derive_seed(opts.seed, {tag(SeedTag::Verify), 3}));
    for (int t = 0; t < opts.invertibility_trials; ++t) {
        const std::uint64_t trial_seed = rng.next_u64();
        Rng trial_rng(trial_seed);
        const int n = trial_rng.range(1, 8);
        const ObfuscationKey key = gen_key(n, trial_rng.next_u64());
        Circuit round_trip = obf_layer(key);
        round_trip.extend(inv_layer(key));
        const StateVector input = random_state(n, trial_rng);
        const StateVector output = run(round_trip, input);
        if (fidelity(input, output) < 1.0 - 1e-9) {
            result.passed = false;
            result.detail = "counterexample seed " + std::to_string(trial_seed);
            return result;
        }
    }
    return result;
}

SuiteResult verify_gradient_check(const VerifyOptions& opts) {
    SuiteResult result{"mlp-gradient-check", opts.gradient_probes, true, ""};
    Rng rng(derive_seed(opts.seed, {tag(SeedTag::Verify), 4}));

    const std::size_t dim = 7;
    const std::size_t batch = 10;
    const std::vector<std::size_t> dims{dim, 25, 10, 5};
    MLPModel model = MLPModel::he_uniform(dims, rng.next_u64());

    std::vector<double> batch_x(batch * dim);
    std::vector<int> batch_y(batch);
    for (double& v : batch_x) {
        v = rng.uniform(-2.0, 2.0);
    }
    for (int& y : batch_y) {
        y = static_cast<int>(rng.below(5));
    }

    auto batch_loss = [&]() {
        double loss = 0.0;
        for (std::size_t s = 0; s < batch; ++s) {
            const std::span<const double> x{batch_x.data() + s * dim, dim};
            loss += cross_entropy(forward(model, x), batch_y[s]);
        }
        return loss / static_cast<double>(batch);
    };

    const Gradients grads = backward(model, batch_x, batch_y, dim);
    const double h = 1e-5;

    for (int probe = 0; probe < opts.gradient_probes; ++probe) {
        const std::size_t layer = rng.below(model.n_layers());
        const bool probe_bias = rng.below(6) == 0;
        auto& params = probe_bias ? model.biases[layer] : model.weights[layer];
        const auto& grad =
            probe_bias ? grads.biases[layer] : grads.weights[layer];
        const std::size_t idx = rng.below(params.size());

        const double saved = params[idx];
        params[idx] = saved + h;
        const double up = batch_loss();
        params[idx] = saved - h;
        const double down = batch_loss();
        params[idx] = saved;

        const double numeric = (up - down) / (2.0 * h);
        const double analytic = grad[idx];
        const double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-8});
        const double rel_err = std::abs(numeric - analytic) / denom;
        if (rel_err >= 1e-5) {
            result.passed = false;
            result.detail = "probe " + std::to_string(probe) + " rel err " +
                            std::to_string(rel_err);
            return result;
        }
    }
    return result;
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& opts) {
    return {
        verify_transpile_equivalence(opts),
        verify_state_prep(opts),
        verify_obfuscation_invertibility(opts),
        verify_gradient_check(opts),
    };
}

}  // namespace qfp
