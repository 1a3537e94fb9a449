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

// qfp command-line front end. Parses arguments, fills a qfp_config, and
// dispatches to the shared-library C API; all real work happens there.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfp/qfp.h"

namespace {

struct ConfigDeleter {
    void operator()(qfp_config* cfg) const { qfp_config_free(cfg); }
};
using ConfigPtr = std::unique_ptr<qfp_config, ConfigDeleter>;

int fail(qfp_status status) {
    std::fprintf(stderr, "error: %s\n", qfp_last_error());
    return static_cast<int>(status);
}

/// Builds the effective config: file (optional), then --set overrides, then
/// convenience flags.
int apply_config(qfp_config* cfg, const std::string& config_path,
                 const std::vector<std::string>& overrides,
                 const std::string& output_dir, const std::string& seed) {
    if (!config_path.empty()) {
        const qfp_status status = qfp_config_load_file(cfg, config_path.c_str());
        if (status != QFP_OK) {
            return fail(status);
        }
    }
    for (const std::string& kv : overrides) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                         kv.c_str());
            return static_cast<int>(QFP_ERROR_USAGE);
        }
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        const qfp_status status =
            qfp_config_set(cfg, key.c_str(), value.c_str());
        if (status != QFP_OK) {
            return fail(status);
        }
    }
    if (!output_dir.empty()) {
        const qfp_status status =
            qfp_config_set(cfg, "output_dir", output_dir.c_str());
        if (status != QFP_OK) {
            return fail(status);
        }
    }
    if (!seed.empty()) {
        const qfp_status status = qfp_config_set(cfg, "base_seed", seed.c_str());
        if (status != QFP_OK) {
            return fail(status);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qfp: encoding-detection attack and obfuscation-defense "
                 "toolkit for transpiled quantum circuits"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string output_dir;
    std::string seed;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "Experiment config file")
        ->check(CLI::ExistingFile);
    app.add_option("--set", overrides, "Override a config key (key=value)");
    app.add_option("--out", output_dir, "Output directory override");
    app.add_option("--seed", seed, "Base seed override");

    auto* gen = app.add_subcommand("gen", "Generate the labeled dataset");
    auto* train = app.add_subcommand("train", "Train the encoding classifier");
    auto* eval = app.add_subcommand("eval", "Evaluate on the test split");

    auto* scaling =
        app.add_subcommand("scaling", "Accuracy vs qubit count sweep");
    std::string qubits_arg;
    scaling->add_option("--qubits", qubits_arg,
                        "Comma-separated qubit counts (default from config)");

    auto* defense_eval = app.add_subcommand(
        "defense-eval", "Evaluate the obfuscation defense with the trained "
                        "classifier and report depth overhead");
    auto* verify =
        app.add_subcommand("verify", "Run the statevector/gradient oracle "
                                     "suites (exit 2 on failure)");

    auto* defend = app.add_subcommand(
        "defend", "Apply the obfuscation defense to circuit files");
    std::string encoding_path, pqc_path, circuit_path, out_prefix;
    std::uint64_t key_seed = 0;
    long long boundary = -1;
    defend->add_option("--encoding", encoding_path,
                       "Encoding circuit JSON file");
    defend->add_option("--pqc", pqc_path, "PQC circuit JSON file");
    defend->add_option("--circuit", circuit_path,
                       "Combined circuit JSON file (use with --boundary)");
    defend->add_option("--boundary", boundary,
                       "Instruction index splitting encoding from PQC");
    defend->add_option("--key-seed", key_seed, "Obfuscation key seed");
    defend->add_option("--out-prefix", out_prefix,
                       "Output prefix (writes <prefix>.json and <prefix>.qasm)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(QFP_ERROR_USAGE);
    }

    ConfigPtr cfg(qfp_config_new());
    const int config_rc =
        apply_config(cfg.get(), config_path, overrides, output_dir, seed);
    if (config_rc != 0) {
        return config_rc;
    }

    qfp_status status = QFP_OK;
    if (gen->parsed()) {
        status = qfp_run_gen(cfg.get());
    } else if (train->parsed()) {
        status = qfp_run_train(cfg.get());
    } else if (eval->parsed()) {
        status = qfp_run_eval(cfg.get());
    } else if (scaling->parsed()) {
        if (!qubits_arg.empty()) {
            const qfp_status set_status =
                qfp_config_set(cfg.get(), "scaling_qubits", qubits_arg.c_str());
            if (set_status != QFP_OK) {
                return fail(set_status);
            }
        }
        status = qfp_run_scaling(cfg.get(), nullptr, 0);
    } else if (defense_eval->parsed()) {
        status = qfp_run_defense_eval(cfg.get());
    } else if (verify->parsed()) {
        status = qfp_run_verify(cfg.get());
    } else if (defend->parsed()) {
        const std::string out_json = out_prefix + ".json";
        const std::string out_qasm = out_prefix + ".qasm";
        if (!circuit_path.empty()) {
            if (boundary < 0) {
                std::fprintf(stderr,
                             "error: --boundary is required with --circuit\n");
                return static_cast<int>(QFP_ERROR_USAGE);
            }
            status = qfp_defend_split(circuit_path.c_str(),
                                      static_cast<size_t>(boundary), key_seed,
                                      out_json.c_str(), out_qasm.c_str());
        } else {
            status = qfp_defend_files(encoding_path.c_str(), pqc_path.c_str(),
                                      key_seed, out_json.c_str(),
                                      out_qasm.c_str());
        }
    }

    if (status != QFP_OK) {
        return fail(status);
    }
    return 0;
}
