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

#include "qfp/qfp.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "serialize.hpp"

struct qfp_config {
    qfp::ExperimentConfig impl;
    std::string get_buffer;
};

struct qfp_circuit {
    qfp::Circuit impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
qfp_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QFP_OK;
    } catch (const qfp::UsageError& e) {
        set_error(e.what());
        return QFP_ERROR_USAGE;
    } catch (const qfp::VerifyError& e) {
        set_error(e.what());
        return QFP_ERROR_VERIFY;
    } catch (const qfp::ParseError& e) {
        set_error(e.what());
        return QFP_ERROR_IO;
    } catch (const qfp::IoError& e) {
        set_error(e.what());
        return QFP_ERROR_IO;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return QFP_ERROR_USAGE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return QFP_ERROR_IO;
    }
}

std::string read_file_or_throw(const char* path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qfp::IoError("cannot open '" + std::string(path) + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_or_throw(const char* path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw qfp::IoError("cannot write '" + std::string(path) + "'");
    }
    out << content;
}

}  // namespace

extern "C" {

const char* qfp_version(void) { return "1.0.0"; }

const char* qfp_last_error(void) { return g_last_error.c_str(); }

qfp_config* qfp_config_new(void) {
    auto* cfg = new qfp_config();
    try {
        cfg->impl.apply_env();
    } catch (const std::exception& e) {
        set_error(e.what());
    }
    return cfg;
}

void qfp_config_free(qfp_config* cfg) { delete cfg; }

qfp_status qfp_config_load_file(qfp_config* cfg, const char* path) {
    if (cfg == nullptr || path == nullptr) {
        set_error("null argument");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() {
        cfg->impl = qfp::ExperimentConfig::load_file(path);
        cfg->impl.apply_env();
    });
}

qfp_status qfp_config_set(qfp_config* cfg, const char* key, const char* value) {
    if (cfg == nullptr || key == nullptr || value == nullptr) {
        set_error("null argument");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() { cfg->impl.set(key, value); });
}

const char* qfp_config_get(qfp_config* cfg, const char* key) {
    if (cfg == nullptr || key == nullptr) {
        return nullptr;
    }
    const auto value = cfg->impl.get(key);
    if (!value.has_value()) {
        return nullptr;
    }
    cfg->get_buffer = *value;
    return cfg->get_buffer.c_str();
}

qfp_status qfp_run_gen(const qfp_config* cfg) {
    if (cfg == nullptr) {
        set_error("null config");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() { qfp::cmd_gen(cfg->impl); });
}

qfp_status qfp_run_train(const qfp_config* cfg) {
    if (cfg == nullptr) {
        set_error("null config");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() { qfp::cmd_train(cfg->impl); });
}

qfp_status qfp_run_eval(const qfp_config* cfg) {
    if (cfg == nullptr) {
        set_error("null config");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() { qfp::cmd_eval(cfg->impl); });
}

qfp_status qfp_run_scaling(const qfp_config* cfg, const int* qubit_counts,
                           size_t count) {
    if (cfg == nullptr) {
        set_error("null config");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() {
        std::vector<int> qubits;
        if (qubit_counts != nullptr && count > 0) {
            qubits.assign(qubit_counts, qubit_counts + count);
        } else {
            qubits = qfp::parse_qubit_list(cfg->impl.scaling_qubits);
        }
        qfp::cmd_scaling(cfg->impl, qubits);
    });
}

qfp_status qfp_run_defense_eval(const qfp_config* cfg) {
    if (cfg == nullptr) {
        set_error("null config");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() { qfp::cmd_defense_eval(cfg->impl); });
}

qfp_status qfp_run_verify(const qfp_config* cfg) {
    if (cfg == nullptr) {
        set_error("null config");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() { qfp::cmd_verify(cfg->impl); });
}

qfp_status qfp_circuit_read_json(const char* path, qfp_circuit** out) {
    if (path == nullptr || out == nullptr) {
        set_error("null argument");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() {
        auto circuit = std::make_unique<qfp_circuit>();
        circuit->impl = qfp::parse_json(read_file_or_throw(path));
        *out = circuit.release();
    });
}

qfp_status qfp_circuit_write_json(const qfp_circuit* circuit, const char* path) {
    if (circuit == nullptr || path == nullptr) {
        set_error("null argument");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() {
        write_file_or_throw(path, qfp::emit_json(circuit->impl) + "\n");
    });
}

qfp_status qfp_circuit_write_qasm(const qfp_circuit* circuit, const char* path) {
    if (circuit == nullptr || path == nullptr) {
        set_error("null argument");
        return QFP_ERROR_USAGE;
    }
    return guarded(
        [&]() { write_file_or_throw(path, qfp::emit_qasm(circuit->impl)); });
}

void qfp_circuit_free(qfp_circuit* circuit) { delete circuit; }

int qfp_circuit_n_qubits(const qfp_circuit* circuit) {
    return circuit == nullptr ? 0 : circuit->impl.n_qubits();
}

size_t qfp_circuit_size(const qfp_circuit* circuit) {
    return circuit == nullptr ? 0 : circuit->impl.size();
}

int qfp_circuit_depth(const qfp_circuit* circuit) {
    return circuit == nullptr ? 0 : qfp::depth(circuit->impl);
}

qfp_status qfp_defend_files(const char* encoding_path, const char* pqc_path,
                            uint64_t key_seed, const char* out_json,
                            const char* out_qasm) {
    if (encoding_path == nullptr || pqc_path == nullptr) {
        set_error("null argument");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() {
        qfp::DefendFileRequest request;
        request.encoding_path = encoding_path;
        request.pqc_path = pqc_path;
        request.key_seed = key_seed;
        if (out_json != nullptr) {
            request.out_json = out_json;
        }
        if (out_qasm != nullptr) {
            request.out_qasm = out_qasm;
        }
        qfp::cmd_defend(request);
    });
}

qfp_status qfp_defend_split(const char* circuit_path, size_t boundary,
                            uint64_t key_seed, const char* out_json,
                            const char* out_qasm) {
    if (circuit_path == nullptr) {
        set_error("null argument");
        return QFP_ERROR_USAGE;
    }
    return guarded([&]() {
        qfp::DefendFileRequest request;
        request.circuit_path = circuit_path;
        request.boundary = boundary;
        request.key_seed = key_seed;
        if (out_json != nullptr) {
            request.out_json = out_json;
        }
        if (out_qasm != nullptr) {
            request.out_qasm = out_qasm;
        }
        qfp::cmd_defend(request);
    });
}

}  // extern "C"
