/* Copyright 2026 The qfp developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * Stable C API of the qfp toolkit. The CLI and any language bindings link
 * against this surface only. Handles are opaque; every fallible call returns
 * a qfp_status, and qfp_last_error() describes the most recent failure on
 * the calling thread.
 */

#ifndef QFP_QFP_H
#define QFP_QFP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qfp_status {
    QFP_OK = 0,
    QFP_ERROR_USAGE = 1,  /* bad arguments, config, or state mismatch */
    QFP_ERROR_VERIFY = 2, /* an oracle/verification suite failed */
    QFP_ERROR_IO = 3      /* filesystem or input-data failure */
} qfp_status;

typedef struct qfp_config qfp_config;
typedef struct qfp_circuit qfp_circuit;

const char* qfp_version(void);

/* Thread-local message describing the last failing call ("" when none). */
const char* qfp_last_error(void);

/* ---- configuration ---------------------------------------------------- */

qfp_config* qfp_config_new(void);
void qfp_config_free(qfp_config* cfg);

/* Loads `key = value` lines from a file, then applies the QFP_SEED
 * environment override. */
qfp_status qfp_config_load_file(qfp_config* cfg, const char* path);

qfp_status qfp_config_set(qfp_config* cfg, const char* key, const char* value);

/* Returns NULL for unknown keys. The pointer stays valid until the next
 * qfp_config_get call on the same config. */
const char* qfp_config_get(qfp_config* cfg, const char* key);

/* ---- experiment commands (mirror the CLI subcommands) ------------------ */

qfp_status qfp_run_gen(const qfp_config* cfg);
qfp_status qfp_run_train(const qfp_config* cfg);
qfp_status qfp_run_eval(const qfp_config* cfg);

/* qubit_counts may be NULL to use the config's scaling_qubits list. */
qfp_status qfp_run_scaling(const qfp_config* cfg, const int* qubit_counts,
                           size_t count);

qfp_status qfp_run_defense_eval(const qfp_config* cfg);
qfp_status qfp_run_verify(const qfp_config* cfg);

/* ---- circuit files ------------------------------------------------------ */

qfp_status qfp_circuit_read_json(const char* path, qfp_circuit** out);
qfp_status qfp_circuit_write_json(const qfp_circuit* circuit, const char* path);
qfp_status qfp_circuit_write_qasm(const qfp_circuit* circuit, const char* path);
void qfp_circuit_free(qfp_circuit* circuit);

int qfp_circuit_n_qubits(const qfp_circuit* circuit);
size_t qfp_circuit_size(const qfp_circuit* circuit);
int qfp_circuit_depth(const qfp_circuit* circuit);

/* ---- defense ------------------------------------------------------------ */

/* Applies the obfuscation defense to separate encoding/PQC circuit files.
 * out_json/out_qasm may be NULL to skip that output. */
qfp_status qfp_defend_files(const char* encoding_path, const char* pqc_path,
                            uint64_t key_seed, const char* out_json,
                            const char* out_qasm);

/* Same, but splitting a single circuit file at an instruction boundary:
 * instructions [0, boundary) form the encoding part. */
qfp_status qfp_defend_split(const char* circuit_path, size_t boundary,
                            uint64_t key_seed, const char* out_json,
                            const char* out_qasm);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QFP_QFP_H */
