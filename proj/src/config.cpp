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

#include "config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace qfp {

namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "off" || value == "no") {
        return false;
    }
    throw UsageError("config: bad boolean for '" + key + "': " + value);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad integer for '" + key + "': " + value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad seed for '" + key + "': " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad number for '" + key + "': " + value);
    }
}

/// FNV-1a over the canonical key string.
std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("config: cannot open '" + path + "'");
    }
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config " + path + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "n_qubits") {
        n_qubits = parse_int(key, value);
    } else if (key == "samples_per_class") {
        samples_per_class = parse_int(key, value);
    } else if (key == "pqc_layers_min") {
        pqc_layers_min = parse_int(key, value);
    } else if (key == "pqc_layers_max") {
        pqc_layers_max = parse_int(key, value);
    } else if (key == "coupling") {
        coupling = value;
    } else if (key == "base_seed") {
        base_seed = parse_u64(key, value);
    } else if (key == "defense") {
        defense = value;
    } else if (key == "output_dir") {
        output_dir = value;
    } else if (key == "epochs") {
        epochs = parse_int(key, value);
    } else if (key == "batch_size") {
        batch_size = parse_int(key, value);
    } else if (key == "learning_rate") {
        learning_rate = parse_double(key, value);
    } else if (key == "registry_version") {
        registry_version = parse_int(key, value);
    } else if (key == "amplitude_real") {
        amplitude_real = parse_bool(key, value);
    } else if (key == "baseline_barrier") {
        baseline_barrier = parse_bool(key, value);
    } else if (key == "write_circuits") {
        write_circuits = parse_bool(key, value);
    } else if (key == "workers") {
        workers = parse_int(key, value);
    } else if (key == "defense_samples_per_class") {
        defense_samples_per_class = parse_int(key, value);
    } else if (key == "defense_pqc_layers") {
        defense_pqc_layers = parse_int(key, value);
    } else if (key == "retrain_adversary") {
        retrain_adversary = parse_bool(key, value);
    } else if (key == "scaling_samples_per_class") {
        scaling_samples_per_class = parse_int(key, value);
    } else if (key == "scaling_qubits") {
        scaling_qubits = value;
    } else {
        throw UsageError("config: unknown key '" + key + "'");
    }
}

std::optional<std::string> ExperimentConfig::get(const std::string& key) const {
    if (key == "n_qubits") return std::to_string(n_qubits);
    if (key == "samples_per_class") return std::to_string(samples_per_class);
    if (key == "pqc_layers_min") return std::to_string(pqc_layers_min);
    if (key == "pqc_layers_max") return std::to_string(pqc_layers_max);
    if (key == "coupling") return coupling;
    if (key == "base_seed") return std::to_string(base_seed);
    if (key == "defense") return defense;
    if (key == "output_dir") return output_dir;
    if (key == "epochs") return std::to_string(epochs);
    if (key == "batch_size") return std::to_string(batch_size);
    if (key == "learning_rate") {
        std::ostringstream out;
        out << learning_rate;
        return out.str();
    }
    if (key == "registry_version") return std::to_string(registry_version);
    if (key == "amplitude_real") return amplitude_real ? "true" : "false";
    if (key == "baseline_barrier") return baseline_barrier ? "true" : "false";
    if (key == "write_circuits") return write_circuits ? "true" : "false";
    if (key == "workers") return std::to_string(workers);
    if (key == "defense_samples_per_class") {
        return std::to_string(defense_samples_per_class);
    }
    if (key == "defense_pqc_layers") return std::to_string(defense_pqc_layers);
    if (key == "retrain_adversary") return retrain_adversary ? "true" : "false";
    if (key == "scaling_samples_per_class") {
        return std::to_string(scaling_samples_per_class);
    }
    if (key == "scaling_qubits") return scaling_qubits;
    return std::nullopt;
}

void ExperimentConfig::apply_env() {
    if (const char* env = std::getenv("QFP_SEED")) {
        base_seed = parse_u64("QFP_SEED", env);
    }
}

void ExperimentConfig::validate() const {
    if (n_qubits < 2) {
        throw UsageError("config: n_qubits must be >= 2 (entanglement-bearing "
                         "PQCs need two qubits)");
    }
    if (n_qubits > 20) {
        throw UsageError("config: n_qubits > 20 is not supported");
    }
    if (samples_per_class < 25) {
        throw UsageError("config: samples_per_class must be >= 25");
    }
    if (pqc_layers_min < 1 || pqc_layers_max < pqc_layers_min) {
        throw UsageError("config: bad pqc layer range");
    }
    if (coupling != "linear" && coupling != "all_to_all") {
        throw UsageError("config: coupling must be linear or all_to_all");
    }
    if (defense != "off" && defense != "on" && defense != "both") {
        throw UsageError("config: defense must be off, on, or both");
    }
    if (epochs < 1 || batch_size < 1) {
        throw UsageError("config: epochs and batch_size must be >= 1");
    }
    if (learning_rate <= 0.0) {
        throw UsageError("config: learning_rate must be positive");
    }
    if (registry_version != 1) {
        throw UsageError("config: unsupported registry_version (expected 1)");
    }
    if (workers < 0) {
        throw UsageError("config: workers must be >= 0");
    }
    if (defense_samples_per_class < 1 || defense_pqc_layers < 1) {
        throw UsageError("config: bad defense evaluation settings");
    }
    if (scaling_samples_per_class < 25) {
        throw UsageError("config: scaling_samples_per_class must be >= 25");
    }
}

std::string ExperimentConfig::gen_hash() const {
    std::ostringstream canon;
    canon << "n_qubits=" << n_qubits
          << ";samples_per_class=" << samples_per_class
          << ";pqc_layers=" << pqc_layers_min << ".." << pqc_layers_max
          << ";coupling=" << coupling
          << ";base_seed=" << base_seed
          << ";defense=" << defense
          << ";amplitude_real=" << (amplitude_real ? 1 : 0)
          << ";baseline_barrier=" << (baseline_barrier ? 1 : 0)
          << ";registry_version=" << registry_version;
    return fnv1a_hex(canon.str());
}

}  // namespace qfp
