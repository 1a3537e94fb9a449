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

#include "harness.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "defense.hpp"
#include "encoding.hpp"
#include "errors.hpp"
#include "fingerprint.hpp"
#include "pqc.hpp"
#include "serialize.hpp"
#include "statevector.hpp"
#include "transpile.hpp"

namespace qfp {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Extra tag mixed into defense-evaluation sample seeds so the fresh test set
// never collides with training data generated from the same base seed.
constexpr std::uint64_t kDefenseEvalStream = 0xDEFE;

std::string format_g9(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int resolve_workers(int configured) {
    if (configured > 0) {
        return configured;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs `fn(job_index)` for every index in [0, count) across workers.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const auto n_threads =
        std::min(count, static_cast<std::size_t>(workers));
    pool.reserve(n_threads);
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) {
                    break;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    failed.store(true);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

struct SampleSeeds {
    std::uint64_t encoding;
    std::uint64_t pqc;
    std::uint64_t key;
};

SampleSeeds sample_seeds(std::uint64_t base, int cls, int index,
                         std::uint64_t stream = 0) {
    const auto c = static_cast<std::uint64_t>(cls);
    const auto i = static_cast<std::uint64_t>(index);
    return {
        derive_seed(base, {tag(SeedTag::Encoding), stream, c, i}),
        derive_seed(base, {tag(SeedTag::Pqc), stream, c, i}),
        derive_seed(base, {tag(SeedTag::DefenseKey), stream, c, i}),
    };
}

struct BuiltSample {
    Circuit undefended;
    Circuit defended;  // only populated when requested
};

BuiltSample build_sample(const ExperimentConfig& cfg, int cls, int index,
                         int pqc_layers_min, int pqc_layers_max,
                         std::uint64_t stream, bool want_defended,
                         bool want_undefended) {
    const SampleSeeds seeds = sample_seeds(cfg.base_seed, cls, index, stream);
    const auto encoding_class = static_cast<EncodingClass>(cls);
    Circuit enc = sample_encoding(encoding_class, cfg.n_qubits, seeds.encoding,
                                  cfg.amplitude_real);
    Rng pqc_rng(seeds.pqc);
    const PQCConfig pqc_cfg =
        sample_pqc_config(cfg.n_qubits, pqc_rng, pqc_layers_min, pqc_layers_max);
    const Circuit pqc = build_pqc(pqc_cfg, cfg.n_qubits);

    BuiltSample out;
    if (want_undefended) {
        if (cfg.baseline_barrier) {
            Circuit enc_with_barrier = enc;
            std::vector<int> all(static_cast<std::size_t>(cfg.n_qubits));
            std::iota(all.begin(), all.end(), 0);
            enc_with_barrier.append(Instruction::barrier(all));
            out.undefended = augment(enc_with_barrier, pqc);
        } else {
            out.undefended = augment(enc, pqc);
        }
        out.undefended.meta["seed"] = std::to_string(seeds.encoding);
        out.undefended.meta["pqc_layers"] = std::to_string(pqc_cfg.layers);
    }
    if (want_defended) {
        const ObfuscationKey key = gen_key(cfg.n_qubits, seeds.key);
        out.defended = defend(enc, pqc, key);
        out.defended.meta["seed"] = std::to_string(seeds.encoding);
        out.defended.meta["pqc_layers"] = std::to_string(pqc_cfg.layers);
    }
    return out;
}

std::string feature_csv_header(int n_qubits) {
    std::string header = "label";
    for (const std::string& name : feature_names(n_qubits)) {
        header += ",";
        header += name;
    }
    header += "\n";
    return header;
}

std::string feature_csv_row(EncodingClass cls, const FeatureVector& fv) {
    std::string row(encoding_class_name(cls));
    for (double v : fv.values) {
        row += ",";
        row += format_g9(v);
    }
    row += "\n";
    return row;
}

json manifest_json(const ExperimentConfig& cfg,
                   const std::vector<std::size_t>& per_class,
                   const std::vector<std::string>& files) {
    json m;
    m["config_hash"] = cfg.gen_hash();
    m["n_qubits"] = cfg.n_qubits;
    m["samples_per_class"] = cfg.samples_per_class;
    m["feature_count"] = feature_count(cfg.n_qubits);
    m["registry_version"] = cfg.registry_version;
    m["defense"] = cfg.defense;
    m["class_names"] = encoding_class_names();
    m["class_counts"] = per_class;
    m["files"] = files;
    return m;
}

json load_manifest(const ExperimentConfig& cfg) {
    const fs::path path = fs::path(cfg.output_dir) / "manifest.json";
    if (!fs::exists(path)) {
        throw IoError("manifest not found at '" + path.string() +
                      "'; run gen first");
    }
    json m;
    try {
        m = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError("manifest: " + std::string(e.what()));
    }
    if (m.value("config_hash", "") != cfg.gen_hash()) {
        throw UsageError(
            "config hash mismatch: the dataset in '" + cfg.output_dir +
            "' was generated with a different configuration; re-run gen");
    }
    return m;
}

LoadedModel load_model_checked(const ExperimentConfig& cfg) {
    const fs::path path = fs::path(cfg.output_dir) / "model.json";
    if (!fs::exists(path)) {
        throw IoError("model not found at '" + path.string() +
                      "'; run train first");
    }
    LoadedModel loaded = model_from_json(read_text_file(path));
    if (loaded.config_hash != cfg.gen_hash()) {
        throw UsageError("config hash mismatch: model in '" + cfg.output_dir +
                         "' was trained under a different configuration");
    }
    if (loaded.registry_version != cfg.registry_version) {
        throw UsageError("model registry_version mismatch");
    }
    return loaded;
}

std::string eval_report_text(const EvalReport& report) {
    // Table layout: per-class precision/recall/F1/support, then accuracy,
    // macro and weighted averages.
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %10s %10s %10s %10s\n", "class",
                  "precision", "recall", "f1", "support");
    out << line;
    out << std::string(56, '-') << "\n";
    for (const ClassMetrics& m : report.per_class) {
        std::snprintf(line, sizeof(line), "%-12s %10.2f %10.2f %10.2f %10zu\n",
                      m.name.c_str(), m.precision, m.recall, m.f1, m.support);
        out << line;
    }
    out << std::string(56, '-') << "\n";
    std::snprintf(line, sizeof(line), "%-12s %10s %10s %10.2f %10zu\n",
                  "accuracy", "-", "-", report.accuracy, report.total);
    out << line;
    std::snprintf(line, sizeof(line), "%-12s %10.2f %10.2f %10.2f %10zu\n",
                  "macro avg", report.macro_precision, report.macro_recall,
                  report.macro_f1, report.total);
    out << line;
    std::snprintf(line, sizeof(line), "%-12s %10.2f %10.2f %10.2f %10zu\n",
                  "weighted avg", report.weighted_precision,
                  report.weighted_recall, report.weighted_f1, report.total);
    out << line;
    return out.str();
}

json eval_report_json(const EvalReport& report) {
    json j;
    j["accuracy"] = report.accuracy;
    j["total"] = report.total;
    j["confusion"] = report.confusion;
    j["per_class"] = json::array();
    for (const ClassMetrics& m : report.per_class) {
        j["per_class"].push_back({{"name", m.name},
                                  {"precision", m.precision},
                                  {"recall", m.recall},
                                  {"f1", m.f1},
                                  {"support", m.support}});
    }
    j["macro"] = {{"precision", report.macro_precision},
                  {"recall", report.macro_recall},
                  {"f1", report.macro_f1}};
    j["weighted"] = {{"precision", report.weighted_precision},
                     {"recall", report.weighted_recall},
                     {"f1", report.weighted_f1}};
    return j;
}

std::array<double, 3> split_fractions() { return {0.6, 0.2, 0.2}; }

}  // namespace

std::vector<int> parse_qubit_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece.empty()) {
            continue;
        }
        try {
            out.push_back(std::stoi(piece));
        } catch (const std::exception&) {
            throw UsageError("bad qubit list entry '" + piece + "'");
        }
    }
    if (out.empty()) {
        throw UsageError("empty qubit list");
    }
    return out;
}

GenSummary cmd_gen(const ExperimentConfig& cfg) {
    cfg.validate();
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);

    const bool want_undefended = cfg.defense == "off" || cfg.defense == "both";
    const bool want_defended = cfg.defense == "on" || cfg.defense == "both";
    const CouplingMap map = CouplingMap::preset(cfg.coupling, cfg.n_qubits);

    const auto spc = static_cast<std::size_t>(cfg.samples_per_class);
    const std::size_t total = spc * kNumEncodingClasses;

    struct SampleOutput {
        std::string row;
        std::string row_defended;
        std::string circuit_json;
        std::string circuit_defended_json;
    };
    std::vector<SampleOutput> outputs(total);

    fs::path circuits_dir;
    fs::path circuits_defended_dir;
    if (cfg.write_circuits) {
        if (want_undefended) {
            circuits_dir = out_dir / "circuits";
            fs::create_directories(circuits_dir);
        }
        if (want_defended) {
            circuits_defended_dir =
                out_dir / (want_undefended ? "circuits_defended" : "circuits");
            fs::create_directories(circuits_defended_dir);
        }
    }

    parallel_for(total, resolve_workers(cfg.workers), [&](std::size_t i) {
        const int cls = static_cast<int>(i / spc);
        const int index = static_cast<int>(i % spc);
        const BuiltSample sample =
            build_sample(cfg, cls, index, cfg.pqc_layers_min,
                         cfg.pqc_layers_max, 0, want_defended, want_undefended);
        SampleOutput& slot = outputs[i];
        const auto encoding_class = static_cast<EncodingClass>(cls);
        if (want_undefended) {
            TranspileResult tr = transpile(sample.undefended, map);
            slot.row = feature_csv_row(encoding_class, extract(tr.circuit));
            if (cfg.write_circuits) {
                slot.circuit_json = emit_json(tr.circuit);
            }
        }
        if (want_defended) {
            TranspileResult tr = transpile(sample.defended, map);
            slot.row_defended =
                feature_csv_row(encoding_class, extract(tr.circuit));
            if (cfg.write_circuits) {
                slot.circuit_defended_json = emit_json(tr.circuit);
            }
        }
    });

    // Single-writer output pass, in canonical (class, index) order.
    GenSummary summary;
    summary.per_class.assign(kNumEncodingClasses, spc);
    summary.total_rows = total;
    std::vector<std::string> files;

    auto write_csv = [&](const std::string& filename, bool defended_view) {
        std::string csv = feature_csv_header(cfg.n_qubits);
        for (const SampleOutput& slot : outputs) {
            csv += defended_view ? slot.row_defended : slot.row;
        }
        const fs::path path = out_dir / filename;
        write_text_file(path, csv);
        files.push_back(filename);
        return path.string();
    };

    if (want_undefended) {
        summary.csv_path = write_csv("features.csv", false);
        if (want_defended) {
            write_csv("features_defended.csv", true);
        }
    } else {
        summary.csv_path = write_csv("features.csv", true);
    }

    if (cfg.write_circuits) {
        for (std::size_t i = 0; i < total; ++i) {
            const int cls = static_cast<int>(i / spc);
            const int index = static_cast<int>(i % spc);
            const std::string stem =
                std::string(encoding_class_name(static_cast<EncodingClass>(cls))) +
                "_" + std::to_string(index) + ".json";
            if (want_undefended) {
                write_text_file(circuits_dir / stem, outputs[i].circuit_json);
            }
            if (want_defended) {
                write_text_file(circuits_defended_dir / stem,
                                outputs[i].circuit_defended_json);
            }
        }
    }

    const json manifest = manifest_json(cfg, summary.per_class, files);
    const fs::path manifest_path = out_dir / "manifest.json";
    write_text_file(manifest_path, manifest.dump(2) + "\n");
    summary.manifest_path = manifest_path.string();

    std::printf("gen: wrote %zu rows (%d per class) to %s\n", summary.total_rows,
                cfg.samples_per_class, summary.csv_path.c_str());
    return summary;
}

Dataset load_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("dataset not found at '" + path + "'; run gen first");
    }
    Dataset data;
    data.class_names = encoding_class_names();
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("feature CSV: empty file");
    }
    // Header: label,<name0>,<name1>,...
    std::size_t dim = 0;
    for (char ch : line) {
        if (ch == ',') {
            ++dim;
        }
    }
    if (dim == 0) {
        throw ParseError("feature CSV: bad header");
    }
    data.dim = dim;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::size_t pos = line.find(',');
        if (pos == std::string::npos) {
            throw ParseError("feature CSV line " + std::to_string(line_no) +
                             ": missing label column");
        }
        const auto cls = encoding_class_from_name(line.substr(0, pos));
        if (!cls.has_value()) {
            throw ParseError("feature CSV line " + std::to_string(line_no) +
                             ": unknown label '" + line.substr(0, pos) + "'");
        }
        data.labels.push_back(static_cast<int>(*cls));
        std::size_t count = 0;
        const char* cursor = line.c_str() + pos + 1;
        while (*cursor != '\0') {
            char* end = nullptr;
            const double v = std::strtod(cursor, &end);
            if (end == cursor) {
                throw ParseError("feature CSV line " + std::to_string(line_no) +
                                 ": bad number");
            }
            data.features.push_back(v);
            ++count;
            cursor = end;
            if (*cursor == ',') {
                ++cursor;
            }
        }
        if (count != data.dim) {
            throw ParseError("feature CSV line " + std::to_string(line_no) +
                             ": expected " + std::to_string(data.dim) +
                             " features, got " + std::to_string(count));
        }
        ++data.rows;
    }
    if (data.rows == 0) {
        throw ParseError("feature CSV: no data rows");
    }
    data.n_qubits = (static_cast<int>(data.dim) - kGlobalFeatureCount) / 2;
    return data;
}

TrainSummary cmd_train(const ExperimentConfig& cfg) {
    cfg.validate();
    const json manifest = load_manifest(cfg);
    const fs::path out_dir(cfg.output_dir);
    Dataset data = load_feature_csv((out_dir / "features.csv").string());
    data.n_qubits = manifest.value("n_qubits", data.n_qubits);
    if (static_cast<int>(data.dim) != feature_count(data.n_qubits)) {
        throw UsageError("dataset feature count does not match manifest");
    }

    const SplitIndices split = stratified_split(
        data.labels, split_fractions(), cfg.base_seed);

    TrainOptions opts;
    opts.epochs = static_cast<std::size_t>(cfg.epochs);
    opts.batch_size = static_cast<std::size_t>(cfg.batch_size);
    opts.lr = cfg.learning_rate;
    const TrainResult result =
        train(data, split, derive_seed(cfg.base_seed, {tag(SeedTag::Train)}), opts);

    TrainSummary summary;
    summary.report = result.report;
    summary.final_val_accuracy = result.report.val_acc.back();

    const std::string model_text =
        model_to_json(result.model, result.scaler, data.class_names,
                      data.n_qubits, cfg.registry_version, cfg.gen_hash());
    const fs::path model_path = out_dir / "model.json";
    write_text_file(model_path, model_text);
    summary.model_path = model_path.string();

    std::string curves = "epoch,train_loss,train_acc,val_loss,val_acc\n";
    for (std::size_t e = 0; e < result.report.train_loss.size(); ++e) {
        curves += std::to_string(e + 1);
        curves += ",";
        curves += format_g9(result.report.train_loss[e]);
        curves += ",";
        curves += format_g9(result.report.train_acc[e]);
        curves += ",";
        curves += format_g9(result.report.val_loss[e]);
        curves += ",";
        curves += format_g9(result.report.val_acc[e]);
        curves += "\n";
    }
    const fs::path curves_path = out_dir / "curves.csv";
    write_text_file(curves_path, curves);
    summary.curves_path = curves_path.string();

    std::printf("train: %zu epochs, final val accuracy %.4f, model at %s\n",
                result.report.val_acc.size(), summary.final_val_accuracy,
                summary.model_path.c_str());
    return summary;
}

EvalReport cmd_eval(const ExperimentConfig& cfg) {
    cfg.validate();
    load_manifest(cfg);
    const fs::path out_dir(cfg.output_dir);
    const LoadedModel loaded = load_model_checked(cfg);
    Dataset data = load_feature_csv((out_dir / "features.csv").string());
    const SplitIndices split =
        stratified_split(data.labels, split_fractions(), cfg.base_seed);
    const EvalReport report =
        evaluate(loaded.model, loaded.scaler, data, split.test);

    write_text_file(out_dir / "eval_report.json",
                    eval_report_json(report).dump(2) + "\n");
    write_text_file(out_dir / "eval_report.txt", eval_report_text(report));
    std::printf("eval: test accuracy %.4f over %zu rows\n", report.accuracy,
                report.total);
    return report;
}

std::vector<ScalingRow> cmd_scaling(const ExperimentConfig& cfg,
                                    const std::vector<int>& qubit_counts) {
    cfg.validate();
    if (qubit_counts.empty()) {
        throw UsageError("scaling: empty qubit list");
    }
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);

    std::vector<ScalingRow> rows;
    for (int n : qubit_counts) {
        ExperimentConfig sub = cfg;
        sub.n_qubits = n;
        sub.samples_per_class = cfg.scaling_samples_per_class;
        sub.write_circuits = false;
        sub.output_dir = (out_dir / ("scaling_n" + std::to_string(n))).string();
        cmd_gen(sub);
        cmd_train(sub);
        const EvalReport report = cmd_eval(sub);
        rows.push_back({n, feature_count(n), report.accuracy});
    }

    std::string csv = "n_qubits,n_features,test_accuracy\n";
    for (const ScalingRow& row : rows) {
        csv += std::to_string(row.n_qubits);
        csv += ",";
        csv += std::to_string(row.n_features);
        csv += ",";
        csv += format_g9(row.test_accuracy);
        csv += "\n";
    }
    write_text_file(out_dir / "scaling.csv", csv);
    std::printf("scaling: wrote %zu rows to %s\n", rows.size(),
                (out_dir / "scaling.csv").string().c_str());
    return rows;
}

DefenseSummary cmd_defense_eval(const ExperimentConfig& cfg) {
    cfg.validate();
    const LoadedModel loaded = load_model_checked(cfg);
    const CouplingMap map = CouplingMap::preset(cfg.coupling, cfg.n_qubits);
    const fs::path out_dir(cfg.output_dir);

    const auto spc = static_cast<std::size_t>(cfg.defense_samples_per_class);
    const std::size_t total = spc * kNumEncodingClasses;

    struct PairOutcome {
        int truth = 0;
        int pred_undefended = 0;
        int pred_defended = 0;
        int depth_undefended = 0;
        int depth_defended = 0;
        std::vector<double> defended_features;
    };
    std::vector<PairOutcome> outcomes(total);
    const bool keep_defended_features = cfg.retrain_adversary;

    parallel_for(total, resolve_workers(cfg.workers), [&](std::size_t i) {
        const int cls = static_cast<int>(i / spc);
        const int index = static_cast<int>(i % spc);
        const BuiltSample sample =
            build_sample(cfg, cls, index, cfg.defense_pqc_layers,
                         cfg.defense_pqc_layers, kDefenseEvalStream, true, true);
        PairOutcome& slot = outcomes[i];
        slot.truth = cls;

        const TranspileResult und = transpile(sample.undefended, map);
        const TranspileResult def = transpile(sample.defended, map);
        slot.depth_undefended = und.stats.depth_after;
        slot.depth_defended = def.stats.depth_after;

        const FeatureVector f_und = extract(und.circuit);
        const FeatureVector f_def = extract(def.circuit);
        slot.pred_undefended = predict(loaded.model, loaded.scaler, f_und.values);
        slot.pred_defended = predict(loaded.model, loaded.scaler, f_def.values);
        if (keep_defended_features) {
            slot.defended_features = f_def.values;
        }
    });

    DefenseSummary summary;
    summary.instances_per_class = spc;

    std::vector<int> truth, pred_und, pred_def;
    truth.reserve(total);
    pred_und.reserve(total);
    pred_def.reserve(total);
    double overhead_sum = 0.0;
    std::size_t nondecreasing = 0;
    std::vector<double> depth_und_sum(kNumEncodingClasses, 0.0);
    std::vector<double> depth_def_sum(kNumEncodingClasses, 0.0);
    for (const PairOutcome& o : outcomes) {
        truth.push_back(o.truth);
        pred_und.push_back(o.pred_undefended);
        pred_def.push_back(o.pred_defended);
        if (o.depth_undefended > 0) {
            overhead_sum +=
                static_cast<double>(o.depth_defended - o.depth_undefended) /
                static_cast<double>(o.depth_undefended);
        }
        if (o.depth_defended >= o.depth_undefended) {
            ++nondecreasing;
        }
        depth_und_sum[static_cast<std::size_t>(o.truth)] += o.depth_undefended;
        depth_def_sum[static_cast<std::size_t>(o.truth)] += o.depth_defended;
    }

    const auto names = encoding_class_names();
    summary.undefended = evaluate_predictions(truth, pred_und, names);
    summary.defended = evaluate_predictions(truth, pred_def, names);
    summary.mean_overhead_pct =
        100.0 * overhead_sum / static_cast<double>(total);
    summary.frac_depth_nondecreasing =
        static_cast<double>(nondecreasing) / static_cast<double>(total);

    for (int cls = 0; cls < kNumEncodingClasses; ++cls) {
        DefenseClassDepth row;
        row.class_name = names[static_cast<std::size_t>(cls)];
        row.instances = spc;
        row.original_mean =
            depth_und_sum[static_cast<std::size_t>(cls)] / static_cast<double>(spc);
        row.obfuscated_mean =
            depth_def_sum[static_cast<std::size_t>(cls)] / static_cast<double>(spc);
        row.delta_abs = row.obfuscated_mean - row.original_mean;
        row.delta_pct = row.original_mean > 0.0
                            ? 100.0 * row.delta_abs / row.original_mean
                            : 0.0;
        summary.depth_table.push_back(std::move(row));
    }

    if (cfg.retrain_adversary) {
        Dataset defended_data;
        defended_data.rows = total;
        defended_data.dim = static_cast<std::size_t>(feature_count(cfg.n_qubits));
        defended_data.class_names = names;
        defended_data.n_qubits = cfg.n_qubits;
        for (const PairOutcome& o : outcomes) {
            defended_data.features.insert(defended_data.features.end(),
                                          o.defended_features.begin(),
                                          o.defended_features.end());
            defended_data.labels.push_back(o.truth);
        }
        const SplitIndices split = stratified_split(
            defended_data.labels, split_fractions(), cfg.base_seed);
        TrainOptions opts;
        opts.epochs = static_cast<std::size_t>(cfg.epochs);
        opts.batch_size = static_cast<std::size_t>(cfg.batch_size);
        opts.lr = cfg.learning_rate;
        const TrainResult retrained =
            train(defended_data, split,
                  derive_seed(cfg.base_seed, {tag(SeedTag::Train), 0xDEFEULL}),
                  opts);
        const EvalReport retrained_report = evaluate(
            retrained.model, retrained.scaler, defended_data, split.test);
        summary.retrained_defended_accuracy = retrained_report.accuracy;
    }

    // Reports: JSON plus a text table in the original-vs-obfuscated layout.
    json j;
    j["undefended_accuracy"] = summary.undefended.accuracy;
    j["defended_accuracy"] = summary.defended.accuracy;
    j["instances_per_class"] = summary.instances_per_class;
    j["mean_depth_overhead_pct"] = summary.mean_overhead_pct;
    j["frac_depth_nondecreasing"] = summary.frac_depth_nondecreasing;
    j["undefended"] = eval_report_json(summary.undefended);
    j["defended"] = eval_report_json(summary.defended);
    j["depth_table"] = json::array();
    for (const DefenseClassDepth& row : summary.depth_table) {
        j["depth_table"].push_back({{"class", row.class_name},
                                    {"original_mean", row.original_mean},
                                    {"obfuscated_mean", row.obfuscated_mean},
                                    {"delta_abs", row.delta_abs},
                                    {"delta_pct", row.delta_pct},
                                    {"instances", row.instances}});
    }
    if (summary.retrained_defended_accuracy.has_value()) {
        j["retrained_defended_accuracy"] = *summary.retrained_defended_accuracy;
    }
    write_text_file(out_dir / "defense_report.json", j.dump(2) + "\n");

    std::ostringstream text;
    char line[160];
    std::snprintf(line, sizeof(line), "undefended accuracy: %.4f\n",
                  summary.undefended.accuracy);
    text << line;
    std::snprintf(line, sizeof(line), "defended accuracy:   %.4f\n",
                  summary.defended.accuracy);
    text << line;
    std::snprintf(line, sizeof(line), "mean depth overhead: %.2f%%\n\n",
                  summary.mean_overhead_pct);
    text << line;
    std::snprintf(line, sizeof(line), "%-12s %10s %12s %10s %8s\n", "class",
                  "original", "obfuscated", "delta", "delta%");
    text << line;
    text << std::string(56, '-') << "\n";
    for (const DefenseClassDepth& row : summary.depth_table) {
        std::snprintf(line, sizeof(line), "%-12s %10.1f %12.1f %+10.1f %7.1f%%\n",
                      row.class_name.c_str(), row.original_mean,
                      row.obfuscated_mean, row.delta_abs, row.delta_pct);
        text << line;
    }
    text << "\ndefended per-class metrics:\n"
         << eval_report_text(summary.defended);
    write_text_file(out_dir / "defense_report.txt", text.str());

    std::printf(
        "defense-eval: undefended %.4f -> defended %.4f, depth overhead %.2f%%\n",
        summary.undefended.accuracy, summary.defended.accuracy,
        summary.mean_overhead_pct);
    return summary;
}

std::vector<SuiteResult> cmd_verify(const ExperimentConfig& cfg) {
    VerifyOptions opts;
    opts.seed = derive_seed(cfg.base_seed, {tag(SeedTag::Verify)});
    const std::vector<SuiteResult> results = run_all_suites(opts);
    bool all_passed = true;
    for (const SuiteResult& r : results) {
        std::printf("%-28s trials=%-5d %s%s%s\n", r.name.c_str(), r.trials,
                    r.passed ? "PASS" : "FAIL", r.detail.empty() ? "" : "  ",
                    r.detail.c_str());
        all_passed = all_passed && r.passed;
    }
    if (!all_passed) {
        std::string failed;
        for (const SuiteResult& r : results) {
            if (!r.passed) {
                failed += (failed.empty() ? "" : ", ") + r.name + " (" +
                          r.detail + ")";
            }
        }
        throw VerifyError("verification failed: " + failed);
    }
    return results;
}

std::uint64_t cmd_defend(const DefendFileRequest& request) {
    Circuit encoding;
    Circuit pqc;
    if (!request.circuit_path.empty()) {
        if (!request.boundary.has_value()) {
            throw UsageError("defend: --boundary is required with --circuit");
        }
        const Circuit full = parse_json(read_text_file(request.circuit_path));
        const std::size_t boundary = *request.boundary;
        if (boundary > full.size()) {
            throw UsageError("defend: boundary " + std::to_string(boundary) +
                             " exceeds instruction count " +
                             std::to_string(full.size()));
        }
        encoding = Circuit(full.n_qubits());
        encoding.label = full.label;
        encoding.meta = full.meta;
        pqc = Circuit(full.n_qubits());
        for (std::size_t i = 0; i < full.size(); ++i) {
            if (i < boundary) {
                encoding.append(full.instructions()[i]);
            } else {
                pqc.append(full.instructions()[i]);
            }
        }
    } else {
        if (request.encoding_path.empty() || request.pqc_path.empty()) {
            throw UsageError(
                "defend: provide --encoding and --pqc, or --circuit with "
                "--boundary");
        }
        encoding = parse_json(read_text_file(request.encoding_path));
        pqc = parse_json(read_text_file(request.pqc_path));
    }

    const ObfuscationKey key = gen_key(encoding.n_qubits(), request.key_seed);
    const Circuit defended = defend(encoding, pqc, key);
    if (!request.out_json.empty()) {
        write_text_file(request.out_json, emit_json(defended) + "\n");
    }
    if (!request.out_qasm.empty()) {
        write_text_file(request.out_qasm, emit_qasm(defended));
    }
    std::printf("defend: key seed %llu\n",
                static_cast<unsigned long long>(key.seed));
    return key.seed;
}

}  // namespace qfp
