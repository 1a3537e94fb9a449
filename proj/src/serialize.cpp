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

#include "serialize.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace qfp {

namespace {

using json = nlohmann::ordered_json;

std::string instruction_context(std::size_t index) {
    return "instruction " + std::to_string(index);
}

void append_json_string(std::string& out, std::string_view text) {
    out += '"';
    for (char ch : text) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void append_angle(std::string& out, double value) {
    // 17 significant digits round-trip a double exactly.
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out += buf;
}

}  // namespace

std::string emit_json(const Circuit& c) {
    std::string out;
    out += "{\"n_qubits\":" + std::to_string(c.n_qubits()) + ",\"label\":";
    if (c.label.has_value()) {
        append_json_string(out, encoding_class_name(*c.label));
    } else {
        out += "null";
    }
    out += ",\"meta\":{";
    bool first = true;
    for (const auto& [key, value] : c.meta) {
        if (!first) {
            out += ',';
        }
        first = false;
        append_json_string(out, key);
        out += ':';
        append_json_string(out, value);
    }
    out += "},\"instructions\":[";
    first = true;
    for (const Instruction& inst : c.instructions()) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += "{\"kind\":";
        append_json_string(out, gate_name(inst.kind));
        out += ",\"qubits\":[";
        for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += std::to_string(inst.qubits[i]);
        }
        out += "],\"params\":[";
        for (std::size_t i = 0; i < inst.params.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            append_angle(out, inst.params[i]);
        }
        out += "]}";
    }
    out += "]}";
    return out;
}

Circuit parse_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("circuit JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ParseError("circuit JSON: top level must be an object");
    }
    if (!root.contains("n_qubits") || !root["n_qubits"].is_number_integer()) {
        throw ParseError("circuit JSON: missing integer field 'n_qubits'");
    }
    const int n_qubits = root["n_qubits"].get<int>();
    if (n_qubits < 1) {
        throw ParseError("circuit JSON: 'n_qubits' must be positive");
    }
    Circuit c(n_qubits);
    if (root.contains("label") && !root["label"].is_null()) {
        if (!root["label"].is_string()) {
            throw ParseError("circuit JSON: 'label' must be a string or null");
        }
        const auto cls = encoding_class_from_name(root["label"].get<std::string>());
        if (!cls.has_value()) {
            throw ParseError("circuit JSON: unknown label '" +
                             root["label"].get<std::string>() + "'");
        }
        c.label = cls;
    }
    if (root.contains("meta")) {
        if (!root["meta"].is_object()) {
            throw ParseError("circuit JSON: 'meta' must be an object");
        }
        for (const auto& [key, value] : root["meta"].items()) {
            if (!value.is_string()) {
                throw ParseError("circuit JSON: meta value for '" + key +
                                 "' must be a string");
            }
            c.meta[key] = value.get<std::string>();
        }
    }
    if (!root.contains("instructions") || !root["instructions"].is_array()) {
        throw ParseError("circuit JSON: missing array field 'instructions'");
    }
    std::size_t index = 0;
    for (const auto& j : root["instructions"]) {
        if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
            throw ParseError("circuit JSON: " + instruction_context(index) +
                             ": missing string field 'kind'");
        }
        const auto kind = gate_from_name(j["kind"].get<std::string>());
        if (!kind.has_value()) {
            throw ParseError("circuit JSON: " + instruction_context(index) +
                             ": unknown gate kind '" +
                             j["kind"].get<std::string>() + "'");
        }
        Instruction inst;
        inst.kind = *kind;
        if (!j.contains("qubits") || !j["qubits"].is_array()) {
            throw ParseError("circuit JSON: " + instruction_context(index) +
                             ": missing array field 'qubits'");
        }
        for (const auto& q : j["qubits"]) {
            if (!q.is_number_integer()) {
                throw ParseError("circuit JSON: " + instruction_context(index) +
                                 ": qubit indices must be integers");
            }
            inst.qubits.push_back(q.get<int>());
        }
        if (j.contains("params")) {
            if (!j["params"].is_array()) {
                throw ParseError("circuit JSON: " + instruction_context(index) +
                                 ": 'params' must be an array");
            }
            for (const auto& p : j["params"]) {
                if (!p.is_number()) {
                    throw ParseError("circuit JSON: " +
                                     instruction_context(index) +
                                     ": parameters must be numbers");
                }
                inst.params.push_back(p.get<double>());
            }
        }
        try {
            c.append(std::move(inst));
        } catch (const std::invalid_argument& e) {
            throw ParseError("circuit JSON: " + instruction_context(index) +
                             ": " + e.what());
        }
        ++index;
    }
    return c;
}

namespace {

std::string format_angle(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

struct QasmCursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;

    bool eof() const { return pos >= text.size(); }

    void skip_space_and_comments() {
        while (!eof()) {
            const char ch = text[pos];
            if (ch == '\n') {
                ++line;
                ++pos;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos;
            } else if (ch == '/' && pos + 1 < text.size() &&
                       text[pos + 1] == '/') {
                while (!eof() && text[pos] != '\n') {
                    ++pos;
                }
            } else {
                break;
            }
        }
    }

    /// Next statement up to ';', trimmed. Returns false at end of input.
    bool next_statement(std::string& out) {
        skip_space_and_comments();
        if (eof()) {
            return false;
        }
        std::string stmt;
        while (!eof() && text[pos] != ';') {
            if (text[pos] == '\n') {
                ++line;
                stmt += ' ';
            } else if (text[pos] == '/' && pos + 1 < text.size() &&
                       text[pos + 1] == '/') {
                while (!eof() && text[pos] != '\n') {
                    ++pos;
                }
                continue;
            } else {
                stmt += text[pos];
            }
            ++pos;
        }
        if (eof()) {
            throw ParseError("QASM line " + std::to_string(line) +
                             ": missing ';'");
        }
        ++pos;  // consume ';'
        // trim
        std::size_t b = stmt.find_first_not_of(" \t");
        std::size_t e = stmt.find_last_not_of(" \t");
        out = (b == std::string::npos) ? "" : stmt.substr(b, e - b + 1);
        return true;
    }
};

[[noreturn]] void qasm_fail(int line, const std::string& message) {
    throw ParseError("QASM line " + std::to_string(line) + ": " + message);
}

/// Splits "name(arg1,arg2) ops" or "name ops" into pieces.
struct QasmStatement {
    std::string name;
    std::vector<double> args;
    std::vector<int> qubits;
};

QasmStatement parse_gate_statement(const std::string& stmt, int line) {
    QasmStatement out;
    std::size_t i = 0;
    while (i < stmt.size() &&
           (std::isalnum(static_cast<unsigned char>(stmt[i])) || stmt[i] == '_')) {
        ++i;
    }
    out.name = stmt.substr(0, i);
    if (out.name.empty()) {
        qasm_fail(line, "expected a gate name");
    }
    if (i < stmt.size() && stmt[i] == '(') {
        const std::size_t close = stmt.find(')', i);
        if (close == std::string::npos) {
            qasm_fail(line, "missing ')'");
        }
        std::string args = stmt.substr(i + 1, close - i - 1);
        std::stringstream ss(args);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            const char* begin = piece.c_str();
            char* end = nullptr;
            const double value = std::strtod(begin, &end);
            while (end != nullptr && *end != '\0' &&
                   std::isspace(static_cast<unsigned char>(*end))) {
                ++end;
            }
            if (end == begin || end == nullptr || *end != '\0') {
                qasm_fail(line, "bad angle literal '" + piece +
                                    "' (numeric literals only)");
            }
            out.args.push_back(value);
        }
        i = close + 1;
    }
    // operands: q[idx] separated by ','
    std::string rest = stmt.substr(i);
    std::stringstream ss(rest);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        std::size_t b = piece.find_first_not_of(" \t");
        std::size_t e = piece.find_last_not_of(" \t");
        if (b == std::string::npos) {
            qasm_fail(line, "empty operand");
        }
        piece = piece.substr(b, e - b + 1);
        if (piece.size() < 4 || piece.compare(0, 2, "q[") != 0 ||
            piece.back() != ']') {
            qasm_fail(line, "bad operand '" + piece + "' (expected q[i])");
        }
        const std::string digits = piece.substr(2, piece.size() - 3);
        for (char ch : digits) {
            if (!std::isdigit(static_cast<unsigned char>(ch))) {
                qasm_fail(line, "bad qubit index in '" + piece + "'");
            }
        }
        out.qubits.push_back(std::atoi(digits.c_str()));
    }
    return out;
}

}  // namespace

std::string emit_qasm(const Circuit& c) {
    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.n_qubits()) + "];\n";
    for (const Instruction& inst : c.instructions()) {
        out += gate_qasm_name(inst.kind);
        if (!inst.params.empty()) {
            out += "(";
            for (std::size_t i = 0; i < inst.params.size(); ++i) {
                if (i > 0) {
                    out += ",";
                }
                out += format_angle(inst.params[i]);
            }
            out += ")";
        }
        out += " ";
        for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
            if (i > 0) {
                out += ",";
            }
            out += "q[" + std::to_string(inst.qubits[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

Circuit parse_qasm(std::string_view text) {
    QasmCursor cursor{text};
    std::string stmt;

    if (!cursor.next_statement(stmt) || stmt.compare(0, 8, "OPENQASM") != 0) {
        qasm_fail(cursor.line, "expected 'OPENQASM 2.0;' header");
    }
    if (stmt.find("2.0") == std::string::npos) {
        qasm_fail(cursor.line, "unsupported OPENQASM version in '" + stmt + "'");
    }

    int n_qubits = -1;
    Circuit circuit;
    bool have_reg = false;
    while (cursor.next_statement(stmt)) {
        if (stmt.empty()) {
            continue;
        }
        if (stmt.compare(0, 7, "include") == 0) {
            if (stmt.find("\"qelib1.inc\"") == std::string::npos) {
                qasm_fail(cursor.line, "unsupported include: " + stmt);
            }
            continue;
        }
        if (stmt.compare(0, 4, "qreg") == 0) {
            if (have_reg) {
                qasm_fail(cursor.line, "multiple qreg declarations");
            }
            const std::size_t open = stmt.find('[');
            const std::size_t close = stmt.find(']');
            if (open == std::string::npos || close == std::string::npos ||
                close <= open + 1 || stmt.find(" q[") == std::string::npos) {
                qasm_fail(cursor.line, "bad qreg declaration '" + stmt +
                                           "' (expected qreg q[n])");
            }
            n_qubits = std::atoi(stmt.substr(open + 1, close - open - 1).c_str());
            if (n_qubits < 1) {
                qasm_fail(cursor.line, "qreg size must be positive");
            }
            circuit = Circuit(n_qubits);
            have_reg = true;
            continue;
        }
        if (!have_reg) {
            qasm_fail(cursor.line, "gate statement before qreg declaration");
        }
        const QasmStatement parsed = parse_gate_statement(stmt, cursor.line);
        const auto kind = gate_from_qasm_name(parsed.name);
        if (!kind.has_value()) {
            qasm_fail(cursor.line, "unsupported gate '" + parsed.name + "'");
        }
        Instruction inst{*kind, parsed.qubits, parsed.args};
        try {
            circuit.append(std::move(inst));
        } catch (const std::invalid_argument& e) {
            qasm_fail(cursor.line, e.what());
        }
    }
    if (!have_reg) {
        throw ParseError("QASM: no qreg declaration found");
    }
    return circuit;
}

}  // namespace qfp
