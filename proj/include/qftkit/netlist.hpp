// Copyright 2026 The qftkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text netlist format, one gate per line with layers separated by "---":
//
//   qubits <n> ancilla <m> classical <k>
//   h <q> | x <q> | p <angle> <q> | cp <angle> <q1> <q2> | cnot <c> <t> | ccx <c1> <c2> <t>
//   meas <x|y|z> <q> -> c<i>
//
// Angles are written "a/D" (D a power of two), "a/2^b" or "0". Lines starting with '#'
// are comments; "#! name", "#! param", "#! inputs" and "#! outputs" comments carry
// circuit metadata and are read back by decode_netlist.

#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qftkit/circuit.hpp"

namespace qftkit {

struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t line_number, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + msg), line(line_number) {}
};

inline std::string encode_netlist(const Circuit& c) {
    std::ostringstream out;
    if (!c.name().empty()) {
        out << "#! name " << c.name() << "\n";
    }
    for (const auto& [k, v] : c.params()) {
        out << "#! param " << k << " " << v << "\n";
    }
    if (c.has_explicit_io()) {
        out << "#! inputs";
        for (auto w : c.inputs()) {
            out << " " << w;
        }
        out << "\n#! outputs";
        for (auto w : c.outputs()) {
            out << " " << w;
        }
        out << "\n";
    }
    out << "qubits " << c.num_data() << " ancilla " << c.num_ancilla() << " classical " << c.num_classical()
        << "\n";
    const auto& layers = c.layers();
    for (std::size_t l = 0; l < layers.size(); l++) {
        if (l > 0) {
            out << "---\n";
        }
        for (auto gi : layers[l]) {
            const Gate& g = c.gates()[gi];
            switch (g.kind) {
                case GateKind::h: out << "h " << g.q[0]; break;
                case GateKind::x: out << "x " << g.q[0]; break;
                case GateKind::p: out << "p " << g.angle.str() << " " << g.q[0]; break;
                case GateKind::cp: out << "cp " << g.angle.str() << " " << g.q[0] << " " << g.q[1]; break;
                case GateKind::cnot: out << "cnot " << g.q[0] << " " << g.q[1]; break;
                case GateKind::ccx: out << "ccx " << g.q[0] << " " << g.q[1] << " " << g.q[2]; break;
                case GateKind::measure:
                    out << "meas " << (g.basis == Basis::x ? 'x' : g.basis == Basis::y ? 'y' : 'z') << " "
                        << g.q[0] << " -> c" << g.cbit;
                    break;
            }
            out << "\n";
        }
    }
    return out.str();
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            i++;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            j++;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

inline std::uint32_t parse_index(std::string_view tok, std::size_t line) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a wire index, got '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace detail

inline Circuit decode_netlist(std::string_view text) {
    Circuit c;
    bool have_header = false;
    std::vector<std::uint32_t> inputs;
    std::vector<std::uint32_t> outputs;
    std::vector<bool> layer_used;
    std::vector<bool> layer_cused;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        line_no++;

        if (line.starts_with("#!")) {
            auto toks = detail::split_ws(line.substr(2));
            if (toks.empty()) {
                continue;
            }
            if (toks[0] == "name" && toks.size() >= 2) {
                c.set_name(std::string(toks[1]));
            } else if (toks[0] == "param" && toks.size() >= 3) {
                c.set_param(std::string(toks[1]), std::string(toks[2]));
            } else if (toks[0] == "inputs" || toks[0] == "outputs") {
                auto& dst = toks[0] == "inputs" ? inputs : outputs;
                for (std::size_t i = 1; i < toks.size(); i++) {
                    dst.push_back(detail::parse_index(toks[i], line_no));
                }
            }
            continue;
        }
        auto hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto toks = detail::split_ws(line);
        if (toks.empty()) {
            continue;
        }
        if (toks[0] == "qubits") {
            if (have_header || toks.size() != 6 || toks[2] != "ancilla" || toks[4] != "classical") {
                throw ParseError(line_no, "malformed header, expected 'qubits <n> ancilla <m> classical <k>'");
            }
            auto n = detail::parse_index(toks[1], line_no);
            auto m = detail::parse_index(toks[3], line_no);
            auto k = detail::parse_index(toks[5], line_no);
            for (std::uint32_t i = 0; i < n; i++) {
                c.add_data();
            }
            for (std::uint32_t i = 0; i < m; i++) {
                c.add_ancilla();
            }
            for (std::uint32_t i = 0; i < k; i++) {
                c.add_classical();
            }
            layer_used.assign(c.width(), false);
            layer_cused.assign(c.num_classical(), false);
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw ParseError(line_no, "gate before 'qubits' header");
        }
        if (toks[0] == "---") {
            std::fill(layer_used.begin(), layer_used.end(), false);
            std::fill(layer_cused.begin(), layer_cused.end(), false);
            continue;
        }

        auto need = [&](std::size_t count) {
            if (toks.size() != count) {
                throw ParseError(line_no, "wrong operand count for '" + std::string(toks[0]) + "'");
            }
        };
        auto angle = [&](std::string_view tok) {
            try {
                return DyadicAngle::parse(tok);
            } catch (const ValueError& e) {
                throw ValueError("line " + std::to_string(line_no) + ": " + e.what());
            }
        };
        auto idx = [&](std::size_t i) { return detail::parse_index(toks[i], line_no); };

        Gate g;
        std::string_view op = toks[0];
        if (op == "h") {
            need(2);
            g = Gate::h(idx(1));
        } else if (op == "x") {
            need(2);
            g = Gate::x(idx(1));
        } else if (op == "p") {
            need(3);
            g = Gate::p(idx(2), angle(toks[1]));
        } else if (op == "cp") {
            need(4);
            g = Gate::cp(idx(2), idx(3), angle(toks[1]));
        } else if (op == "cnot") {
            need(3);
            g = Gate::cnot(idx(1), idx(2));
        } else if (op == "ccx") {
            need(4);
            g = Gate::ccx(idx(1), idx(2), idx(3));
        } else if (op == "meas") {
            need(5);
            Basis b;
            if (toks[1] == "x") {
                b = Basis::x;
            } else if (toks[1] == "y") {
                b = Basis::y;
            } else if (toks[1] == "z") {
                b = Basis::z;
            } else {
                throw ParseError(line_no, "unknown measurement basis '" + std::string(toks[1]) + "'");
            }
            if (toks[3] != "->" || toks[4].size() < 2 || toks[4][0] != 'c') {
                throw ParseError(line_no, "expected '-> c<i>'");
            }
            g = Gate::measure(idx(2), b, detail::parse_index(toks[4].substr(1), line_no));
        } else {
            throw ParseError(line_no, "unknown gate '" + std::string(op) + "'");
        }

        for (auto w : g.qubits()) {
            if (w >= c.width()) {
                throw ParseError(line_no, "wire q" + std::to_string(w) + " out of range");
            }
            if (layer_used[w]) {
                throw ParseError(line_no, "wire q" + std::to_string(w) + " used twice in one layer");
            }
            layer_used[w] = true;
        }
        if (g.kind == GateKind::measure) {
            if (g.cbit >= c.num_classical()) {
                throw ParseError(line_no, "classical wire c" + std::to_string(g.cbit) + " out of range");
            }
            if (layer_cused[g.cbit]) {
                throw ParseError(line_no, "classical wire used twice in one layer");
            }
            layer_cused[g.cbit] = true;
        }
        try {
            c.append(g);
        } catch (const StructuralError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!have_header) {
        throw ParseError(line_no, "missing 'qubits' header");
    }
    try {
        if (!inputs.empty()) {
            c.set_inputs(std::move(inputs));
        }
        if (!outputs.empty()) {
            c.set_outputs(std::move(outputs));
        }
    } catch (const StructuralError& e) {
        throw ParseError(0, e.what());
    }
    return c;
}

}  // namespace qftkit
