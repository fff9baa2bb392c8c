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

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qftkit/dyadic.hpp"

namespace qftkit {

/// A builder or analysis was handed wires that do not fit the circuit.
struct StructuralError : std::logic_error {
    using std::logic_error::logic_error;
};

/// inverse() was asked to invert a circuit containing measurements.
struct NonInvertibleError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class WireKind : std::uint8_t { data, ancilla, classical };

struct Wire {
    std::uint32_t index = 0;
    WireKind kind = WireKind::data;
    bool operator==(const Wire&) const = default;
};

enum class GateKind : std::uint8_t { h, x, p, cp, cnot, ccx, measure };

enum class Basis : std::uint8_t { x, y, z };

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::h: return "h";
        case GateKind::x: return "x";
        case GateKind::p: return "p";
        case GateKind::cp: return "cp";
        case GateKind::cnot: return "cnot";
        case GateKind::ccx: return "ccx";
        case GateKind::measure: return "meas";
    }
    return "?";
}

/// One gate of the IR. Quantum operands live in `q[0..arity)`; for controlled gates the
/// controls come first and the target last. CP is symmetric and kept with q[0] < q[1].
struct Gate {
    GateKind kind = GateKind::h;
    std::array<std::uint32_t, 3> q{};
    DyadicAngle angle{};
    Basis basis = Basis::z;
    std::uint32_t cbit = 0;

    static Gate h(std::uint32_t t) { return Gate{GateKind::h, {t, 0, 0}}; }
    static Gate x(std::uint32_t t) { return Gate{GateKind::x, {t, 0, 0}}; }
    static Gate p(std::uint32_t t, DyadicAngle a) { return Gate{GateKind::p, {t, 0, 0}, a}; }
    static Gate cp(std::uint32_t a, std::uint32_t b, DyadicAngle theta) {
        if (b < a) {
            std::swap(a, b);
        }
        return Gate{GateKind::cp, {a, b, 0}, theta};
    }
    static Gate cnot(std::uint32_t c, std::uint32_t t) { return Gate{GateKind::cnot, {c, t, 0}}; }
    static Gate ccx(std::uint32_t c1, std::uint32_t c2, std::uint32_t t) {
        return Gate{GateKind::ccx, {c1, c2, t}};
    }
    static Gate measure(std::uint32_t t, Basis b, std::uint32_t out) {
        return Gate{GateKind::measure, {t, 0, 0}, {}, b, out};
    }

    std::size_t arity() const {
        switch (kind) {
            case GateKind::cp:
            case GateKind::cnot: return 2;
            case GateKind::ccx: return 3;
            default: return 1;
        }
    }
    std::span<const std::uint32_t> qubits() const { return {q.data(), arity()}; }
    std::uint32_t target() const { return q[arity() - 1]; }
    bool is_classical_reversible() const {
        return kind == GateKind::x || kind == GateKind::cnot || kind == GateKind::ccx;
    }

    Gate inverse() const {
        if (kind == GateKind::measure) {
            throw NonInvertibleError("measurement has no inverse");
        }
        Gate g = *this;
        g.angle = -angle;
        return g;
    }

    bool operator==(const Gate& o) const {
        if (kind != o.kind) {
            return false;
        }
        for (std::size_t i = 0; i < arity(); i++) {
            if (q[i] != o.q[i]) {
                return false;
            }
        }
        if (kind == GateKind::p || kind == GateKind::cp) {
            return angle == o.angle;
        }
        if (kind == GateKind::measure) {
            return basis == o.basis && cbit == o.cbit;
        }
        return true;
    }
};

struct Metrics {
    std::size_t size = 0;
    std::size_t depth = 0;
    std::size_t width = 0;
    std::map<std::string, std::size_t> gate_histogram;
};

/// Layered gate list over typed wires.
///
/// Quantum wires are numbered 0..width-1 with every data wire before every ancilla.
/// Classical wires have their own numbering. Gates are placed as soon as possible
/// (ASAP) when appended, so `layers()` is always the compacted schedule and
/// `gates()` keeps program order.
///
/// `inputs()` / `outputs()` name the wires that carry logical bit t of the input and
/// of the result. Every quantum wire outside `inputs()` starts in |0>, and every quantum
/// wire outside `outputs()` must end in |0>. Both default to the data wires in order.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::uint32_t data_qubits, std::string name = {}) : name_(std::move(name)) {
        for (std::uint32_t i = 0; i < data_qubits; i++) {
            add_data();
        }
    }

    std::uint32_t add_data() {
        if (num_ancilla_ != 0) {
            throw StructuralError("data wires must precede ancilla wires");
        }
        kinds_.push_back(WireKind::data);
        qfront_.push_back(0);
        num_data_++;
        return static_cast<std::uint32_t>(kinds_.size() - 1);
    }

    std::uint32_t add_ancilla() {
        kinds_.push_back(WireKind::ancilla);
        qfront_.push_back(0);
        num_ancilla_++;
        return static_cast<std::uint32_t>(kinds_.size() - 1);
    }

    std::vector<std::uint32_t> add_ancillas(std::size_t count) {
        std::vector<std::uint32_t> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; i++) {
            out.push_back(add_ancilla());
        }
        return out;
    }

    std::uint32_t add_classical() {
        cfront_.push_back(0);
        return static_cast<std::uint32_t>(cfront_.size() - 1);
    }

    std::uint32_t width() const { return static_cast<std::uint32_t>(kinds_.size()); }
    std::uint32_t num_data() const { return num_data_; }
    std::uint32_t num_ancilla() const { return num_ancilla_; }
    std::uint32_t num_classical() const { return static_cast<std::uint32_t>(cfront_.size()); }
    WireKind kind(std::uint32_t q) const { return kinds_.at(q); }
    Wire wire(std::uint32_t q) const { return {q, kind(q)}; }

    void append(Gate g) {
        validate(g);
        if (g.kind == GateKind::cp && g.q[1] < g.q[0]) {
            std::swap(g.q[0], g.q[1]);
        }
        std::uint32_t layer = 0;
        for (auto w : g.qubits()) {
            layer = std::max(layer, qfront_[w]);
        }
        if (g.kind == GateKind::measure) {
            layer = std::max(layer, cfront_[g.cbit]);
        }
        for (auto w : g.qubits()) {
            qfront_[w] = layer + 1;
        }
        if (g.kind == GateKind::measure) {
            cfront_[g.cbit] = layer + 1;
        }
        if (layer == layers_.size()) {
            layers_.emplace_back();
        }
        layers_[layer].push_back(static_cast<std::uint32_t>(gates_.size()));
        gates_.push_back(g);
    }

    void h(std::uint32_t t) { append(Gate::h(t)); }
    void x(std::uint32_t t) { append(Gate::x(t)); }
    void p(std::uint32_t t, DyadicAngle a) { append(Gate::p(t, a)); }
    void cp(std::uint32_t a, std::uint32_t b, DyadicAngle theta) { append(Gate::cp(a, b, theta)); }
    void cnot(std::uint32_t c, std::uint32_t t) { append(Gate::cnot(c, t)); }
    void ccx(std::uint32_t c1, std::uint32_t c2, std::uint32_t t) { append(Gate::ccx(c1, c2, t)); }
    void measure(std::uint32_t t, Basis b, std::uint32_t out) { append(Gate::measure(t, b, out)); }

    /// Appends the inverse of gates [begin, end) in reverse order.
    void append_inverse_of(std::size_t begin, std::size_t end) {
        if (begin > end || end > gates_.size()) {
            throw StructuralError("bad gate range");
        }
        for (std::size_t i = end; i-- > begin;) {
            append(gates_[i].inverse());
        }
    }

    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    std::size_t depth() const { return layers_.size(); }
    const std::vector<std::vector<std::uint32_t>>& layers() const { return layers_; }
    bool has_measurements() const {
        return std::any_of(gates_.begin(), gates_.end(),
                           [](const Gate& g) { return g.kind == GateKind::measure; });
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::vector<std::pair<std::string, std::string>>& params() const { return params_; }
    void set_param(const std::string& key, const std::string& value) {
        for (auto& [k, v] : params_) {
            if (k == key) {
                v = value;
                return;
            }
        }
        params_.emplace_back(key, value);
    }
    void set_param(const std::string& key, long long value) { set_param(key, std::to_string(value)); }
    std::optional<std::string> param(const std::string& key) const {
        for (const auto& [k, v] : params_) {
            if (k == key) {
                return v;
            }
        }
        return std::nullopt;
    }

    std::vector<std::uint32_t> inputs() const { return inputs_.empty() ? data_wires() : inputs_; }
    std::vector<std::uint32_t> outputs() const { return outputs_.empty() ? data_wires() : outputs_; }
    bool has_explicit_io() const { return !inputs_.empty() || !outputs_.empty(); }
    void set_inputs(std::vector<std::uint32_t> w) {
        check_io(w);
        inputs_ = std::move(w);
    }
    void set_outputs(std::vector<std::uint32_t> w) {
        check_io(w);
        outputs_ = std::move(w);
    }

    std::vector<std::uint32_t> data_wires() const {
        std::vector<std::uint32_t> out(num_data_);
        for (std::uint32_t i = 0; i < num_data_; i++) {
            out[i] = i;
        }
        return out;
    }

    /// Equal wires, metadata and layered schedule. Gates in one layer commute, so program
    /// order across a layer is not compared; within a layer gates are compared in order.
    bool operator==(const Circuit& o) const {
        if (kinds_ != o.kinds_ || cfront_.size() != o.cfront_.size() || layers_.size() != o.layers_.size() ||
            name_ != o.name_ || params_ != o.params_ || inputs() != o.inputs() || outputs() != o.outputs()) {
            return false;
        }
        for (std::size_t l = 0; l < layers_.size(); l++) {
            if (layers_[l].size() != o.layers_[l].size()) {
                return false;
            }
            for (std::size_t i = 0; i < layers_[l].size(); i++) {
                if (!(gates_[layers_[l][i]] == o.gates_[o.layers_[l][i]])) {
                    return false;
                }
            }
        }
        return true;
    }

  private:
    void validate(const Gate& g) const {
        auto qs = g.qubits();
        for (std::size_t i = 0; i < qs.size(); i++) {
            if (qs[i] >= kinds_.size()) {
                throw StructuralError("gate references unknown wire q" + std::to_string(qs[i]));
            }
            for (std::size_t j = 0; j < i; j++) {
                if (qs[i] == qs[j]) {
                    throw StructuralError("gate uses wire q" + std::to_string(qs[i]) + " twice");
                }
            }
        }
        if (g.kind == GateKind::measure && g.cbit >= cfront_.size()) {
            throw StructuralError("measurement writes unknown classical wire c" + std::to_string(g.cbit));
        }
    }

    void check_io(const std::vector<std::uint32_t>& w) const {
        std::vector<std::uint32_t> s = w;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw StructuralError("duplicate wire in io list");
        }
        if (!s.empty() && s.back() >= kinds_.size()) {
            throw StructuralError("io list names an unknown wire");
        }
    }

    std::vector<WireKind> kinds_;
    std::uint32_t num_data_ = 0;
    std::uint32_t num_ancilla_ = 0;
    std::vector<std::uint32_t> qfront_;
    std::vector<std::uint32_t> cfront_;
    std::vector<Gate> gates_;
    std::vector<std::vector<std::uint32_t>> layers_;
    std::string name_;
    std::vector<std::pair<std::string, std::string>> params_;
    std::vector<std::uint32_t> inputs_;
    std::vector<std::uint32_t> outputs_;
};

/// Wire map for compose(): entry i is the wire of `a` that wire i of `b` lands on, or
/// nullopt for an ancilla of `b` that should be freshly appended.
using WireMap = std::vector<std::optional<std::uint32_t>>;

/// Identity map for `b` onto its first width() wires.
inline WireMap identity_map(const Circuit& b) {
    WireMap m(b.width());
    for (std::uint32_t i = 0; i < b.width(); i++) {
        m[i] = i;
    }
    return m;
}

/// Appends every gate of `b` into `a` through `wire_map`; returns the final map used
/// (freshly allocated ancillas filled in). Classical wires of `b` are appended to `a`.
inline std::vector<std::uint32_t> append_circuit(Circuit& a, const Circuit& b, const WireMap& wire_map) {
    if (wire_map.size() != b.width()) {
        throw StructuralError("wire map size does not match circuit width");
    }
    std::vector<std::uint32_t> full(b.width());
    std::vector<bool> used(a.width(), false);
    for (std::uint32_t i = 0; i < b.width(); i++) {
        if (wire_map[i]) {
            std::uint32_t t = *wire_map[i];
            if (t >= a.width()) {
                throw StructuralError("wire map target q" + std::to_string(t) + " out of range");
            }
            if (used[t]) {
                throw StructuralError("wire map is not injective at q" + std::to_string(t));
            }
            used[t] = true;
            full[i] = t;
        } else if (b.kind(i) == WireKind::data) {
            throw StructuralError("data wire q" + std::to_string(i) + " left unmapped");
        }
    }
    for (std::uint32_t i = 0; i < b.width(); i++) {
        if (!wire_map[i]) {
            full[i] = a.add_ancilla();
        }
    }
    std::uint32_t cbase = a.num_classical();
    for (std::uint32_t i = 0; i < b.num_classical(); i++) {
        a.add_classical();
    }
    for (Gate g : b.gates()) {
        for (std::size_t k = 0; k < g.arity(); k++) {
            g.q[k] = full[g.q[k]];
        }
        if (g.kind == GateKind::cp && g.q[1] < g.q[0]) {
            std::swap(g.q[0], g.q[1]);
        }
        g.cbit += cbase;
        a.append(g);
    }
    return full;
}

/// Apply `a`, then `b` routed through `wire_map`; layers are re-compacted ASAP.
inline Circuit compose(const Circuit& a, const Circuit& b, const WireMap& wire_map) {
    Circuit out = a;
    append_circuit(out, b, wire_map);
    return out;
}

inline Circuit inverse(const Circuit& c) {
    Circuit out;
    for (std::uint32_t i = 0; i < c.num_data(); i++) {
        out.add_data();
    }
    for (std::uint32_t i = 0; i < c.num_ancilla(); i++) {
        out.add_ancilla();
    }
    for (std::uint32_t i = 0; i < c.num_classical(); i++) {
        out.add_classical();
    }
    const auto& gs = c.gates();
    for (std::size_t i = gs.size(); i-- > 0;) {
        out.append(gs[i].inverse());
    }
    out.set_name(c.name().empty() ? std::string{} : "inverse(" + c.name() + ")");
    for (const auto& [k, v] : c.params()) {
        out.set_param(k, v);
    }
    if (c.has_explicit_io()) {
        out.set_inputs(c.outputs());
        out.set_outputs(c.inputs());
    }
    return out;
}

inline Metrics metrics(const Circuit& c) {
    Metrics m;
    m.size = c.size();
    m.depth = c.depth();
    m.width = c.width();
    for (const auto& g : c.gates()) {
        m.gate_histogram[gate_name(g.kind)]++;
    }
    return m;
}

/// Input wires that output wire `out` can depend on, found by walking the layers backwards
/// through gate supports. Classical wires are ignored.
inline std::vector<std::uint32_t> light_cone(const Circuit& c, std::uint32_t out) {
    if (out >= c.width()) {
        throw StructuralError("light_cone: unknown wire q" + std::to_string(out));
    }
    std::vector<bool> in_cone(c.width(), false);
    in_cone[out] = true;
    const auto& layers = c.layers();
    for (std::size_t l = layers.size(); l-- > 0;) {
        for (auto gi : layers[l]) {
            const Gate& g = c.gates()[gi];
            auto qs = g.qubits();
            bool touches = std::any_of(qs.begin(), qs.end(), [&](std::uint32_t w) { return in_cone[w]; });
            if (touches) {
                for (auto w : qs) {
                    in_cone[w] = true;
                }
            }
        }
    }
    std::vector<std::uint32_t> cone;
    for (std::uint32_t w = 0; w < c.width(); w++) {
        if (in_cone[w]) {
            cone.push_back(w);
        }
    }
    return cone;
}

/// Rewrites X, CNOT and Toffoli over the primitive set {H, P, CP}.
///
/// X = H P(1/2) H, CNOT = H(t) CP(1/2) H(t), and Toffoli uses the controlled-sqrt(X)
/// construction CV(c2,t) CNOT(c1,c2) CV^dag(c2,t) CNOT(c1,c2) CV(c1,t) with
/// CV(c,t) = H(t) CP(c,t,1/4) H(t); adjacent H pairs are not cancelled.
inline Circuit lower_to_primitive(const Circuit& c) {
    Circuit out;
    for (std::uint32_t i = 0; i < c.num_data(); i++) {
        out.add_data();
    }
    for (std::uint32_t i = 0; i < c.num_ancilla(); i++) {
        out.add_ancilla();
    }
    for (std::uint32_t i = 0; i < c.num_classical(); i++) {
        out.add_classical();
    }
    const DyadicAngle half = DyadicAngle::from(1, 1);
    const DyadicAngle quarter = DyadicAngle::from(1, 2);
    auto cnot = [&](std::uint32_t ctl, std::uint32_t t) {
        out.h(t);
        out.cp(ctl, t, half);
        out.h(t);
    };
    auto cv = [&](std::uint32_t ctl, std::uint32_t t, DyadicAngle a) {
        out.h(t);
        out.cp(ctl, t, a);
        out.h(t);
    };
    for (const auto& g : c.gates()) {
        switch (g.kind) {
            case GateKind::x:
                out.h(g.q[0]);
                out.p(g.q[0], half);
                out.h(g.q[0]);
                break;
            case GateKind::cnot: cnot(g.q[0], g.q[1]); break;
            case GateKind::ccx:
                cv(g.q[1], g.q[2], quarter);
                cnot(g.q[0], g.q[1]);
                cv(g.q[1], g.q[2], -quarter);
                cnot(g.q[0], g.q[1]);
                cv(g.q[0], g.q[2], quarter);
                break;
            default: out.append(g); break;
        }
    }
    out.set_name(c.name());
    for (const auto& [k, v] : c.params()) {
        out.set_param(k, v);
    }
    if (c.has_explicit_io()) {
        out.set_inputs(c.inputs());
        out.set_outputs(c.outputs());
    }
    return out;
}

}  // namespace qftkit
