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

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <unordered_map>
#include <vector>

#include "qftkit/circuit.hpp"

namespace qftkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// The requested simulation does not fit the configured qubit caps.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A simulation produced a state that violates an invariant (norm drift, dirty ancilla).
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::uint32_t max_statevector_qubits = 26;
constexpr std::uint32_t max_unitary_qubits = 12;

/// Deterministic double in [0, 1) from a 64-bit generator.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Seed for the i-th independent sub-run derived from a parent seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline Complex phase_of(DyadicAngle a) { return std::polar(1.0, a.radians()); }

/// Dense 2^q amplitude vector; bit i of a basis index is wire i.
struct StateVector {
    std::uint32_t q = 0;
    std::vector<Complex> amplitudes;

    static StateVector basis(std::uint32_t qubits, std::uint64_t index) {
        if (qubits > max_statevector_qubits) {
            throw CapacityError("statevector of " + std::to_string(qubits) + " qubits exceeds cap of " +
                                std::to_string(max_statevector_qubits));
        }
        StateVector s;
        s.q = qubits;
        s.amplitudes.assign(std::size_t{1} << qubits, Complex{});
        s.amplitudes.at(index) = 1.0;
        return s;
    }

    static StateVector from(std::vector<Complex> amps) {
        StateVector s;
        std::size_t n = amps.size();
        if (n == 0 || (n & (n - 1)) != 0) {
            throw StructuralError("amplitude count must be a power of two");
        }
        while ((std::size_t{1} << s.q) < n) {
            s.q++;
        }
        if (s.q > max_statevector_qubits) {
            throw CapacityError("statevector exceeds qubit cap");
        }
        s.amplitudes = std::move(amps);
        return s;
    }

    double norm() const {
        double t = 0;
        for (const auto& a : amplitudes) {
            t += std::norm(a);
        }
        return std::sqrt(t);
    }

    Complex inner(const StateVector& other) const {
        Complex t{};
        for (std::size_t i = 0; i < amplitudes.size(); i++) {
            t += std::conj(amplitudes[i]) * other.amplitudes[i];
        }
        return t;
    }
};

/// Result of apply_circuit: final state, classical wire values, and the seed used.
struct SimRun {
    StateVector final;
    std::map<std::uint32_t, int> classical_record;
    std::uint64_t seed = 0;
};

namespace detail {

inline void dense_h(std::vector<Complex>& a, std::uint32_t t) {
    const double r = M_SQRT1_2;
    std::size_t bit = std::size_t{1} << t;
    for (std::size_t i = 0; i < a.size(); i++) {
        if (i & bit) {
            continue;
        }
        Complex u = a[i], v = a[i | bit];
        a[i] = (u + v) * r;
        a[i | bit] = (u - v) * r;
    }
}

inline void dense_phase(std::vector<Complex>& a, std::size_t mask, Complex ph) {
    for (std::size_t i = 0; i < a.size(); i++) {
        if ((i & mask) == mask) {
            a[i] *= ph;
        }
    }
}

inline void dense_flip(std::vector<Complex>& a, std::size_t ctl_mask, std::uint32_t t) {
    std::size_t bit = std::size_t{1} << t;
    for (std::size_t i = 0; i < a.size(); i++) {
        if ((i & bit) == 0 && (i & ctl_mask) == ctl_mask) {
            std::swap(a[i], a[i | bit]);
        }
    }
}

inline int dense_measure_z(std::vector<Complex>& a, std::uint32_t t, std::mt19937_64& rng) {
    std::size_t bit = std::size_t{1} << t;
    double p1 = 0, total = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        double w = std::norm(a[i]);
        total += w;
        if (i & bit) {
            p1 += w;
        }
    }
    int outcome = uniform01(rng) * total < p1 ? 1 : 0;
    double keep = outcome ? p1 : total - p1;
    double scale = 1.0 / std::sqrt(keep);
    for (std::size_t i = 0; i < a.size(); i++) {
        bool set = (i & bit) != 0;
        a[i] = set == static_cast<bool>(outcome) ? a[i] * scale : Complex{};
    }
    return outcome;
}

}  // namespace detail

/// Applies one non-measurement gate to a dense state.
inline void apply_gate(StateVector& s, const Gate& g) {
    auto& a = s.amplitudes;
    auto bit = [](std::uint32_t w) { return std::size_t{1} << w; };
    switch (g.kind) {
        case GateKind::h: detail::dense_h(a, g.q[0]); break;
        case GateKind::x: detail::dense_flip(a, 0, g.q[0]); break;
        case GateKind::p: detail::dense_phase(a, bit(g.q[0]), phase_of(g.angle)); break;
        case GateKind::cp: detail::dense_phase(a, bit(g.q[0]) | bit(g.q[1]), phase_of(g.angle)); break;
        case GateKind::cnot: detail::dense_flip(a, bit(g.q[0]), g.q[1]); break;
        case GateKind::ccx: detail::dense_flip(a, bit(g.q[0]) | bit(g.q[1]), g.q[2]); break;
        case GateKind::measure: throw StructuralError("apply_gate: measurement needs a generator");
    }
}

/// Simulates `c` layer by layer on a dense state. X/Y measurements rotate into the Z
/// basis, sample by the Born rule, and rotate back, so the measured wire is left in the
/// observed basis state. Outcome 0 means |+> for X and (|0>+i|1>)/sqrt2 for Y.
inline SimRun apply_circuit(const Circuit& c, StateVector input, std::uint64_t seed) {
    if (c.width() > max_statevector_qubits) {
        throw CapacityError("circuit width " + std::to_string(c.width()) + " exceeds statevector cap");
    }
    if (input.q != c.width()) {
        throw StructuralError("input has " + std::to_string(input.q) + " qubits, circuit has " +
                              std::to_string(c.width()));
    }
    SimRun run;
    run.seed = seed;
    std::mt19937_64 rng(seed);
    const DyadicAngle quarter = DyadicAngle::from(1, 2);
    for (const auto& layer : c.layers()) {
        for (auto gi : layer) {
            const Gate& g = c.gates()[gi];
            if (g.kind != GateKind::measure) {
                apply_gate(input, g);
                continue;
            }
            auto& a = input.amplitudes;
            std::uint32_t t = g.q[0];
            if (g.basis == Basis::y) {
                detail::dense_phase(a, std::size_t{1} << t, phase_of(-quarter));
            }
            if (g.basis != Basis::z) {
                detail::dense_h(a, t);
            }
            int outcome = detail::dense_measure_z(a, t, rng);
            if (g.basis != Basis::z) {
                detail::dense_h(a, t);
            }
            if (g.basis == Basis::y) {
                detail::dense_phase(a, std::size_t{1} << t, phase_of(quarter));
            }
            run.classical_record[g.cbit] = outcome;
        }
    }
    if (!c.has_measurements()) {
        double drift = std::abs(input.norm() - 1.0);
        if (drift > 1e-9) {
            throw ConsistencyError("norm drift " + std::to_string(drift));
        }
    }
    run.final = std::move(input);
    return run;
}

/// Sparse state over an arbitrary number of wires: a list of (basis bits, amplitude)
/// terms with distinct keys. Classical reversible gates permute keys in place, so wide
/// arithmetic circuits on few basis terms are cheap.
class SparseState {
  public:
    using Key = std::vector<std::uint64_t>;
    struct Term {
        Key key;
        Complex amp;
    };

    explicit SparseState(std::uint32_t width) : width_(width), words_((width + 63) / 64) {}

    /// |bits> where bit t of `value` goes to wire `wires[t]`; other wires are 0.
    static SparseState basis(std::uint32_t width, const std::vector<std::uint32_t>& wires, std::uint64_t value) {
        SparseState s(width);
        Key k(s.words_, 0);
        for (std::size_t t = 0; t < wires.size(); t++) {
            if ((value >> t) & 1) {
                set_bit(k, wires[t], true);
            }
        }
        s.terms_.push_back({std::move(k), 1.0});
        return s;
    }

    /// Places a dense amplitude vector over `wires` (index bit t = wire wires[t]).
    static SparseState from_dense(std::uint32_t width, const std::vector<std::uint32_t>& wires,
                                  const std::vector<Complex>& amps) {
        SparseState s(width);
        for (std::size_t i = 0; i < amps.size(); i++) {
            if (std::norm(amps[i]) == 0) {
                continue;
            }
            Key k(s.words_, 0);
            for (std::size_t t = 0; t < wires.size(); t++) {
                if ((i >> t) & 1) {
                    set_bit(k, wires[t], true);
                }
            }
            s.terms_.push_back({std::move(k), amps[i]});
        }
        return s;
    }

    static bool get_bit(const Key& k, std::uint32_t w) { return (k[w >> 6] >> (w & 63)) & 1; }
    static void set_bit(Key& k, std::uint32_t w, bool v) {
        std::uint64_t m = std::uint64_t{1} << (w & 63);
        k[w >> 6] = v ? (k[w >> 6] | m) : (k[w >> 6] & ~m);
    }

    std::uint32_t width() const { return width_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::vector<Term>& terms() { return terms_; }

    void apply(const Gate& g) {
        switch (g.kind) {
            case GateKind::h: apply_h(g.q[0]); break;
            case GateKind::x:
                for (auto& t : terms_) {
                    flip(t.key, g.q[0]);
                }
                break;
            case GateKind::cnot:
                for (auto& t : terms_) {
                    if (get_bit(t.key, g.q[0])) {
                        flip(t.key, g.q[1]);
                    }
                }
                break;
            case GateKind::ccx:
                for (auto& t : terms_) {
                    if (get_bit(t.key, g.q[0]) && get_bit(t.key, g.q[1])) {
                        flip(t.key, g.q[2]);
                    }
                }
                break;
            case GateKind::p: {
                Complex ph = phase_of(g.angle);
                for (auto& t : terms_) {
                    if (get_bit(t.key, g.q[0])) {
                        t.amp *= ph;
                    }
                }
                break;
            }
            case GateKind::cp: {
                Complex ph = phase_of(g.angle);
                for (auto& t : terms_) {
                    if (get_bit(t.key, g.q[0]) && get_bit(t.key, g.q[1])) {
                        t.amp *= ph;
                    }
                }
                break;
            }
            case GateKind::measure: throw StructuralError("SparseState::apply: use measure()");
        }
    }

    int measure_z(std::uint32_t w, std::mt19937_64& rng) {
        double p1 = 0, total = 0;
        for (const auto& t : terms_) {
            double p = std::norm(t.amp);
            total += p;
            if (get_bit(t.key, w)) {
                p1 += p;
            }
        }
        int outcome = uniform01(rng) * total < p1 ? 1 : 0;
        double scale = 1.0 / std::sqrt(outcome ? p1 : total - p1);
        std::vector<Term> kept;
        for (auto& t : terms_) {
            if (get_bit(t.key, w) == static_cast<bool>(outcome)) {
                kept.push_back({std::move(t.key), t.amp * scale});
            }
        }
        terms_ = std::move(kept);
        return outcome;
    }

    int measure(std::uint32_t w, Basis b, std::mt19937_64& rng) {
        const DyadicAngle quarter = DyadicAngle::from(1, 2);
        if (b == Basis::y) {
            apply(Gate::p(w, -quarter));
        }
        if (b != Basis::z) {
            apply_h(w);
        }
        int outcome = measure_z(w, rng);
        if (b != Basis::z) {
            apply_h(w);
        }
        if (b == Basis::y) {
            apply(Gate::p(w, quarter));
        }
        return outcome;
    }

    double norm() const {
        double t = 0;
        for (const auto& term : terms_) {
            t += std::norm(term.amp);
        }
        return std::sqrt(t);
    }

    /// Amplitudes over `wires` for terms whose other wires are all 0; `leak` receives the
    /// squared norm of everything else.
    std::vector<Complex> project(const std::vector<std::uint32_t>& wires, double* leak = nullptr) const {
        if (wires.size() > max_statevector_qubits) {
            throw CapacityError("projection onto too many wires");
        }
        std::vector<Complex> out(std::size_t{1} << wires.size());
        Key mask(words_, ~std::uint64_t{0});
        for (auto w : wires) {
            set_bit(mask, w, false);
        }
        double leaked = 0;
        for (const auto& t : terms_) {
            bool clean = true;
            for (std::size_t i = 0; i < words_; i++) {
                std::uint64_t valid = (i + 1) * 64 <= width_ ? ~std::uint64_t{0}
                                                             : ((std::uint64_t{1} << (width_ - i * 64)) - 1);
                if (t.key[i] & mask[i] & valid) {
                    clean = false;
                    break;
                }
            }
            if (!clean) {
                leaked += std::norm(t.amp);
                continue;
            }
            std::size_t idx = 0;
            for (std::size_t b = 0; b < wires.size(); b++) {
                if (get_bit(t.key, wires[b])) {
                    idx |= std::size_t{1} << b;
                }
            }
            out[idx] += t.amp;
        }
        if (leak) {
            *leak = leaked;
        }
        return out;
    }

    /// Probability of each value read from `wires` (bit t = wire wires[t]).
    std::map<std::uint64_t, double> marginal(const std::vector<std::uint32_t>& wires) const {
        std::map<std::uint64_t, double> out;
        for (const auto& t : terms_) {
            std::uint64_t v = 0;
            for (std::size_t b = 0; b < wires.size(); b++) {
                if (get_bit(t.key, wires[b])) {
                    v |= std::uint64_t{1} << b;
                }
            }
            out[v] += std::norm(t.amp);
        }
        return out;
    }

  private:
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = 0x243F6A8885A308D3ull;
            for (auto w : k) {
                h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            }
            return static_cast<std::size_t>(h);
        }
    };

    static void flip(Key& k, std::uint32_t w) { k[w >> 6] ^= std::uint64_t{1} << (w & 63); }

    void apply_h(std::uint32_t w) {
        const double r = M_SQRT1_2;
        std::unordered_map<Key, std::size_t, KeyHash> index;
        std::vector<Term> out;
        out.reserve(terms_.size() * 2);
        index.reserve(terms_.size() * 2);
        auto add = [&](Key&& k, Complex a) {
            auto it = index.find(k);
            if (it == index.end()) {
                index.emplace(k, out.size());
                out.push_back({std::move(k), a});
            } else {
                out[it->second].amp += a;
            }
        };
        for (auto& t : terms_) {
            bool b = get_bit(t.key, w);
            Key k0 = t.key;
            set_bit(k0, w, false);
            Key k1 = std::move(t.key);
            set_bit(k1, w, true);
            add(std::move(k0), t.amp * r);
            add(std::move(k1), b ? -t.amp * r : t.amp * r);
        }
        std::erase_if(out, [](const Term& t) { return std::norm(t.amp) < 1e-30; });
        terms_ = std::move(out);
    }

    std::uint32_t width_;
    std::size_t words_;
    std::vector<Term> terms_;
};

/// Runs `c` on a sparse state. Measurements record into `record` when given.
inline void apply_sparse(const Circuit& c, SparseState& s, std::uint64_t seed = 0,
                         std::map<std::uint32_t, int>* record = nullptr) {
    if (s.width() != c.width()) {
        throw StructuralError("sparse state width does not match circuit");
    }
    std::mt19937_64 rng(seed);
    for (const auto& layer : c.layers()) {
        for (auto gi : layer) {
            const Gate& g = c.gates()[gi];
            if (g.kind == GateKind::measure) {
                int o = s.measure(g.q[0], g.basis, rng);
                if (record) {
                    (*record)[g.cbit] = o;
                }
            } else {
                s.apply(g);
            }
        }
    }
}

/// Evaluates a circuit of X / CNOT / Toffoli gates on classical bits, in place.
inline void evaluate_classical(const Circuit& c, std::vector<bool>& bits) {
    if (bits.size() != c.width()) {
        throw StructuralError("bit vector width does not match circuit");
    }
    for (const auto& g : c.gates()) {
        switch (g.kind) {
            case GateKind::x: bits[g.q[0]] = !bits[g.q[0]]; break;
            case GateKind::cnot:
                if (bits[g.q[0]]) {
                    bits[g.q[1]] = !bits[g.q[1]];
                }
                break;
            case GateKind::ccx:
                if (bits[g.q[0]] && bits[g.q[1]]) {
                    bits[g.q[2]] = !bits[g.q[2]];
                }
                break;
            default: throw StructuralError("evaluate_classical: non-classical gate " + std::string(gate_name(g.kind)));
        }
    }
}

/// Writes `value` into `wires` (bit t -> wires[t]).
inline void write_register(std::vector<bool>& bits, const std::vector<std::uint32_t>& wires, std::uint64_t value) {
    for (std::size_t t = 0; t < wires.size(); t++) {
        bits[wires[t]] = (value >> t) & 1;
    }
}

inline std::uint64_t read_register(const std::vector<bool>& bits, const std::vector<std::uint32_t>& wires) {
    std::uint64_t v = 0;
    for (std::size_t t = 0; t < wires.size(); t++) {
        if (bits[wires[t]]) {
            v |= std::uint64_t{1} << t;
        }
    }
    return v;
}

/// Output of `c` on basis input `x` (bit t on inputs()[t]) as amplitudes over outputs();
/// `leak` receives the squared norm left on non-output wires.
inline std::vector<Complex> output_column(const Circuit& c, std::uint64_t x, double* leak = nullptr) {
    auto ins = c.inputs();
    auto outs = c.outputs();
    if (c.width() <= 20) {
        std::uint64_t index = 0;
        for (std::size_t t = 0; t < ins.size(); t++) {
            if ((x >> t) & 1) {
                index |= std::uint64_t{1} << ins[t];
            }
        }
        auto run = apply_circuit(c, StateVector::basis(c.width(), index), 0);
        std::vector<std::uint32_t> all(c.width());
        for (std::uint32_t i = 0; i < c.width(); i++) {
            all[i] = i;
        }
        return SparseState::from_dense(c.width(), all, run.final.amplitudes).project(outs, leak);
    }
    SparseState s = SparseState::basis(c.width(), ins, x);
    apply_sparse(c, s);
    return s.project(outs, leak);
}

/// Block of the circuit's action from inputs() to outputs() with every other wire held
/// at |0>. Also reports the worst per-column leakage norm.
inline Matrix restricted_block(const Circuit& c, double* max_leak = nullptr) {
    if (c.has_measurements()) {
        throw NonInvertibleError("circuit contains measurements");
    }
    auto ins = c.inputs();
    auto outs = c.outputs();
    if (ins.size() > max_unitary_qubits || outs.size() > max_unitary_qubits) {
        throw CapacityError("unitary extraction limited to " + std::to_string(max_unitary_qubits) + " qubits");
    }
    std::size_t cols = std::size_t{1} << ins.size();
    std::size_t rows = std::size_t{1} << outs.size();
    Matrix u(rows, cols);
    double worst = 0;
    for (std::size_t x = 0; x < cols; x++) {
        double leak = 0;
        auto col = output_column(c, x, &leak);
        worst = std::max(worst, std::sqrt(leak));
        for (std::size_t r = 0; r < rows; r++) {
            u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(x)) = col[r];
        }
    }
    if (max_leak) {
        *max_leak = worst;
    }
    return u;
}

/// Unitary of a measurement-free circuit from inputs() to outputs(), built column by
/// column from basis-state simulations. Fails if any ancilla is left dirty or the
/// result is not unitary to 1e-9.
inline Matrix extract_unitary(const Circuit& c) {
    double leak = 0;
    Matrix u = restricted_block(c, &leak);
    if (leak > 1e-9) {
        throw ConsistencyError("ancilla left dirty (leak " + std::to_string(leak) + ")");
    }
    if (u.rows() != u.cols()) {
        throw ConsistencyError("input and output registers differ in size");
    }
    Matrix gram = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    if (gram.cwiseAbs().maxCoeff() > 1e-9) {
        throw ConsistencyError("extracted matrix is not unitary");
    }
    return u;
}

/// F_m with entry (x, y) = e^{2 pi i x y / m} / sqrt(m).
inline Matrix dft_reference(std::size_t m) {
    if (m == 0 || m > 4096) {
        throw CapacityError("dft_reference supports 1 <= m <= 4096");
    }
    Matrix f(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t x = 0; x < m; x++) {
        for (std::size_t y = 0; y < m; y++) {
            std::size_t e = (x * y) % m;
            f(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                std::polar(scale, 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(m));
        }
    }
    return f;
}

/// Largest singular value. SVD up to 1024 columns, power iteration on A^H A beyond.
inline double spectral_norm(const Matrix& a) {
    if (a.size() == 0) {
        return 0;
    }
    if (a.cols() <= 1024 && a.rows() <= 1024) {
        Eigen::BDCSVD<Matrix> svd(a);
        return svd.singularValues()(0);
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
    double lambda = 0;
    for (int it = 0; it < 2000; it++) {
        Eigen::VectorXcd w = a.adjoint() * (a * v);
        double nw = w.norm();
        if (nw == 0) {
            return 0;
        }
        v = w / nw;
        if (std::abs(nw - lambda) < 1e-15 * std::max(1.0, nw)) {
            lambda = nw;
            break;
        }
        lambda = nw;
    }
    return std::sqrt(lambda);
}

enum class DistanceMode { exact, basis_probe };

/// Distance of the circuit's inputs()->outputs() action from `target`.
///
/// exact: spectral norm of (restricted block - target). basis_probe: max over basis
/// inputs of the Euclidean distance of the full output (leakage included) from the
/// target column; this is a lower bound on the operator-norm distance.
inline double operator_distance(const Circuit& c, const Matrix& target, DistanceMode mode) {
    std::size_t cols = std::size_t{1} << c.inputs().size();
    std::size_t rows = std::size_t{1} << c.outputs().size();
    if (static_cast<std::size_t>(target.cols()) != cols || static_cast<std::size_t>(target.rows()) != rows) {
        throw StructuralError("operator_distance: dimension mismatch");
    }
    if (mode == DistanceMode::exact) {
        return spectral_norm(restricted_block(c) - target);
    }
    double worst = 0;
    for (std::size_t x = 0; x < cols; x++) {
        double leak = 0;
        auto col = output_column(c, x, &leak);
        double d = leak;
        for (std::size_t r = 0; r < rows; r++) {
            d += std::norm(col[r] - target(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(x)));
        }
        worst = std::max(worst, std::sqrt(d));
    }
    return worst;
}

/// sqrt(1 - |<a|b>|^2), clamped into [0, 1].
inline double trace_distance_pure(const StateVector& a, const StateVector& b) {
    if (a.amplitudes.size() != b.amplitudes.size()) {
        throw StructuralError("trace_distance_pure: dimension mismatch");
    }
    double ip = std::norm(a.inner(b));
    return std::sqrt(std::clamp(1.0 - ip, 0.0, 1.0));
}

}  // namespace qftkit
