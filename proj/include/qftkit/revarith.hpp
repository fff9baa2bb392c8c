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

// Reversible arithmetic. Everything here is built from X / CNOT / Toffoli, so every
// builder can be checked by classical evaluation. Registers are LSB-first wire lists
// and all arithmetic is modulo 2^width.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qftkit/circuit.hpp"

namespace qftkit {

/// Ordered wires of an n-bit register, least significant bit first.
using RegisterSpec = std::vector<std::uint32_t>;

/// A bit in a classical logic computation: either a known constant or a quantum wire
/// holding the value in the computational basis.
struct Bit {
    std::int64_t wire = -1;
    bool value = false;

    static Bit constant(bool v) { return Bit{-1, v}; }
    static Bit on(std::uint32_t w) { return Bit{static_cast<std::int64_t>(w), false}; }
    bool is_constant() const { return wire < 0; }
    std::uint32_t w() const { return static_cast<std::uint32_t>(wire); }
    bool operator==(const Bit&) const = default;
};

using Word = std::vector<Bit>;

inline Word word_of(const RegisterSpec& r) {
    Word out;
    out.reserve(r.size());
    for (auto w : r) {
        out.push_back(Bit::on(w));
    }
    return out;
}

inline Word constant_word(std::uint64_t value, std::size_t width) {
    Word out(width);
    for (std::size_t i = 0; i < width; i++) {
        out[i] = Bit::constant(i < 64 && ((value >> i) & 1));
    }
    return out;
}

/// Brent-Kung schedule for an in-place prefix over k items: every step replaces item
/// `hi` by item[lo] o item[hi]. Steps within one level touch disjoint items.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> prefix_schedule(std::size_t k) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> levels;
    std::size_t top = 0;
    for (std::size_t d = 1; 2 * d - 1 < k; d *= 2) {
        std::vector<std::pair<std::size_t, std::size_t>> level;
        for (std::size_t i = 2 * d - 1; i < k; i += 2 * d) {
            level.emplace_back(i - d, i);
        }
        levels.push_back(std::move(level));
        top = d;
    }
    for (std::size_t d = top; d >= 1; d /= 2) {
        std::vector<std::pair<std::size_t, std::size_t>> level;
        for (std::size_t i = 3 * d - 1; i < k; i += 2 * d) {
            level.emplace_back(i - d, i);
        }
        if (!level.empty()) {
            levels.push_back(std::move(level));
        }
    }
    return levels;
}

/// Prefix over values with an associative `op(lo, hi)`, in Brent-Kung order.
template <class T, class Op>
void prefix_scan(std::vector<T>& items, Op&& op) {
    for (const auto& level : prefix_schedule(items.size())) {
        for (auto [lo, hi] : level) {
            items[hi] = op(items[lo], items[hi]);
        }
    }
}

/// Emits out-of-place classical logic into a circuit. Every computed bit lands on a fresh
/// ancilla; constants are folded so no gate is spent on known values. The gates emitted
/// between two points can be undone with Circuit::append_inverse_of, which is how the
/// Bennett wrappers below clean up.
class LogicEmitter {
  public:
    explicit LogicEmitter(Circuit& c) : c_(c) {}

    Circuit& circuit() { return c_; }

    Bit fresh() { return Bit::on(c_.add_ancilla()); }

    Bit not_(Bit a) {
        if (a.is_constant()) {
            return Bit::constant(!a.value);
        }
        Bit t = fresh();
        c_.x(t.w());
        c_.cnot(a.w(), t.w());
        return t;
    }

    Bit xor_(Bit a, Bit b) {
        if (a.is_constant()) {
            return a.value ? not_(b) : b;
        }
        if (b.is_constant()) {
            return b.value ? not_(a) : a;
        }
        if (a == b) {
            return Bit::constant(false);
        }
        Bit t = fresh();
        c_.cnot(a.w(), t.w());
        c_.cnot(b.w(), t.w());
        return t;
    }

    Bit and_(Bit a, Bit b) {
        if (a.is_constant()) {
            return a.value ? b : Bit::constant(false);
        }
        if (b.is_constant()) {
            return b.value ? a : Bit::constant(false);
        }
        if (a == b) {
            return a;
        }
        Bit t = fresh();
        c_.ccx(a.w(), b.w(), t.w());
        return t;
    }

    Bit or_(Bit a, Bit b) {
        if (a.is_constant()) {
            return a.value ? a : b;
        }
        if (b.is_constant()) {
            return b.value ? b : a;
        }
        if (a == b) {
            return a;
        }
        Bit t = fresh();
        c_.ccx(a.w(), b.w(), t.w());
        c_.cnot(a.w(), t.w());
        c_.cnot(b.w(), t.w());
        return t;
    }

    /// a ^ (b & c) on one fresh wire.
    Bit xor_and(Bit a, Bit b, Bit c) {
        if (b.is_constant() || c.is_constant() || b == c || a.is_constant() || a == b || a == c) {
            return xor_(a, and_(b, c));
        }
        Bit t = fresh();
        c_.cnot(a.w(), t.w());
        c_.ccx(b.w(), c.w(), t.w());
        return t;
    }

    Bit xor3(Bit a, Bit b, Bit c) {
        if (a.is_constant() || b.is_constant() || c.is_constant() || a == b || a == c || b == c) {
            return xor_(xor_(a, b), c);
        }
        Bit t = fresh();
        c_.cnot(a.w(), t.w());
        c_.cnot(b.w(), t.w());
        c_.cnot(c.w(), t.w());
        return t;
    }

    Bit maj(Bit a, Bit b, Bit c) {
        if (c.is_constant()) {
            return c.value ? or_(a, b) : and_(a, b);
        }
        if (a.is_constant()) {
            return a.value ? or_(b, c) : and_(b, c);
        }
        if (b.is_constant()) {
            return b.value ? or_(a, c) : and_(a, c);
        }
        if (a == b || a == c) {
            return a;
        }
        if (b == c) {
            return b;
        }
        Bit t = fresh();
        c_.ccx(a.w(), b.w(), t.w());
        c_.ccx(a.w(), c.w(), t.w());
        c_.ccx(b.w(), c.w(), t.w());
        return t;
    }

    /// s ? b : a.
    Bit mux(Bit s, Bit a, Bit b) {
        if (s.is_constant()) {
            return s.value ? b : a;
        }
        if (a == b) {
            return a;
        }
        return xor_and(a, s, xor_(a, b));
    }

    /// `count` wires carrying the value of `a`, built by a doubling CNOT tree.
    std::vector<Bit> fanout(Bit a, std::size_t count) {
        std::vector<Bit> out;
        if (count == 0) {
            return out;
        }
        out.push_back(a);
        if (a.is_constant()) {
            out.resize(count, a);
            return out;
        }
        while (out.size() < count) {
            std::size_t have = out.size();
            for (std::size_t i = 0; i < have && out.size() < count; i++) {
                Bit t = fresh();
                c_.cnot(out[i].w(), t.w());
                out.push_back(t);
            }
        }
        return out;
    }

    Word not_word(const Word& a) {
        Word out;
        out.reserve(a.size());
        for (auto b : a) {
            out.push_back(not_(b));
        }
        return out;
    }

    struct SumResult {
        Word sum;
        Bit carry_out;
    };

    /// a + b + carry_in with a Brent-Kung carry-lookahead network; sum has width |a|.
    SumResult add(const Word& a, const Word& b, Bit carry_in = Bit::constant(false)) {
        std::size_t n = a.size();
        if (b.size() != n) {
            throw StructuralError("add: width mismatch");
        }
        if (n == 0) {
            return {{}, carry_in};
        }
        struct GP {
            Bit g;
            Bit p;
            bool from_zero;
        };
        std::vector<Bit> p(n);
        std::vector<GP> nodes(n);
        for (std::size_t i = 0; i < n; i++) {
            p[i] = xor_(a[i], b[i]);
            Bit g = i == 0 ? maj(a[0], b[0], carry_in) : and_(a[i], b[i]);
            nodes[i] = {g, p[i], i == 0};
        }
        prefix_scan(nodes, [&](const GP& lo, const GP& hi) {
            GP r;
            r.g = xor_and(hi.g, hi.p, lo.g);
            r.from_zero = lo.from_zero;
            // Group propagate is only needed for groups that do not start at bit 0.
            r.p = r.from_zero ? Bit::constant(false) : and_(hi.p, lo.p);
            return r;
        });
        SumResult out;
        out.sum.resize(n);
        for (std::size_t i = 0; i < n; i++) {
            Bit carry = i == 0 ? carry_in : nodes[i - 1].g;
            out.sum[i] = xor_(p[i], carry);
        }
        out.carry_out = nodes[n - 1].g;
        return out;
    }

    /// Carries into bits 1..n-1 of a + b (entry i is the carry into bit i; entry 0 is 0).
    Word carries(const Word& a, const Word& b) {
        std::size_t n = a.size();
        Word out(n, Bit::constant(false));
        if (n < 2) {
            return out;
        }
        struct GP {
            Bit g;
            Bit p;
            bool from_zero;
        };
        std::vector<GP> nodes(n - 1);
        for (std::size_t i = 0; i + 1 < n; i++) {
            nodes[i] = {and_(a[i], b[i]), i == 0 ? Bit::constant(false) : xor_(a[i], b[i]), i == 0};
        }
        prefix_scan(nodes, [&](const GP& lo, const GP& hi) {
            GP r;
            r.g = xor_and(hi.g, hi.p, lo.g);
            r.from_zero = lo.from_zero;
            r.p = r.from_zero ? Bit::constant(false) : and_(hi.p, lo.p);
            return r;
        });
        for (std::size_t i = 1; i < n; i++) {
            out[i] = nodes[i - 1].g;
        }
        return out;
    }

    /// Carry-save step: (a, b, c) -> (s, t) with s + t = a + b + c mod 2^width.
    std::pair<Word, Word> three_two(const Word& a, const Word& b, const Word& c) {
        std::size_t n = a.size();
        if (b.size() != n || c.size() != n) {
            throw StructuralError("three_two: width mismatch");
        }
        Word s(n), t(n, Bit::constant(false));
        for (std::size_t i = 0; i < n; i++) {
            s[i] = xor3(a[i], b[i], c[i]);
            if (i + 1 < n) {
                t[i + 1] = maj(a[i], b[i], c[i]);
            }
        }
        return {s, t};
    }

    /// Sum of many words of the same width, Wallace-style three-two reduction then one add.
    Word sum_words(std::vector<Word> rows, std::size_t width) {
        for (auto& r : rows) {
            r.resize(width, Bit::constant(false));
        }
        std::erase_if(rows, [](const Word& r) {
            return std::all_of(r.begin(), r.end(), [](Bit b) { return b.is_constant() && !b.value; });
        });
        while (rows.size() > 2) {
            std::vector<Word> next;
            std::size_t i = 0;
            for (; i + 3 <= rows.size(); i += 3) {
                auto [s, t] = three_two(rows[i], rows[i + 1], rows[i + 2]);
                next.push_back(std::move(s));
                next.push_back(std::move(t));
            }
            for (; i < rows.size(); i++) {
                next.push_back(std::move(rows[i]));
            }
            rows = std::move(next);
        }
        if (rows.empty()) {
            return constant_word(0, width);
        }
        if (rows.size() == 1) {
            return rows[0];
        }
        return add(rows[0], rows[1]).sum;
    }

    /// x * y mod 2^width from AND partial products and a carry-save tree. Operand bits are
    /// fanned out first so that no wire controls more than a few gates per layer.
    Word multiply(const Word& x, const Word& y, std::size_t width) {
        std::vector<std::vector<Bit>> xc(x.size()), yc(y.size());
        std::vector<std::size_t> xi_used(x.size(), 0), yj_used(y.size(), 0);
        for (std::size_t i = 0; i < x.size(); i++) {
            xc[i] = fanout(x[i], std::min(y.size(), width > i ? width - i : 0));
        }
        for (std::size_t j = 0; j < y.size(); j++) {
            yc[j] = fanout(y[j], std::min(x.size(), width > j ? width - j : 0));
        }
        std::vector<Word> rows;
        for (std::size_t j = 0; j < y.size() && j < width; j++) {
            Word row(width, Bit::constant(false));
            for (std::size_t i = 0; i < x.size() && i + j < width; i++) {
                row[i + j] = and_(xc[i][xi_used[i]++], yc[j][yj_used[j]++]);
            }
            rows.push_back(std::move(row));
        }
        return sum_words(std::move(rows), width);
    }

    /// v >= k for a constant k, from the carry out of v + (2^w - k).
    Bit ge_const(const Word& v, std::uint64_t k) {
        std::size_t w = v.size();
        if (k == 0) {
            return Bit::constant(true);
        }
        if (w < 64 && k >= (std::uint64_t{1} << w)) {
            return Bit::constant(false);
        }
        return add(v, constant_word(~k, w), Bit::constant(true)).carry_out;
    }

    /// v mod n for v < 2^|v|, by a ladder of conditional subtractions of n * 2^j.
    Word reduce_mod(Word v, std::uint64_t n) {
        std::size_t w = static_cast<std::size_t>(std::bit_width(n));
        std::size_t width = v.size();
        if (width <= w) {
            v.resize(w + 1, Bit::constant(false));
            width = w + 1;
        }
        for (std::size_t j = width - w + 1; j-- > 0;) {
            if (j + w > width) {
                continue;
            }
            std::uint64_t k = n << j;
            SumResult d = add(v, constant_word(~k, width), Bit::constant(true));
            auto sel = fanout(d.carry_out, width);
            Word next(width);
            for (std::size_t i = 0; i < width; i++) {
                next[i] = mux(sel[i], v[i], d.sum[i]);
            }
            v = std::move(next);
        }
        v.resize(w);
        return v;
    }

    /// a * b mod n for a, b < n (|a| = |b| = bit width of n).
    Word mod_mul(const Word& a, const Word& b, std::uint64_t n) {
        std::size_t w = static_cast<std::size_t>(std::bit_width(n));
        Word prod = multiply(a, b, 2 * w);
        std::vector<Word> rows;
        std::size_t sum_width = static_cast<std::size_t>(std::bit_width(2 * w * (n - 1))) + 1;
        for (std::size_t t = 0; t < 2 * w; t++) {
            std::uint64_t r = (std::uint64_t{1} << t) % n;
            auto copies = fanout(prod[t], static_cast<std::size_t>(std::popcount(r)));
            Word row(sum_width, Bit::constant(false));
            std::size_t used = 0;
            for (std::size_t i = 0; i < w; i++) {
                if ((r >> i) & 1) {
                    row[i] = copies[used++];
                }
            }
            rows.push_back(std::move(row));
        }
        return reduce_mod(sum_words(std::move(rows), sum_width), n);
    }

    /// Copies `value` into `target` with CNOT / X (target assumed to hold 0 or to be XORed).
    void xor_into(const Word& value, const RegisterSpec& target) {
        if (value.size() != target.size()) {
            throw StructuralError("xor_into: width mismatch");
        }
        for (std::size_t i = 0; i < target.size(); i++) {
            if (value[i].is_constant()) {
                if (value[i].value) {
                    c_.x(target[i]);
                }
            } else {
                if (value[i].w() == target[i]) {
                    throw StructuralError("computation writes onto its own output register");
                }
                c_.cnot(value[i].w(), target[i]);
            }
        }
    }

  private:
    Circuit& c_;
};

/// Runs `compute` (returning a Word) on a fresh emitter, XORs the result into `target`,
/// then appends the inverse of the compute gates so every ancilla it used returns to 0.
template <class Compute>
void bennett_into(Circuit& c, const RegisterSpec& target, Compute&& compute) {
    std::size_t begin = c.size();
    LogicEmitter e(c);
    Word r = compute(e);
    std::size_t end = c.size();
    e.xor_into(r, target);
    c.append_inverse_of(begin, end);
}

namespace detail {

inline void check_registers(const std::vector<const RegisterSpec*>& regs) {
    std::vector<std::uint32_t> all;
    for (const auto* r : regs) {
        if (r->empty()) {
            throw StructuralError("register must have at least one wire");
        }
        all.insert(all.end(), r->begin(), r->end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw StructuralError("registers overlap");
    }
}

/// Circuit whose data wires cover every wire named by `regs`.
inline Circuit host_for(const std::vector<const RegisterSpec*>& regs, const std::string& name) {
    check_registers(regs);
    std::uint32_t width = 0;
    for (const auto* r : regs) {
        for (auto w : *r) {
            width = std::max(width, w + 1);
        }
    }
    return Circuit(width, name);
}

inline RegisterSpec span_register(std::uint32_t start, std::uint32_t n) {
    RegisterSpec r(n);
    std::iota(r.begin(), r.end(), start);
    return r;
}

}  // namespace detail

/// Compute f, CNOT-copy `result` onto `out`, uncompute f. `result` and `out` are wires of
/// f; f must not touch `out`.
inline Circuit bennett_wrap(const Circuit& f, const RegisterSpec& result, const RegisterSpec& out) {
    if (result.size() != out.size()) {
        throw StructuralError("bennett_wrap: result and out widths differ");
    }
    if (f.has_measurements()) {
        throw NonInvertibleError("bennett_wrap: f contains measurements");
    }
    for (const auto& g : f.gates()) {
        for (auto w : g.qubits()) {
            if (std::find(out.begin(), out.end(), w) != out.end()) {
                throw StructuralError("bennett_wrap: f touches the output register");
            }
        }
    }
    Circuit c = f;
    for (std::size_t i = 0; i < out.size(); i++) {
        c.cnot(result[i], out[i]);
    }
    c.append_inverse_of(0, f.size());
    return c;
}

/// In place y <- y + x mod 2^n with O(n) ancillas and O(log n) depth.
///
/// The carries of x + y are computed into a fresh register C (Bennett-wrapped), y is
/// overwritten with the sum bits x ^ y ^ C, and C is then cleared using the carries of
/// x + ~s, which coincide with the carries of x + y.
inline void emit_adder(Circuit& c, const RegisterSpec& x, const RegisterSpec& y) {
    detail::check_registers({&x, &y});
    if (x.size() != y.size()) {
        throw StructuralError("adder registers differ in width");
    }
    std::size_t n = x.size();
    if (n == 1) {
        c.cnot(x[0], y[0]);
        return;
    }
    RegisterSpec carry = c.add_ancillas(n - 1);
    auto carries_hi = [&](LogicEmitter& e) {
        Word all = e.carries(word_of(x), word_of(y));
        return Word(all.begin() + 1, all.end());
    };
    bennett_into(c, carry, carries_hi);
    for (std::size_t i = 0; i < n; i++) {
        c.cnot(x[i], y[i]);
    }
    for (std::size_t i = 1; i < n; i++) {
        c.cnot(carry[i - 1], y[i]);
    }
    for (auto w : y) {
        c.x(w);
    }
    bennett_into(c, carry, carries_hi);
    for (auto w : y) {
        c.x(w);
    }
}

inline Circuit build_adder(const RegisterSpec& x, const RegisterSpec& y) {
    Circuit c = detail::host_for({&x, &y}, "adder");
    emit_adder(c, x, y);
    return c;
}

/// y <- y - x mod 2^n; gate-for-gate the inverse of build_adder.
inline Circuit build_subtractor(const RegisterSpec& x, const RegisterSpec& y) {
    Circuit c = inverse(build_adder(x, y));
    c.set_name("subtractor");
    return c;
}

/// Constant-depth carry-save adder into fresh registers s and t: s + t = x + y + z mod 2^n.
inline void emit_three_two(Circuit& c, const RegisterSpec& x, const RegisterSpec& y, const RegisterSpec& z,
                           const RegisterSpec& s, const RegisterSpec& t) {
    detail::check_registers({&x, &y, &z, &s, &t});
    std::size_t n = x.size();
    if (y.size() != n || z.size() != n || s.size() != n || t.size() != n) {
        throw StructuralError("three_two registers differ in width");
    }
    for (std::size_t i = 0; i < n; i++) {
        c.cnot(x[i], s[i]);
        c.cnot(y[i], s[i]);
        c.cnot(z[i], s[i]);
        if (i + 1 < n) {
            c.ccx(x[i], y[i], t[i + 1]);
            c.ccx(x[i], z[i], t[i + 1]);
            c.ccx(y[i], z[i], t[i + 1]);
        }
    }
}

/// Data wires: x, y, z (the inputs, 3n wires), then s and t (2n wires, start at 0).
inline Circuit build_three_two(std::uint32_t n) {
    Circuit c(5 * n, "three_two");
    auto r = [&](std::uint32_t i) { return detail::span_register(i * n, n); };
    emit_three_two(c, r(0), r(1), r(2), r(3), r(4));
    return c;
}

/// Four-two adder from two three-two stages; the intermediate pair is uncomputed so the
/// result is s + t = x + y + z + w mod 2^n with clean ancillas and constant depth.
inline void emit_four_two(Circuit& c, const RegisterSpec& x, const RegisterSpec& y, const RegisterSpec& z,
                          const RegisterSpec& w, const RegisterSpec& s, const RegisterSpec& t) {
    std::size_t n = x.size();
    RegisterSpec s1 = c.add_ancillas(n), t1 = c.add_ancillas(n);
    std::size_t begin = c.size();
    emit_three_two(c, x, y, z, s1, t1);
    std::size_t end = c.size();
    emit_three_two(c, s1, t1, w, s, t);
    c.append_inverse_of(begin, end);
}

/// Data wires: x, y, z, w (4n inputs), then s and t.
inline Circuit build_four_two(std::uint32_t n) {
    Circuit c(6 * n, "four_two");
    auto r = [&](std::uint32_t i) { return detail::span_register(i * n, n); };
    emit_four_two(c, r(0), r(1), r(2), r(3), r(4), r(5));
    return c;
}

/// Applies `op_block`, which maps (x, y) -> (x, x o y) on two w-wire blocks held in its
/// first 2w data wires, as a Brent-Kung prefix over k blocks: (x1..xk) -> (x1, x1 o x2, ...).
/// Data wires of the result are the k blocks back to back.
inline Circuit prefix_combine(std::size_t k, const Circuit& op_block) {
    if (k == 0) {
        throw StructuralError("prefix_combine needs at least one block");
    }
    if (op_block.num_data() % 2 != 0) {
        throw StructuralError("op_block must have an even number of data wires");
    }
    std::uint32_t w = op_block.num_data() / 2;
    Circuit c(static_cast<std::uint32_t>(k) * w, "prefix_combine");
    c.set_param("k", static_cast<long long>(k));
    for (const auto& level : prefix_schedule(k)) {
        for (auto [lo, hi] : level) {
            WireMap m(op_block.width());
            for (std::uint32_t i = 0; i < w; i++) {
                m[i] = static_cast<std::uint32_t>(lo) * w + i;
                m[w + i] = static_cast<std::uint32_t>(hi) * w + i;
            }
            append_circuit(c, op_block, m);
        }
    }
    return c;
}

/// In place (x1, ..., xk) -> (x1, x1+x2, ..., x1+...+xk) mod 2^n.
///
/// A classical pass computes the prefix sums out of place (pairwise representation with
/// four-two adders inside a prefix network, then one carry-lookahead add per register)
/// and is Bennett-copied into fresh registers R. A second pass computes the differences
/// R_i - R_{i-1}, which equal x_i, and XORs them into x to clear it. Finally the cleared
/// x registers and R are swapped.
inline void emit_prefix_add(Circuit& c, const std::vector<RegisterSpec>& regs) {
    std::vector<const RegisterSpec*> ptrs;
    for (const auto& r : regs) {
        ptrs.push_back(&r);
    }
    detail::check_registers(ptrs);
    std::size_t k = regs.size();
    if (k < 2) {
        return;
    }
    std::size_t n = regs[0].size();
    for (const auto& r : regs) {
        if (r.size() != n) {
            throw StructuralError("prefix_add registers differ in width");
        }
    }
    std::vector<RegisterSpec> result(k);
    RegisterSpec flat;
    for (std::size_t i = 1; i < k; i++) {
        result[i] = c.add_ancillas(n);
        flat.insert(flat.end(), result[i].begin(), result[i].end());
    }

    bennett_into(c, flat, [&](LogicEmitter& e) {
        struct Pair {
            Word a, b;
        };
        std::vector<Pair> items(k);
        for (std::size_t i = 0; i < k; i++) {
            items[i] = {word_of(regs[i]), constant_word(0, n)};
        }
        prefix_scan(items, [&](const Pair& lo, const Pair& hi) {
            auto [s1, t1] = e.three_two(lo.a, lo.b, hi.a);
            auto [s, t] = e.three_two(s1, t1, hi.b);
            return Pair{s, t};
        });
        Word out;
        for (std::size_t i = 1; i < k; i++) {
            Word v = e.add(items[i].a, items[i].b).sum;
            out.insert(out.end(), v.begin(), v.end());
        }
        return out;
    });

    RegisterSpec rest;
    for (std::size_t i = 1; i < k; i++) {
        rest.insert(rest.end(), regs[i].begin(), regs[i].end());
    }
    bennett_into(c, rest, [&](LogicEmitter& e) {
        // All negations go first: emitting them between the adds would make each add wait
        // for the previous one to release its operand wires.
        std::vector<Word> negated(k);
        for (std::size_t i = 1; i < k; i++) {
            negated[i] = e.not_word(word_of(i == 1 ? regs[0] : result[i - 1]));
        }
        Word out;
        for (std::size_t i = 1; i < k; i++) {
            Word d = e.add(word_of(result[i]), negated[i], Bit::constant(true)).sum;
            out.insert(out.end(), d.begin(), d.end());
        }
        return out;
    });

    for (std::size_t i = 1; i < k; i++) {
        for (std::size_t b = 0; b < n; b++) {
            c.cnot(result[i][b], regs[i][b]);
            c.cnot(regs[i][b], result[i][b]);
        }
    }
}

/// k registers of n bits on data wires [i*n, (i+1)*n).
inline Circuit prefix_add(std::uint32_t k, std::uint32_t n) {
    if (k == 0 || n == 0) {
        throw StructuralError("prefix_add needs k >= 1 and n >= 1");
    }
    Circuit c(k * n, "prefix_add");
    c.set_param("k", k);
    c.set_param("n", n);
    std::vector<RegisterSpec> regs;
    for (std::uint32_t i = 0; i < k; i++) {
        regs.push_back(detail::span_register(i * n, n));
    }
    emit_prefix_add(c, regs);
    return c;
}

/// (x1, ..., xk) -> (x1, x2-x1, ..., xk-x(k-1)) mod 2^n, the inverse of prefix_add.
inline Circuit telescoping_subtract(std::uint32_t k, std::uint32_t n) {
    Circuit c = inverse(prefix_add(k, n));
    c.set_name("telescoping_subtract");
    return c;
}

/// out ^= x * y mod 2^|out| with clean ancillas.
inline void emit_multiplier(Circuit& c, const RegisterSpec& x, const RegisterSpec& y, const RegisterSpec& out) {
    detail::check_registers({&x, &y, &out});
    bennett_into(c, out, [&](LogicEmitter& e) { return e.multiply(word_of(x), word_of(y), out.size()); });
}

/// Data wires: x (n - m bits), y (m bits), out (n bits).
inline Circuit build_multiplier(std::uint32_t n, std::uint32_t m) {
    if (m == 0 || m >= n) {
        throw StructuralError("multiplier needs 0 < m < n");
    }
    Circuit c(2 * n, "multiplier");
    c.set_param("n", n);
    c.set_param("m", m);
    emit_multiplier(c, detail::span_register(0, n - m), detail::span_register(n - m, m),
                    detail::span_register(n, n));
    return c;
}

/// Classical check of the constants for iterated_product.
inline void check_modulus(std::uint64_t modulus, const std::vector<std::uint64_t>& b) {
    if (modulus < 3 || modulus % 2 == 0) {
        throw ValueError("modulus must be odd and at least 3");
    }
    if (modulus >= (std::uint64_t{1} << 31)) {
        throw ValueError("modulus too large");
    }
    for (auto v : b) {
        if (v >= modulus) {
            throw ValueError("constant " + std::to_string(v) + " is not reduced modulo " + std::to_string(modulus));
        }
    }
}

/// out ^= prod_j b_j^{x_j} mod N via a binary tree of modular multipliers, one Bennett block.
/// Leaf j is the word x_j ? b_j : 1, which constant folding reduces to copies of x_j.
inline void emit_iterated_product(Circuit& c, const std::vector<std::uint64_t>& b, std::uint64_t modulus,
                                  const RegisterSpec& x, const RegisterSpec& out) {
    check_modulus(modulus, b);
    if (x.size() != b.size()) {
        throw StructuralError("iterated_product: one control bit per constant");
    }
    std::size_t w = static_cast<std::size_t>(std::bit_width(modulus));
    if (out.size() != w) {
        throw StructuralError("iterated_product: output width must be the bit width of N");
    }
    detail::check_registers({&x, &out});
    bennett_into(c, out, [&](LogicEmitter& e) {
        std::vector<Word> level;
        for (std::size_t j = 0; j < b.size(); j++) {
            Word leaf(w);
            Bit ctl = Bit::on(x[j]);
            for (std::size_t i = 0; i < w; i++) {
                leaf[i] = e.mux(ctl, Bit::constant(i == 0), Bit::constant((b[j] >> i) & 1));
            }
            level.push_back(std::move(leaf));
        }
        if (level.empty()) {
            return constant_word(1, w);
        }
        while (level.size() > 1) {
            std::vector<Word> next;
            for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
                next.push_back(e.mod_mul(level[i], level[i + 1], modulus));
            }
            if (level.size() % 2) {
                next.push_back(level.back());
            }
            level = std::move(next);
        }
        return level[0];
    });
}

/// Data wires: x (|b| control bits), then out (bit width of N).
inline Circuit iterated_product(const std::vector<std::uint64_t>& b, std::uint64_t modulus) {
    check_modulus(modulus, b);
    auto L = static_cast<std::uint32_t>(b.size());
    auto w = static_cast<std::uint32_t>(std::bit_width(modulus));
    Circuit c(L + w, "iterated_product");
    c.set_param("N", static_cast<long long>(modulus));
    emit_iterated_product(c, b, modulus, detail::span_register(0, L), detail::span_register(L, w));
    return c;
}

}  // namespace qftkit
