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

// Power-of-two QFT circuits.
//
// Register conventions. Wire t of an n-bit register holds bit t (LSB first). The Fourier
// state psi_x in natural order is the DFT column x: wire t holds mu_{x / 2^{n-t}}. The
// standard, banded and split builders leave their output bit-reversed on the input wires
// and record that with outputs() = wires n-1..0. The prep / copy / logdepth builders keep
// psi_x in natural order on a separate register.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qftkit/circuit.hpp"
#include "qftkit/phasest.hpp"
#include "qftkit/revarith.hpp"
#include "qftkit/sim.hpp"

namespace qftkit {

namespace detail {

inline void check_width(unsigned n, unsigned lo, unsigned hi, const char* what) {
    if (n < lo || n > hi) {
        throw ValueError(std::string(what) + ": n must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "], got " + std::to_string(n));
    }
}

inline std::vector<std::uint32_t> reversed(RegisterSpec r) {
    std::reverse(r.begin(), r.end());
    return r;
}

}  // namespace detail

/// Textbook QFT on `wires` keeping only rotations with j - i <= band. Leaves wire j
/// holding mu_{(x mod 2^{j+1}) / 2^{j+1}}.
inline void emit_standard_qft(Circuit& c, const RegisterSpec& wires, unsigned band) {
    std::size_t n = wires.size();
    for (std::size_t j = n; j-- > 0;) {
        c.h(wires[j]);
        for (std::size_t i = j; i-- > 0;) {
            if (j - i > band) {
                break;
            }
            c.cp(wires[i], wires[j], DyadicAngle::inverse_power_of_two(static_cast<unsigned>(j - i + 1)));
        }
    }
}

inline Circuit banded_qft(unsigned n, unsigned band) {
    detail::check_width(n, 1, 20, "banded_qft");
    if (band < 1 || band > n) {
        throw ValueError("banded_qft: band must be in [1, n]");
    }
    Circuit c(n, band == n ? "standard_qft" : "banded_qft");
    auto wires = detail::span_register(0, n);
    emit_standard_qft(c, wires, band);
    c.set_param("n", n);
    if (band != n) {
        c.set_param("band", band);
    }
    c.set_inputs(wires);
    c.set_outputs(detail::reversed(wires));
    return c;
}

inline Circuit standard_qft(unsigned n) { return banded_qft(n, n); }

/// Sum over deleted rotations of |e^{2 pi i theta} - 1| <= 2 pi theta, an upper bound on the
/// operator distance between banded_qft(n, band) and the exact transform.
inline double banded_error_bound(unsigned n, unsigned band) {
    double total = 0;
    for (unsigned d = band + 1; d < n; d++) {
        // (n - d) rotations of angle 1/2^{d+1}.
        total += (n - d) * 2.0 * M_PI * std::ldexp(1.0, -static_cast<int>(d + 1));
    }
    return total;
}

/// Band that meets operator error eps, clamped to [1, n].
inline unsigned band_for_error(unsigned n, double eps) {
    double b = std::ceil(std::log2(n / eps));
    return static_cast<unsigned>(std::clamp(b, 1.0, static_cast<double>(n)));
}

/// Multiplies the state by e^{2 pi i (low * high_rev) / 2^n}, where high_rev reads the
/// high wires in reverse. Product computed out of place, phased bit by bit, uncomputed.
inline void emit_split_cross_phase(Circuit& c, const RegisterSpec& low, const RegisterSpec& high) {
    std::size_t n = low.size() + high.size();
    std::size_t begin = c.size();
    LogicEmitter e(c);
    Word prod = e.multiply(word_of(low), word_of(detail::reversed(high)), n);
    std::size_t end = c.size();
    for (std::size_t t = 0; t < n; t++) {
        if (prod[t].is_constant()) {
            if (prod[t].value) {
                throw StructuralError("split_qft: product bit folded to constant 1");
            }
            continue;
        }
        c.p(prod[t].w(), DyadicAngle::inverse_power_of_two(static_cast<unsigned>(n - t)));
    }
    c.append_inverse_of(begin, end);
}

/// Recursive QFT: high block, cross phase through a multiplier, low block.
inline void emit_split_qft(Circuit& c, const RegisterSpec& wires) {
    std::size_t n = wires.size();
    if (n <= 3) {
        emit_standard_qft(c, wires, static_cast<unsigned>(n));
        return;
    }
    std::size_t m = n / 2;
    RegisterSpec low(wires.begin(), wires.begin() + static_cast<std::ptrdiff_t>(m));
    RegisterSpec high(wires.begin() + static_cast<std::ptrdiff_t>(m), wires.end());
    emit_split_qft(c, high);
    emit_split_cross_phase(c, low, high);
    emit_split_qft(c, low);
}

inline Circuit split_qft(unsigned n) {
    detail::check_width(n, 1, 10, "split_qft");
    Circuit c(n, "split_qft");
    auto wires = detail::span_register(0, n);
    emit_split_qft(c, wires);
    c.set_param("n", n);
    c.set_inputs(wires);
    c.set_outputs(detail::reversed(wires));
    return c;
}

/// The cross-phase stage of split_qft(n) on its own, for size accounting.
inline Circuit split_cross_phase(unsigned n) {
    detail::check_width(n, 2, 10, "split_cross_phase");
    Circuit c(n, "split_cross_phase");
    auto wires = detail::span_register(0, n);
    unsigned m = n / 2;
    emit_split_cross_phase(c, RegisterSpec(wires.begin(), wires.begin() + m),
                           RegisterSpec(wires.begin() + m, wires.end()));
    return c;
}

/// |x>|0> -> |x>|psi~_x> with psi in natural order. Target j (phase (x mod 2^{j+1}) /
/// 2^{j+1}) takes rotations from bits x_{j-band+1}..x_j only. Input bits and targets are
/// fanned out by CNOT trees so every rotation runs in a single layer.
inline void emit_prep(Circuit& c, const RegisterSpec& x, const RegisterSpec& psi, unsigned band) {
    std::size_t n = x.size();
    if (psi.size() != n) {
        throw StructuralError("prep: register width mismatch");
    }
    auto target = [&](std::size_t j) { return psi[n - 1 - j]; };
    auto uses_of_bit = [&](std::size_t i) { return std::min<std::size_t>(band, n - i); };
    auto uses_of_target = [&](std::size_t j) { return std::min<std::size_t>(band, j + 1); };

    for (std::size_t j = 0; j < n; j++) {
        c.h(target(j));
    }
    std::size_t begin = c.size();
    LogicEmitter e(c);
    std::vector<std::vector<Bit>> xc(n), tc(n);
    for (std::size_t i = 0; i < n; i++) {
        xc[i] = e.fanout(Bit::on(x[i]), uses_of_bit(i));
    }
    for (std::size_t j = 0; j < n; j++) {
        tc[j] = e.fanout(Bit::on(target(j)), uses_of_target(j));
    }
    std::size_t end = c.size();
    std::vector<std::size_t> xu(n, 0), tu(n, 0);
    for (std::size_t j = 0; j < n; j++) {
        std::size_t lo = j + 1 >= band ? j + 1 - band : 0;
        for (std::size_t i = lo; i <= j; i++) {
            c.cp(xc[i][xu[i]++].w(), tc[j][tu[j]++].w(),
                 DyadicAngle::inverse_power_of_two(static_cast<unsigned>(j - i + 1)));
        }
    }
    c.append_inverse_of(begin, end);
}

inline Circuit prep_approx(unsigned n, unsigned band) {
    detail::check_width(n, 1, 64, "prep");
    if (band < 1 || band > n) {
        throw ValueError("prep_approx: band must be in [1, n]");
    }
    Circuit c(2 * n, band == n ? "prep_exact" : "prep_approx");
    auto x = detail::span_register(0, n);
    auto psi = detail::span_register(n, n);
    emit_prep(c, x, psi, band);
    c.set_param("n", n);
    if (band != n) {
        c.set_param("band", band);
    }
    return c;
}

inline Circuit prep_exact(unsigned n) { return prep_approx(n, n); }

/// Per-qubit bound ||mu_exact - mu_truncated|| <= 2 pi 2^{-band} for prep_approx.
inline double prep_error_bound(unsigned n, unsigned band) {
    return band >= n ? 0.0 : n * 2.0 * M_PI * std::ldexp(1.0, -static_cast<int>(band));
}

namespace detail {

/// Appends a block whose data wires are k consecutive n-bit registers onto `regs`.
inline void append_on_registers(Circuit& c, const Circuit& block, const std::vector<RegisterSpec>& regs) {
    std::size_t n = regs.empty() ? 0 : regs[0].size();
    WireMap map(block.width());
    for (std::size_t r = 0; r < regs.size(); r++) {
        for (std::size_t t = 0; t < n; t++) {
            map[r * n + t] = regs[r][t];
        }
    }
    append_circuit(c, block, map);
}

}  // namespace detail

/// psi_x in the last register -> psi_x in all k registers; the others start at 0.
/// Hadamards turn the blank registers into psi_0, then telescoping subtraction leaves
/// register r holding the suffix sum of phase parameters, which is x everywhere.
inline void emit_copy_fourier(Circuit& c, const std::vector<RegisterSpec>& regs) {
    if (regs.size() < 2) {
        return;
    }
    for (std::size_t r = 0; r + 1 < regs.size(); r++) {
        for (auto w : regs[r]) {
            c.h(w);
        }
    }
    auto k = static_cast<std::uint32_t>(regs.size());
    auto n = static_cast<std::uint32_t>(regs[0].size());
    detail::append_on_registers(c, telescoping_subtract(k, n), regs);
}

/// Inverse of emit_copy_fourier.
inline void emit_uncopy_fourier(Circuit& c, const std::vector<RegisterSpec>& regs) {
    if (regs.size() < 2) {
        return;
    }
    auto k = static_cast<std::uint32_t>(regs.size());
    auto n = static_cast<std::uint32_t>(regs[0].size());
    detail::append_on_registers(c, prefix_add(k, n), regs);
    for (std::size_t r = 0; r + 1 < regs.size(); r++) {
        for (auto w : regs[r]) {
            c.h(w);
        }
    }
}

inline Circuit copy_fourier(unsigned n, unsigned k) {
    detail::check_width(n, 1, 64, "copy_fourier");
    if (k < 1) {
        throw ValueError("copy_fourier: k must be at least 1");
    }
    Circuit c(n * k, "copy_fourier");
    std::vector<RegisterSpec> regs;
    for (unsigned r = 0; r < k; r++) {
        regs.push_back(detail::span_register(r * n, n));
    }
    emit_copy_fourier(c, regs);
    c.set_param("n", n);
    c.set_param("k", k);
    return c;
}

/// x ^= estimate of x from k readout registers (copies of psi_x after basis rotation).
/// Registers 0..k/2-1 are X-basis readouts (bit 1 = outcome 2), the rest Y-basis readouts
/// (bit 1 = outcome 3). Per position the most frequent outcome wins, smallest index on
/// ties, and the transfer-matrix prefix turns the votes into x. Ancillas end clean.
inline void emit_vote_estimate(Circuit& c, const RegisterSpec& x, const std::vector<RegisterSpec>& regs) {
    std::size_t k = regs.size();
    std::size_t n = x.size();
    if (k < 2 || k % 2 != 0) {
        throw ValueError("phase erase needs an even number of copies k >= 2");
    }
    std::size_t h = k / 2;
    // A vote's transfer matrix as a map on {e1, e2}: a is the image of e1, b of e2, each
    // 0 for e1 and 1 for e2.
    struct Map {
        Bit a, b;
    };
    bennett_into(c, x, [&](LogicEmitter& e) {
        auto count_width = static_cast<std::size_t>(std::bit_width(h));
        std::uint64_t majority = h / 2 + 1;  // 2u > h  <=>  u >= floor(h/2) + 1
        auto ge = [&](const Word& a, const Word& b) {
            return e.add(a, e.not_word(b), Bit::constant(true)).carry_out;
        };
        std::vector<Map> maps(n);
        for (std::size_t j = 1; j <= n; j++) {
            auto t = static_cast<std::uint32_t>(n - j);
            std::vector<Word> xrows, yrows;
            for (std::size_t r = 0; r < k; r++) {
                (r < h ? xrows : yrows).push_back(Word{Bit::on(regs[r][t])});
            }
            Word u = e.sum_words(std::move(xrows), count_width);
            Word v = e.sum_words(std::move(yrows), count_width);
            Bit x_two = e.ge_const(u, majority);
            Bit y_three = e.ge_const(v, majority);
            Word hu = e.add(constant_word(h, count_width), e.not_word(u), Bit::constant(true)).sum;
            Word hv = e.add(constant_word(h, count_width), e.not_word(v), Bit::constant(true)).sum;
            Word mx(count_width), my(count_width);
            for (std::size_t i = 0; i < count_width; i++) {
                mx[i] = e.mux(x_two, hu[i], u[i]);
                my[i] = e.mux(y_three, hv[i], v[i]);
            }
            Bit x_ge = ge(mx, my);
            Bit y_ge = ge(my, mx);
            Bit gt = e.not_(y_ge);
            Bit eq = e.and_(x_ge, y_ge);
            Bit x_wins_tie = e.or_(e.not_(x_two), y_three);
            Bit x_wins = e.or_(gt, e.and_(eq, x_wins_tie));
            Bit l_hi = e.mux(x_wins, y_three, x_two);
            maps[j - 1] = Map{l_hi, e.xor_(x_wins, l_hi)};
        }
        prefix_scan(maps, [&](const Map& lo, const Map& hi) {
            return Map{e.mux(lo.a, hi.a, hi.b), e.mux(lo.b, hi.a, hi.b)};
        });
        Word est(n);
        for (std::size_t j = 0; j < n; j++) {
            est[j] = maps[j].a;
        }
        return est;
    });
}

/// Coherent phase erase: rotate the k copies of psi_x into X / Y readout bases, XOR the
/// vote estimate into x, rotate back.
inline void emit_phase_erase(Circuit& c, const RegisterSpec& x, const std::vector<RegisterSpec>& regs) {
    std::size_t k = regs.size();
    if (k < 2 || k % 2 != 0) {
        throw ValueError("phase erase needs an even number of copies k >= 2");
    }
    const DyadicAngle to_y = DyadicAngle::from(3, 2);
    std::size_t begin = c.size();
    for (std::size_t r = 0; r < k; r++) {
        for (auto w : regs[r]) {
            if (r >= k / 2) {
                c.p(w, to_y);
            }
            c.h(w);
        }
    }
    std::size_t end = c.size();
    emit_vote_estimate(c, x, regs);
    c.append_inverse_of(begin, end);
}

struct QftPlan {
    enum class Kind { standard, banded, split, logdepth };
    Kind kind = Kind::standard;
    unsigned n = 1;
    unsigned band = 0;    // banded, and the logdepth prep; 0 picks the default
    unsigned copies = 0;  // logdepth only
};

/// Prep band for the logdepth construction: as many significant rotations as copies,
/// capped at n, unless set explicitly.
inline unsigned logdepth_band(const QftPlan& plan) {
    return plan.band ? std::min(plan.band, plan.n) : std::min(plan.n, plan.copies);
}

inline void check_logdepth_plan(const QftPlan& plan) {
    detail::check_width(plan.n, 1, 64, "logdepth_qft");
    if (plan.copies < 2 || plan.copies % 2 != 0) {
        throw ValueError("logdepth_qft: copies k must be even and at least 2");
    }
}

/// |x> -> ~|psi_x>: prep into P, copy P into k-1 blank registers, erase x by estimating it
/// coherently from the k copies, uncopy. inputs() is the x register, outputs() is P.
inline Circuit logdepth_qft(const QftPlan& plan) {
    check_logdepth_plan(plan);
    unsigned n = plan.n;
    unsigned k = plan.copies;
    Circuit c(2 * n, "logdepth_qft");
    auto x = detail::span_register(0, n);
    auto p = detail::span_register(n, n);
    std::vector<RegisterSpec> regs;
    for (unsigned r = 0; r + 1 < k; r++) {
        regs.push_back(c.add_ancillas(n));
    }
    regs.push_back(p);
    emit_prep(c, x, p, logdepth_band(plan));
    emit_copy_fourier(c, regs);
    emit_phase_erase(c, x, regs);
    emit_uncopy_fourier(c, regs);
    c.set_param("n", n);
    c.set_param("k", k);
    c.set_param("band", logdepth_band(plan));
    c.set_inputs(x);
    c.set_outputs(p);
    return c;
}

inline Circuit logdepth_qft(unsigned n, unsigned k) {
    return logdepth_qft(QftPlan{QftPlan::Kind::logdepth, n, 0, k});
}

inline Circuit build_qft(const QftPlan& plan) {
    switch (plan.kind) {
        case QftPlan::Kind::standard: return standard_qft(plan.n);
        case QftPlan::Kind::banded: return banded_qft(plan.n, plan.band ? plan.band : plan.n);
        case QftPlan::Kind::split: return split_qft(plan.n);
        case QftPlan::Kind::logdepth: return logdepth_qft(plan);
    }
    throw ValueError("unknown plan kind");
}

/// Phase at position j (1-based, ideally x / 2^j) after prep with the given band.
inline double prepared_phase(std::uint64_t x, unsigned j, unsigned band) {
    double theta = 0;
    unsigned lo = j > band ? j - band : 0;
    for (unsigned i = lo; i < j; i++) {
        if ((x >> i) & 1) {
            theta += std::ldexp(1.0, static_cast<int>(i) - static_cast<int>(j));
        }
    }
    return theta;
}

/// One run of the logdepth construction with the erase stage read as a measurement.
///
/// The prepared register is a superposition sum_y c_y psi_y, and the copy stage turns it
/// into sum_y c_y psi_y^{(x)k}. The runner samples the label y from |c_y|^2 (bit by bit,
/// since position j only depends on y mod 2^j), then votes on k exact copies of psi_y.
/// Interference between different y is dropped; on small instances this matches the
/// coherent circuit's clearing probability.
struct ChannelSample {
    std::uint64_t y = 0;      // sampled Fourier label of the copies
    std::uint64_t x_hat = 0;  // vote estimate XORed into the x register
    bool cleared = false;
    double psi_fidelity = 0;  // |<psi_x | prepared P register>|^2
};

inline ChannelSample run_logdepth_channel(const QftPlan& plan, std::uint64_t x, std::uint64_t seed) {
    check_logdepth_plan(plan);
    unsigned n = plan.n;
    if (n < 64 && (x >> n)) {
        throw ValueError("run_logdepth_channel: x out of range");
    }
    unsigned band = logdepth_band(plan);
    std::mt19937_64 rng(derive_seed(seed, 0x9e3779b9));
    ChannelSample s;
    s.psi_fidelity = 1;
    std::vector<double> theta(n);
    for (unsigned j = 1; j <= n; j++) {
        double prepared = prepared_phase(x, j, band);
        double c = std::cos(M_PI * (phase_fraction(x, j) - prepared));
        s.psi_fidelity *= c * c;
        double zero = std::cos(M_PI * (phase_fraction(s.y, j) - prepared));
        if (uniform01(rng) >= zero * zero) {
            s.y |= std::uint64_t{1} << (j - 1);
        }
        theta[j - 1] = phase_fraction(s.y, j);
    }
    auto vote = sample_and_mode_phases(theta, plan.copies, seed);
    s.x_hat = reconstruct_x(vote.l);
    s.cleared = s.x_hat == x;
    return s;
}

struct ChannelStats {
    std::size_t trials = 0;
    std::size_t cleared = 0;
    double mean_fidelity = 0;  // a run that leaves x uncleared counts as fidelity 0
    double cleared_rate() const { return trials ? static_cast<double>(cleared) / trials : 0.0; }
};

/// `trials` runs with x uniform, or fixed when fixed_x >= 0.
inline ChannelStats run_logdepth_trials(const QftPlan& plan, std::size_t trials, std::uint64_t seed,
                                        std::int64_t fixed_x = -1) {
    ChannelStats st;
    std::mt19937_64 pick(derive_seed(seed, 0));
    std::uint64_t mask = plan.n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << plan.n) - 1;
    for (std::size_t t = 0; t < trials; t++) {
        std::uint64_t x = fixed_x >= 0 ? static_cast<std::uint64_t>(fixed_x) : pick() & mask;
        auto s = run_logdepth_channel(plan, x, derive_seed(seed, t + 1));
        st.trials++;
        if (s.cleared) {
            st.cleared++;
            st.mean_fidelity += s.psi_fidelity;
        }
    }
    if (st.trials) {
        st.mean_fidelity /= static_cast<double>(st.trials);
    }
    return st;
}

/// Depth and size of logdepth_qft over a grid, with the smallest c, c' for which
/// depth <= c (log2 n + log2 k) and size <= c' n k hold at every point.
struct LogdepthCertificate {
    struct Row {
        unsigned n, k;
        std::size_t depth, size;
    };
    std::vector<Row> rows;
    double c_depth = 0;
    double c_size = 0;
    double worst_doubling_ratio = 0;  // max over the grid of depth(2n, k) / depth(n, k)
};

inline LogdepthCertificate logdepth_certificate(const std::vector<unsigned>& ns, const std::vector<unsigned>& ks) {
    LogdepthCertificate cert;
    for (unsigned k : ks) {
        std::size_t prev_depth = 0;
        unsigned prev_n = 0;
        for (unsigned n : ns) {
            Circuit c = logdepth_qft(n, k);
            LogdepthCertificate::Row row{n, k, c.depth(), c.size()};
            cert.rows.push_back(row);
            cert.c_depth = std::max(cert.c_depth, row.depth / (std::log2(n) + std::log2(k)));
            cert.c_size = std::max(cert.c_size, static_cast<double>(row.size) / (n * k));
            if (prev_n && n == 2 * prev_n) {
                cert.worst_doubling_ratio =
                    std::max(cert.worst_doubling_ratio, static_cast<double>(row.depth) / prev_depth);
            }
            prev_depth = row.depth;
            prev_n = n;
        }
    }
    return cert;
}

/// Product state with wire t in mu_{phases[t]}.
inline StateVector mu_product_state(const std::vector<double>& phases) {
    auto q = static_cast<std::uint32_t>(phases.size());
    if (q > 24) {
        throw CapacityError("mu_product_state limited to 24 qubits");
    }
    std::vector<Complex> amps{Complex(1.0, 0.0)};
    amps.reserve(std::size_t{1} << q);
    double mag = std::sqrt(0.5);
    for (std::uint32_t t = 0; t < q; t++) {
        Complex ph = std::polar(1.0, 2.0 * M_PI * phases[t]);
        std::size_t half = amps.size();
        for (std::size_t i = 0; i < half; i++) {
            amps[i] *= mag;
        }
        for (std::size_t i = 0; i < half; i++) {
            amps.push_back(amps[i] * ph);
        }
    }
    return StateVector::from(std::move(amps));
}

/// Phases of psi_x in natural order: wire t holds x / 2^{n-t} mod 1.
inline std::vector<double> fourier_phases(std::uint64_t x, unsigned n) {
    std::vector<double> ph(n);
    for (unsigned t = 0; t < n; t++) {
        ph[t] = phase_fraction(x, n - t);
    }
    return ph;
}

/// DFT column x of size 2^n: e^{2 pi i x y / 2^n} / 2^{n/2}.
inline std::vector<Complex> dft_column(std::uint64_t x, unsigned n) {
    std::size_t m = std::size_t{1} << n;
    std::vector<Complex> col(m);
    double s = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t y = 0; y < m; y++) {
        std::uint64_t e = (x * y) & (m - 1);
        col[y] = std::polar(s, 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(m));
    }
    return col;
}

/// prod_{t > i} cos(pi / 2^t) and its lower bound 1 - pi^2 / (6 * 4^i).
struct CosTail {
    double tail;
    double bound;
};

inline CosTail cos_tail(unsigned i) {
    double p = 1;
    for (unsigned t = i + 1;; t++) {
        double f = std::cos(M_PI * std::ldexp(1.0, -static_cast<int>(t)));
        if (f == 1.0) {
            break;
        }
        p *= f;
    }
    return {p, 1.0 - M_PI * M_PI / (6.0 * std::pow(4.0, static_cast<double>(i)))};
}

/// prod_{t=2}^{last} cos(pi / 2^t).
inline double cos_product(unsigned last) {
    double p = 1;
    for (unsigned t = 2; t <= last; t++) {
        p *= std::cos(M_PI * std::ldexp(1.0, -static_cast<int>(t)));
    }
    return p;
}

/// Lower-bound witness at z = 2^n - 1. psi'_z is psi_z with the factor of phase 0.1^{r+1}
/// replaced by 0.01^r; its overlap with psi_{z + 2^r} is a product of cosines.
struct OverlapWitness {
    double inner_product = 0;  // |<psi'_z | psi_{z+2^r}>| from the closed form
    double trace_distance = 0;
    double direct = -1;  // the same overlap from explicit state vectors when n <= 20
};

inline std::vector<double> witness_phases(unsigned n, unsigned r) {
    std::uint64_t z = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    auto ph = fourier_phases(z, n);
    // The factor with phase (z mod 2^s) / 2^s sits on wire n - s.
    ph[n - (r + 1)] = std::ldexp(static_cast<double>((std::uint64_t{1} << r) - 1), -static_cast<int>(r + 1));
    return ph;
}

inline OverlapWitness overlap_witness(unsigned n, unsigned r, bool direct = true) {
    if (n > 64 || r < 1 || r >= n) {
        throw ValueError("overlap_witness: need 1 <= r < n <= 64");
    }
    OverlapWitness w;
    w.inner_product = cos_product(n - r);
    w.trace_distance = std::sqrt(std::max(0.0, 1.0 - w.inner_product * w.inner_product));
    if (direct && n <= 20) {
        std::uint64_t mask = (std::uint64_t{1} << n) - 1;
        std::uint64_t shifted = (mask + (std::uint64_t{1} << r)) & mask;
        auto a = mu_product_state(witness_phases(n, r));
        auto b = mu_product_state(fourier_phases(shifted, n));
        w.direct = std::abs(a.inner(b));
    }
    return w;
}

}  // namespace qftkit
